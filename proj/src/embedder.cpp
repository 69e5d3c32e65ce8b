#include "seq2vec/embedder.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace seq2vec {

std::vector<double> build_noise_distribution(const KmerVocabulary& vocab,
                                             double noise_power) {
  if (vocab.size() == 0)
    throw std::invalid_argument("noise distribution needs a nonempty vocabulary");
  std::vector<double> p(vocab.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (vocab.counts[i] < 1)
      throw std::invalid_argument("vocabulary counts must be >= 1");
    p[i] = std::pow(static_cast<double>(vocab.counts[i]), noise_power);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

double subsample_keep_probability(double relative_frequency, double threshold) {
  if (threshold <= 0.0) return 1.0;
  if (relative_frequency <= 0.0) return 1.0;
  const double ratio = relative_frequency / threshold;
  const double p = (std::sqrt(ratio) + 1.0) / ratio;
  return std::clamp(p, 0.0, 1.0);
}

AliasTable::AliasTable(const std::vector<double>& probabilities) {
  const std::size_t n = probabilities.size();
  if (n == 0) throw std::invalid_argument("alias table needs >= 1 entry");
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("alias table probabilities must be finite and >= 0");
    sum += p;
  }
  if (sum <= 0.0) throw std::invalid_argument("alias table probabilities sum to zero");

  prob_.assign(n, 1.0);
  alias_.resize(n);
  for (std::size_t i = 0; i < n; ++i) alias_[i] = static_cast<std::uint32_t>(i);

  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    scaled[i] = probabilities[i] * static_cast<double>(n) / sum;

  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));

  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  // Leftovers are 1 up to roundoff.
}

namespace {

void apply_update(std::span<float> row, const std::vector<float>& grad,
                  float lr) {
  for (std::size_t j = 0; j < row.size(); ++j) row[j] -= lr * grad[j];
}

struct WorkerResult {
  double loss_sum = 0.0;
  std::uint64_t pairs = 0;
  std::exception_ptr error;
};

}  // namespace

EmbeddingModel train(const std::vector<std::vector<std::string>>& corpus,
                     const TrainConfig& config, TrainStats* stats) {
  if (config.dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (config.window < 1) throw std::invalid_argument("window must be >= 1");
  if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (config.negative < 1) throw std::invalid_argument("negative must be >= 1");
  if (!(config.initial_lr > 0.0) || !(config.min_lr > 0.0) ||
      !(config.min_lr < config.initial_lr))
    throw std::invalid_argument("need 0 < min_lr < initial_lr");
  if (config.subsample_t < 0.0)
    throw std::invalid_argument("subsample_t must be >= 0");
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");

  EmbeddingModel model;
  model.vocab = build_vocab(corpus, config.min_count);
  model.dim = config.dim;
  model.config = config;

  const std::size_t V = model.vocab.size();
  const std::size_t dim = static_cast<std::size_t>(config.dim);

  // Sentences as dense index lists; tokens filtered out by min_count vanish.
  std::vector<std::vector<std::uint32_t>> sentences;
  sentences.reserve(corpus.size());
  std::uint64_t corpus_tokens = 0;
  for (const auto& tokens : corpus) {
    std::vector<std::uint32_t> sent;
    sent.reserve(tokens.size());
    for (const auto& token : tokens)
      if (auto idx = model.vocab.lookup(token)) sent.push_back(*idx);
    if (!sent.empty()) {
      corpus_tokens += sent.size();
      sentences.push_back(std::move(sent));
    }
  }
  if (corpus_tokens == 0) throw DataError("no trainable tokens in corpus");

  Rng init_rng(derive_seed(config.seed, 0));
  model.input_vectors.resize(V * dim);
  for (auto& x : model.input_vectors)
    x = static_cast<float>((init_rng.uniform() - 0.5) /
                           static_cast<double>(config.dim));
  model.output_vectors.assign(V * dim, 0.0f);

  const std::vector<double> noise =
      build_noise_distribution(model.vocab, config.noise_power);
  const AliasTable alias(noise);

  std::vector<double> keep_prob;
  const bool subsampling = config.subsample_t > 0.0;
  if (subsampling) {
    keep_prob.resize(V);
    for (std::size_t i = 0; i < V; ++i)
      keep_prob[i] = subsample_keep_probability(
          static_cast<double>(model.vocab.counts[i]) /
              static_cast<double>(model.vocab.total_count),
          config.subsample_t);
  }

  // Contiguous shards with roughly equal token mass.
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.workers),
                            sentences.size());
  std::vector<std::size_t> shard_bounds(n_workers + 1, 0);
  {
    std::uint64_t acc = 0;
    std::size_t w = 1;
    for (std::size_t si = 0; si < sentences.size() && w < n_workers; ++si) {
      acc += sentences[si].size();
      if (acc >= corpus_tokens * w / n_workers) shard_bounds[w++] = si + 1;
    }
    for (; w <= n_workers; ++w) shard_bounds[w] = sentences.size();
  }

  std::vector<Rng> worker_rngs;
  worker_rngs.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w)
    worker_rngs.emplace_back(derive_seed(config.seed, 1 + w));

  const std::uint64_t total_schedule =
      corpus_tokens * static_cast<std::uint64_t>(config.epochs);
  std::atomic<std::uint64_t> processed{0};
  auto lr_at = [&](std::uint64_t done) {
    const double frac = std::min(
        1.0, static_cast<double>(done) / static_cast<double>(total_schedule));
    return config.initial_lr + (config.min_lr - config.initial_lr) * frac;
  };

  const bool cbow = config.mode == TrainMode::cbow;

  auto run_worker = [&](std::size_t w, WorkerResult& result) {
    try {
      Rng& rng = worker_rngs[w];
      SgnsGradients<float> grads;
      grads.resize(dim, static_cast<std::size_t>(config.negative));
      std::vector<std::uint32_t> negs;
      negs.reserve(static_cast<std::size_t>(config.negative));
      std::vector<std::span<const float>> neg_views;
      neg_views.reserve(static_cast<std::size_t>(config.negative));
      std::vector<std::uint32_t> kept;
      std::vector<float> context_mean(cbow ? dim : 0);
      std::vector<std::uint32_t> members;

      for (std::size_t si = shard_bounds[w]; si < shard_bounds[w + 1]; ++si) {
        const auto& sent = sentences[si];
        const std::uint64_t before = processed.fetch_add(
            sent.size(), std::memory_order_relaxed);
        const float lr = static_cast<float>(lr_at(before));

        kept.clear();
        for (std::uint32_t idx : sent)
          if (!subsampling || rng.uniform() < keep_prob[idx]) kept.push_back(idx);

        for (std::size_t pos = 0; pos < kept.size(); ++pos) {
          const int b = config.shrink_window
                            ? 1 + static_cast<int>(rng.below(
                                      static_cast<std::uint64_t>(config.window)))
                            : config.window;
          const std::size_t lo =
              pos >= static_cast<std::size_t>(b) ? pos - static_cast<std::size_t>(b) : 0;
          const std::size_t hi =
              std::min(kept.size() - 1, pos + static_cast<std::size_t>(b));

          if (!cbow) {
            const std::uint32_t center = kept[pos];
            for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
              if (cpos == pos) continue;
              const std::uint32_t context = kept[cpos];
              negs.clear();
              neg_views.clear();
              for (int t = 0; t < config.negative; ++t) {
                const std::uint32_t noise_idx = alias.sample(rng);
                if (noise_idx == context) continue;  // exclude the true context
                negs.push_back(noise_idx);
              }
              for (std::uint32_t nidx : negs)
                neg_views.push_back(model.output_row(nidx));
              const float loss = sgns_loss_and_grads<float>(
                  model.input_row(center), model.output_row(context),
                  std::span<const std::span<const float>>(neg_views), grads);
              apply_update(model.input_row(center), grads.center, lr);
              apply_update(model.output_row(context), grads.context, lr);
              for (std::size_t t = 0; t < negs.size(); ++t)
                apply_update(model.output_row(negs[t]), grads.negatives[t], lr);
              result.loss_sum += loss;
              ++result.pairs;
            }
          } else {
            // CBOW: predict the position's token from the mean of its
            // context input vectors.
            members.clear();
            for (std::size_t cpos = lo; cpos <= hi; ++cpos)
              if (cpos != pos) members.push_back(kept[cpos]);
            if (members.empty()) continue;
            std::fill(context_mean.begin(), context_mean.end(), 0.0f);
            for (std::uint32_t m : members) {
              auto row = model.input_row(m);
              for (std::size_t j = 0; j < dim; ++j) context_mean[j] += row[j];
            }
            const float inv_m = 1.0f / static_cast<float>(members.size());
            for (std::size_t j = 0; j < dim; ++j) context_mean[j] *= inv_m;

            const std::uint32_t target = kept[pos];
            negs.clear();
            neg_views.clear();
            for (int t = 0; t < config.negative; ++t) {
              const std::uint32_t noise_idx = alias.sample(rng);
              if (noise_idx == target) continue;
              negs.push_back(noise_idx);
            }
            for (std::uint32_t nidx : negs)
              neg_views.push_back(model.output_row(nidx));
            const float loss = sgns_loss_and_grads<float>(
                std::span<const float>(context_mean), model.output_row(target),
                std::span<const std::span<const float>>(neg_views), grads);
            for (std::uint32_t m : members) {
              auto row = model.input_row(m);
              for (std::size_t j = 0; j < dim; ++j)
                row[j] -= lr * grads.center[j] * inv_m;
            }
            apply_update(model.output_row(target), grads.context, lr);
            for (std::size_t t = 0; t < negs.size(); ++t)
              apply_update(model.output_row(negs[t]), grads.negatives[t], lr);
            result.loss_sum += loss;
            ++result.pairs;
          }
        }
      }
    } catch (...) {
      result.error = std::current_exception();
    }
  };

  if (stats) {
    stats->epoch_mean_loss.clear();
    stats->epoch_end_lr.clear();
    stats->total_pairs = 0;
  }

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<WorkerResult> results(n_workers);
    if (n_workers == 1) {
      run_worker(0, results[0]);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(n_workers);
      for (std::size_t w = 0; w < n_workers; ++w)
        threads.emplace_back(run_worker, w, std::ref(results[w]));
      for (auto& t : threads) t.join();
    }
    double loss_sum = 0.0;
    std::uint64_t pairs = 0;
    for (auto& r : results) {
      if (r.error) std::rethrow_exception(r.error);
      loss_sum += r.loss_sum;
      pairs += r.pairs;
    }
    if (stats) {
      stats->epoch_mean_loss.push_back(
          pairs ? loss_sum / static_cast<double>(pairs) : 0.0);
      stats->epoch_end_lr.push_back(lr_at(processed.load()));
      stats->total_pairs += pairs;
    }
  }
  if (stats) stats->total_tokens = processed.load();
  return model;
}

SequenceEmbedding embed_sequence(const EmbeddingModel& model,
                                 const SequenceRecord& record) {
  const auto tokens = kmerize(record.residues, model.vocab.k, record.id);
  const std::size_t dim = static_cast<std::size_t>(model.dim);
  std::vector<double> acc(dim, 0.0);
  SequenceEmbedding out;
  out.id = record.id;
  for (const auto& token : tokens) {
    if (auto idx = model.vocab.lookup(token)) {
      auto row = model.input_row(*idx);
      for (std::size_t j = 0; j < dim; ++j) acc[j] += static_cast<double>(row[j]);
      ++out.n_kmers_used;
    } else {
      ++out.n_kmers_unknown;
    }
  }
  if (out.n_kmers_used == 0)
    throw DataError("no k-mer coverage for sequence '" + record.id + "'");
  out.vector.resize(dim);
  for (std::size_t j = 0; j < dim; ++j)
    out.vector[j] =
        static_cast<float>(acc[j] / static_cast<double>(out.n_kmers_used));
  return out;
}

// ---------------------------------------------------------------------------
// Model persistence.
//
// Binary layout (version 1, all integers little-endian):
//   "SQ2V" | u8 version | u32 k | u32 V | u32 dim
//   | V*dim f32 input | V*dim f32 output
//   | V x (k token bytes + u64 count)
//   | u32 config_size | config block
// Text layout: "V dim\n" then one "token v1 ... vdim\n" line per token in
// frequency-rank order (input vectors only).
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'S', 'Q', '2', 'V'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f32(std::ostream& out, float v) {
  put_u32(out, std::bit_cast<std::uint32_t>(v));
}

void put_f64(std::ostream& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::uint8_t get_u8(std::istream& in) {
  int c = in.get();
  if (c == EOF) throw IoError("truncated model file");
  return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& in) {
  char b[4];
  if (!in.read(b, 4)) throw IoError("truncated model file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  char b[8];
  if (!in.read(b, 8)) throw IoError("truncated model file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

float get_f32(std::istream& in) {
  return std::bit_cast<float>(get_u32(in));
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_u64(in));
}

constexpr std::uint32_t kConfigBlockSize = 70;

void put_config(std::ostream& out, const TrainConfig& c) {
  put_u32(out, kConfigBlockSize);
  put_u32(out, static_cast<std::uint32_t>(c.dim));
  put_u32(out, static_cast<std::uint32_t>(c.window));
  put_u64(out, c.min_count);
  put_u32(out, static_cast<std::uint32_t>(c.epochs));
  put_u32(out, static_cast<std::uint32_t>(c.workers));
  put_u8(out, c.mode == TrainMode::cbow ? 1 : 0);
  put_u32(out, static_cast<std::uint32_t>(c.negative));
  put_f64(out, c.initial_lr);
  put_f64(out, c.min_lr);
  put_f64(out, c.subsample_t);
  put_f64(out, c.noise_power);
  put_u64(out, c.seed);
  put_u8(out, c.shrink_window ? 1 : 0);
}

TrainConfig get_config(std::istream& in) {
  const std::uint32_t size = get_u32(in);
  if (size < kConfigBlockSize) throw IoError("model config block too small");
  TrainConfig c;
  c.dim = static_cast<int>(get_u32(in));
  c.window = static_cast<int>(get_u32(in));
  c.min_count = get_u64(in);
  c.epochs = static_cast<int>(get_u32(in));
  c.workers = static_cast<int>(get_u32(in));
  c.mode = get_u8(in) == 1 ? TrainMode::cbow : TrainMode::skipgram;
  c.negative = static_cast<int>(get_u32(in));
  c.initial_lr = get_f64(in);
  c.min_lr = get_f64(in);
  c.subsample_t = get_f64(in);
  c.noise_power = get_f64(in);
  c.seed = get_u64(in);
  c.shrink_window = get_u8(in) != 0;
  for (std::uint32_t i = kConfigBlockSize; i < size; ++i) get_u8(in);
  return c;
}

void format_float(std::string& out, float v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(v));
  out += buf;
}

}  // namespace

void save_model_binary(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(kMagic, 4);
  put_u8(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(model.vocab.k));
  put_u32(out, static_cast<std::uint32_t>(model.vocab.size()));
  put_u32(out, static_cast<std::uint32_t>(model.dim));
  for (float v : model.input_vectors) put_f32(out, v);
  for (float v : model.output_vectors) put_f32(out, v);
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    out.write(model.vocab.tokens[i].data(),
              static_cast<std::streamsize>(model.vocab.tokens[i].size()));
    put_u64(out, model.vocab.counts[i]);
  }
  put_config(out, model.config);
  if (!out) throw IoError("write to '" + path + "' failed");
}

void save_model_text(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  std::string line;
  out << model.vocab.size() << ' ' << model.dim << '\n';
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    line = model.vocab.tokens[i];
    auto row = model.input_row(i);
    for (float v : row) {
      line += ' ';
      format_float(line, v);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace {

EmbeddingModel load_model_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("bad magic in model file");
  const std::uint8_t version = get_u8(in);
  if (version != kVersion)
    throw IoError("unsupported model version " + std::to_string(version));
  EmbeddingModel model;
  const std::uint32_t k = get_u32(in);
  const std::uint32_t V = get_u32(in);
  const std::uint32_t dim = get_u32(in);
  if (k == 0 || V == 0 || dim == 0)
    throw IoError("corrupt model header (zero k, V, or dim)");
  model.vocab.k = static_cast<int>(k);
  model.dim = static_cast<int>(dim);
  const std::size_t cells = static_cast<std::size_t>(V) * dim;
  model.input_vectors.resize(cells);
  for (auto& v : model.input_vectors) v = get_f32(in);
  model.output_vectors.resize(cells);
  for (auto& v : model.output_vectors) v = get_f32(in);
  model.vocab.tokens.reserve(V);
  model.vocab.counts.reserve(V);
  std::string token(k, '\0');
  for (std::uint32_t i = 0; i < V; ++i) {
    if (!in.read(token.data(), k)) throw IoError("truncated model file");
    if (!model.vocab.index_of.emplace(token, i).second)
      throw IoError("duplicate token '" + token + "' in model file");
    model.vocab.tokens.push_back(token);
    const std::uint64_t count = get_u64(in);
    model.vocab.counts.push_back(count);
    model.vocab.total_count += count;
  }
  model.config = get_config(in);
  return model;
}

EmbeddingModel load_model_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty model file");
  std::istringstream hs(header);
  std::uint64_t V = 0;
  std::int64_t dim = 0;
  if (!(hs >> V >> dim) || V == 0 || dim <= 0)
    throw IoError("bad text model header '" + header + "'");
  EmbeddingModel model;
  model.dim = static_cast<int>(dim);
  model.input_vectors.reserve(V * static_cast<std::size_t>(dim));
  std::string line;
  for (std::uint64_t i = 0; i < V; ++i) {
    if (!std::getline(in, line)) throw IoError("truncated model file");
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) throw IoError("truncated model file");
    if (i == 0)
      model.vocab.k = static_cast<int>(token.size());
    else if (token.size() != static_cast<std::size_t>(model.vocab.k))
      throw IoError("token length != k for '" + token + "'");
    if (!model.vocab.index_of.emplace(token, static_cast<std::uint32_t>(i)).second)
      throw IoError("duplicate token '" + token + "' in model file");
    model.vocab.tokens.push_back(token);
    for (std::int64_t j = 0; j < dim; ++j) {
      double v;
      if (!(ls >> v)) throw IoError("truncated vector for token '" + token + "'");
      model.input_vectors.push_back(static_cast<float>(v));
    }
  }
  // The text format carries no counts or context vectors.
  model.vocab.counts.assign(V, 1);
  model.vocab.total_count = V;
  model.output_vectors.assign(V * static_cast<std::size_t>(dim), 0.0f);
  model.config.dim = model.dim;
  return model;
}

}  // namespace

EmbeddingModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  const bool binary =
      in.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0;
  in.clear();
  in.seekg(0);
  if (binary) return load_model_binary(in);
  return load_model_text(in);
}

void write_embeddings_tsv(const std::vector<SequenceEmbedding>& embeddings,
                          std::ostream& out) {
  std::string line;
  for (const auto& e : embeddings) {
    line = e.id;
    for (float v : e.vector) {
      line += '\t';
      format_float(line, v);
    }
    line += '\n';
    out << line;
  }
}

EmbeddingTable read_embeddings_tsv(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  std::unordered_map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("embeddings row without values", line_no);
    std::string id = line.substr(0, tab);
    if (id.empty()) throw ParseError("empty id in embeddings row", line_no);
    if (!seen.emplace(id, line_no).second)
      throw ParseError("duplicate id '" + id + "' in embeddings", line_no);
    std::vector<double> values;
    std::size_t start = tab + 1;
    while (start <= line.size()) {
      std::size_t end = line.find('\t', start);
      if (end == std::string::npos) end = line.size();
      try {
        values.push_back(std::stod(line.substr(start, end - start)));
      } catch (const std::exception&) {
        throw ParseError("bad number in embeddings row", line_no);
      }
      start = end + 1;
    }
    if (table.n == 0) {
      table.dim = values.size();
    } else if (values.size() != table.dim) {
      throw ParseError("inconsistent embedding dimension", line_no);
    }
    table.ids.push_back(std::move(id));
    table.matrix.insert(table.matrix.end(), values.begin(), values.end());
    ++table.n;
  }
  if (table.n == 0) throw DataError("embeddings file has no rows");
  return table;
}

}  // namespace seq2vec
