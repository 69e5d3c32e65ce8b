#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "seq2vec/errors.hpp"
#include "seq2vec/rng.hpp"
#include "seq2vec/seqio.hpp"
#include "seq2vec/tokenize.hpp"

namespace seq2vec {

enum class TrainMode { skipgram, cbow };

struct TrainConfig {
  int dim = 128;
  int window = 5;          // context tokens considered to each side
  std::uint64_t min_count = 1;
  int epochs = 5;
  int workers = 4;
  TrainMode mode = TrainMode::skipgram;
  int negative = 5;        // noise tokens per (center, context) pair
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  double subsample_t = 1e-3;  // 0 disables frequent-token subsampling
  double noise_power = 0.75;
  std::uint64_t seed = 1;
  bool shrink_window = true;  // sample effective window from 1..window
};

// Trained token embeddings. input_vectors row i is the embedding of
// vocab.tokens[i]; output_vectors hold the context-side parameters.
struct EmbeddingModel {
  KmerVocabulary vocab;
  int dim = 0;
  std::vector<float> input_vectors;   // V x dim, row-major
  std::vector<float> output_vectors;  // V x dim, row-major
  TrainConfig config;

  std::span<float> input_row(std::size_t i) {
    return {input_vectors.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  std::span<const float> input_row(std::size_t i) const {
    return {input_vectors.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  std::span<float> output_row(std::size_t i) {
    return {output_vectors.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
  std::span<const float> output_row(std::size_t i) const {
    return {output_vectors.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

struct SequenceEmbedding {
  std::string id;
  std::vector<float> vector;  // mean of in-vocabulary k-mer embeddings
  std::uint64_t n_kmers_used = 0;
  std::uint64_t n_kmers_unknown = 0;
};

struct TrainStats {
  std::vector<double> epoch_mean_loss;
  std::vector<double> epoch_end_lr;
  std::uint64_t total_pairs = 0;
  std::uint64_t total_tokens = 0;  // corpus tokens consumed over all epochs
};

// p(i) proportional to counts[i]^noise_power, normalized to sum 1.
std::vector<double> build_noise_distribution(const KmerVocabulary& vocab,
                                             double noise_power);

// Keep probability for a token with corpus-relative frequency f:
//   p_keep(f) = (sqrt(f/t) + 1) * t/f, clamped to [0,1];  t = 0 disables.
double subsample_keep_probability(double relative_frequency, double threshold);

// Walker alias table for O(1) draws from a discrete distribution.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& probabilities);
  std::uint32_t sample(Rng& rng) const {
    const std::uint32_t i = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }
  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

template <typename T>
struct SgnsGradients {
  std::vector<T> center;
  std::vector<T> context;
  std::vector<std::vector<T>> negatives;

  void resize(std::size_t dim, std::size_t n_negatives) {
    center.assign(dim, T(0));
    context.assign(dim, T(0));
    negatives.resize(n_negatives);
    for (auto& g : negatives) g.assign(dim, T(0));
  }
};

namespace detail {

inline double logistic(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigma(x)) without underflow for large |x|.
inline double log_logistic(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

template <typename T>
double dot(std::span<const T> a, std::span<const T> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

}  // namespace detail

// Skip-gram negative-sampling objective for one (center, context) pair:
//   L = -log s(u_ctx . v_cen) - sum_neg log s(-u_neg . v_cen)
// with s the logistic function. Returns L and fills exact analytic partial
// derivatives with respect to every input vector. Internal arithmetic is
// double regardless of T.
template <typename T>
T sgns_loss_and_grads(std::span<const T> center, std::span<const T> context,
                      std::span<const std::span<const T>> negatives,
                      SgnsGradients<T>& grads) {
  const std::size_t dim = center.size();
  if (context.size() != dim)
    throw std::invalid_argument("context dimension mismatch");
  for (const auto& neg : negatives)
    if (neg.size() != dim)
      throw std::invalid_argument("negative vector dimension mismatch");

  if (grads.center.size() != dim || grads.negatives.size() != negatives.size())
    grads.resize(dim, negatives.size());

  const double d_pos = detail::dot(context, center);
  if (!std::isfinite(d_pos))
    throw NumericError("non-finite dot product in sgns_loss_and_grads");
  double loss = -detail::log_logistic(d_pos);
  const double coeff_pos = detail::logistic(d_pos) - 1.0;  // dL/d(d_pos)
  for (std::size_t j = 0; j < dim; ++j) {
    grads.context[j] = static_cast<T>(coeff_pos * static_cast<double>(center[j]));
    grads.center[j] = static_cast<T>(coeff_pos * static_cast<double>(context[j]));
  }

  for (std::size_t n = 0; n < negatives.size(); ++n) {
    const double d_neg = detail::dot(negatives[n], center);
    if (!std::isfinite(d_neg))
      throw NumericError("non-finite dot product in sgns_loss_and_grads");
    loss += -detail::log_logistic(-d_neg);
    const double coeff = detail::logistic(d_neg);
    for (std::size_t j = 0; j < dim; ++j) {
      grads.negatives[n][j] =
          static_cast<T>(coeff * static_cast<double>(center[j]));
      grads.center[j] += static_cast<T>(coeff * static_cast<double>(negatives[n][j]));
    }
  }

  if (!std::isfinite(loss))
    throw NumericError("non-finite loss in sgns_loss_and_grads");
  return static_cast<T>(loss);
}

// Trains token embeddings over the corpus. With workers == 1 and a fixed
// seed the result is bit-reproducible; more workers update the shared
// matrices lock-free and are only reproducible statistically.
EmbeddingModel train(const std::vector<std::vector<std::string>>& corpus,
                     const TrainConfig& config, TrainStats* stats = nullptr);

// Mean of the input vectors of the record's in-vocabulary k-mers
// (multiplicity counted). Out-of-vocabulary k-mers are skipped and counted.
SequenceEmbedding embed_sequence(const EmbeddingModel& model,
                                 const SequenceRecord& record);

void save_model_binary(const EmbeddingModel& model, const std::string& path);
void save_model_text(const EmbeddingModel& model, const std::string& path);

// Detects the format by magic bytes; anything without the binary magic is
// parsed as the interoperable text format.
EmbeddingModel load_model(const std::string& path);

// "id<TAB>v1<TAB>...<TAB>vdim" per sequence.
void write_embeddings_tsv(const std::vector<SequenceEmbedding>& embeddings,
                          std::ostream& out);

struct EmbeddingTable {
  std::vector<std::string> ids;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> matrix;  // n x dim, row-major
};

EmbeddingTable read_embeddings_tsv(std::istream& in);

}  // namespace seq2vec
