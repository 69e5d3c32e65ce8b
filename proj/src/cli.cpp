#include "seq2vec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "seq2vec/analysis.hpp"
#include "seq2vec/classify.hpp"
#include "seq2vec/dedup.hpp"
#include "seq2vec/embedder.hpp"
#include "seq2vec/errors.hpp"
#include "seq2vec/seqio.hpp"
#include "seq2vec/serve.hpp"
#include "seq2vec/tokenize.hpp"

namespace seq2vec::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_config_file(const std::string& path, const std::string& body,
                       bool quiet) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  if (!quiet) std::cerr << "effective config saved: " << path << "\n";
}

json read_config_json(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("bad config file '" + path + "': " + e.what());
  }
  const std::string found = j.value("command", "");
  if (found != command)
    throw DataError("config file '" + path + "' is for command '" + found +
                    "', not '" + command + "'");
  return j;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

// default config path: next to the command's primary output
std::string default_config_path(const std::string& primary_output) {
  if (primary_output.empty() || primary_output == "-") return {};
  return primary_output + ".config.json";
}

TrainConfig to_train_config(const TrainCmd& cmd) {
  TrainConfig config;
  config.dim = cmd.dim;
  config.window = cmd.window;
  config.min_count = cmd.min_count;
  config.epochs = cmd.epochs;
  config.workers = cmd.workers;
  if (cmd.mode == "skipgram") {
    config.mode = TrainMode::skipgram;
  } else if (cmd.mode == "cbow") {
    config.mode = TrainMode::cbow;
  } else {
    throw std::invalid_argument("mode must be 'skipgram' or 'cbow'");
  }
  config.negative = cmd.negative;
  config.initial_lr = cmd.initial_lr;
  config.min_lr = cmd.min_lr;
  config.subsample_t = cmd.subsample_t;
  config.noise_power = cmd.noise_power;
  config.seed = cmd.seed;
  config.shrink_window = !cmd.no_shrink_window;
  return config;
}

}  // namespace

// --- config serialization ---------------------------------------------------

std::string config_to_json(const PreprocessCmd& c) {
  json j{{"command", "preprocess"},
         {"fasta_in", c.fasta_in},
         {"fasta_out", c.fasta_out},
         {"cluster_map_out", c.cluster_map_out},
         {"identity", c.identity},
         {"prefilter_kmer", c.prefilter_kmer},
         {"prefilter_min_shared", c.prefilter_min_shared},
         {"no_prefilter", c.no_prefilter},
         {"keep_u", c.keep_u}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 PreprocessCmd& c) {
  json j = read_config_json(path, command);
  c.fasta_in = j.value("fasta_in", c.fasta_in);
  c.fasta_out = j.value("fasta_out", c.fasta_out);
  c.cluster_map_out = j.value("cluster_map_out", c.cluster_map_out);
  c.identity = j.value("identity", c.identity);
  c.prefilter_kmer = j.value("prefilter_kmer", c.prefilter_kmer);
  c.prefilter_min_shared = j.value("prefilter_min_shared", c.prefilter_min_shared);
  c.no_prefilter = j.value("no_prefilter", c.no_prefilter);
  c.keep_u = j.value("keep_u", c.keep_u);
}

std::string config_to_json(const TrainCmd& c) {
  json j{{"command", "train"},
         {"fasta_in", c.fasta_in},
         {"model_out", c.model_out},
         {"text_out", c.text_out},
         {"vocab_out", c.vocab_out},
         {"exclude_ids", c.exclude_ids},
         {"k", c.k},
         {"dim", c.dim},
         {"window", c.window},
         {"min_count", c.min_count},
         {"epochs", c.epochs},
         {"workers", c.workers},
         {"mode", c.mode},
         {"negative", c.negative},
         {"initial_lr", c.initial_lr},
         {"min_lr", c.min_lr},
         {"subsample_t", c.subsample_t},
         {"noise_power", c.noise_power},
         {"seed", c.seed},
         {"no_shrink_window", c.no_shrink_window},
         {"keep_u", c.keep_u}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 TrainCmd& c) {
  json j = read_config_json(path, command);
  c.fasta_in = j.value("fasta_in", c.fasta_in);
  c.model_out = j.value("model_out", c.model_out);
  c.text_out = j.value("text_out", c.text_out);
  c.vocab_out = j.value("vocab_out", c.vocab_out);
  c.exclude_ids = j.value("exclude_ids", c.exclude_ids);
  c.k = j.value("k", c.k);
  c.dim = j.value("dim", c.dim);
  c.window = j.value("window", c.window);
  c.min_count = j.value("min_count", c.min_count);
  c.epochs = j.value("epochs", c.epochs);
  c.workers = j.value("workers", c.workers);
  c.mode = j.value("mode", c.mode);
  c.negative = j.value("negative", c.negative);
  c.initial_lr = j.value("initial_lr", c.initial_lr);
  c.min_lr = j.value("min_lr", c.min_lr);
  c.subsample_t = j.value("subsample_t", c.subsample_t);
  c.noise_power = j.value("noise_power", c.noise_power);
  c.seed = j.value("seed", c.seed);
  c.no_shrink_window = j.value("no_shrink_window", c.no_shrink_window);
  c.keep_u = j.value("keep_u", c.keep_u);
}

std::string config_to_json(const EmbedCmd& c) {
  json j{{"command", "embed"},
         {"fasta_in", c.fasta_in},
         {"model_in", c.model_in},
         {"tsv_out", c.tsv_out},
         {"labels_out", c.labels_out},
         {"label_from_filename", c.label_from_filename},
         {"keep_u", c.keep_u}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 EmbedCmd& c) {
  json j = read_config_json(path, command);
  c.fasta_in = j.value("fasta_in", c.fasta_in);
  c.model_in = j.value("model_in", c.model_in);
  c.tsv_out = j.value("tsv_out", c.tsv_out);
  c.labels_out = j.value("labels_out", c.labels_out);
  c.label_from_filename = j.value("label_from_filename", c.label_from_filename);
  c.keep_u = j.value("keep_u", c.keep_u);
}

std::string config_to_json(const AnalyzeCmd& c) {
  json j{{"command", "analyze"},
         {"embeddings_tsv", c.embeddings_tsv},
         {"labels_tsv", c.labels_tsv},
         {"out_dir", c.out_dir},
         {"components", c.components}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 AnalyzeCmd& c) {
  json j = read_config_json(path, command);
  c.embeddings_tsv = j.value("embeddings_tsv", c.embeddings_tsv);
  c.labels_tsv = j.value("labels_tsv", c.labels_tsv);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.components = j.value("components", c.components);
}

std::string config_to_json(const ClassifyCmd& c) {
  json j{{"command", "classify"},
         {"embeddings_tsv", c.embeddings_tsv},
         {"labels_tsv", c.labels_tsv},
         {"out_dir", c.out_dir},
         {"test_fraction", c.test_fraction},
         {"lambda", c.lambda},
         {"epochs", c.epochs},
         {"seed", c.seed}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 ClassifyCmd& c) {
  json j = read_config_json(path, command);
  c.embeddings_tsv = j.value("embeddings_tsv", c.embeddings_tsv);
  c.labels_tsv = j.value("labels_tsv", c.labels_tsv);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.test_fraction = j.value("test_fraction", c.test_fraction);
  c.lambda = j.value("lambda", c.lambda);
  c.epochs = j.value("epochs", c.epochs);
  c.seed = j.value("seed", c.seed);
}

std::string config_to_json(const ServeCmd& c) {
  json j{{"command", "serve"},
         {"model_in", c.model_in},
         {"host", c.host},
         {"port", c.port}};
  return j.dump(2) + "\n";
}

void load_config(const std::string& path, const std::string& command,
                 ServeCmd& c) {
  json j = read_config_json(path, command);
  c.model_in = j.value("model_in", c.model_in);
  c.host = j.value("host", c.host);
  c.port = j.value("port", c.port);
}

// --- commands ----------------------------------------------------------------

int cmd_preprocess(const PreprocessCmd& cmd) {
  FastaOptions options{.normalize_u = !cmd.keep_u};
  auto [records, report] = parse_fasta_file(cmd.fasta_in, options);
  if (!cmd.quiet) {
    std::cerr << "parsed " << cmd.fasta_in << ": kept=" << report.n_records_kept
              << " dropped=" << report.n_records_dropped
              << " u_normalized=" << report.n_normalized_u << "\n";
    if (!report.dropped_ids.empty()) {
      std::cerr << "dropped:";
      for (std::size_t i = 0; i < report.dropped_ids.size() && i < 10; ++i)
        std::cerr << ' ' << report.dropped_ids[i];
      if (report.dropped_ids.size() > 10) std::cerr << " ...";
      std::cerr << "\n";
    }
  }

  DedupConfig config;
  config.identity_threshold = cmd.identity;
  config.prefilter_kmer = cmd.prefilter_kmer;
  config.prefilter_min_shared_fraction = cmd.prefilter_min_shared;
  config.prefilter_enabled = !cmd.no_prefilter;
  const auto clusters = greedy_cluster(records, config);
  const auto reps = representatives(clusters, records);

  write_fasta_file(reps, cmd.fasta_out);
  if (!cmd.cluster_map_out.empty()) {
    auto out = open_output(cmd.cluster_map_out);
    write_cluster_map(clusters, out);
  }
  if (!cmd.quiet)
    std::cerr << "clusters: " << clusters.size() << " from " << records.size()
              << " records; representatives -> " << cmd.fasta_out << "\n";

  const std::string config_path = cmd.save_config.empty()
                                      ? default_config_path(cmd.fasta_out)
                                      : cmd.save_config;
  write_config_file(config_path, config_to_json(cmd), cmd.quiet);
  return 0;
}

int cmd_train(const TrainCmd& cmd) {
  FastaOptions options{.normalize_u = !cmd.keep_u};
  auto [records, report] = parse_fasta_file(cmd.fasta_in, options);
  if (!cmd.quiet)
    std::cerr << "parsed " << cmd.fasta_in << ": kept=" << report.n_records_kept
              << " dropped=" << report.n_records_dropped << "\n";

  std::unordered_set<std::string> excluded;
  if (!cmd.exclude_ids.empty()) {
    std::ifstream in(cmd.exclude_ids);
    if (!in) throw IoError("cannot open exclude file '" + cmd.exclude_ids + "'");
    std::string id;
    while (std::getline(in, id)) {
      if (!id.empty() && id.back() == '\r') id.pop_back();
      if (!id.empty()) excluded.insert(id);
    }
  }

  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(records.size());
  std::uint64_t skipped_short = 0, skipped_excluded = 0;
  for (const auto& rec : records) {
    if (excluded.count(rec.id)) {
      ++skipped_excluded;
      continue;
    }
    try {
      corpus.push_back(kmerize(rec.residues, cmd.k, rec.id));
    } catch (const TooShortError&) {
      ++skipped_short;
    }
  }
  if (!cmd.quiet && (skipped_short || skipped_excluded))
    std::cerr << "warning: skipped " << skipped_short
              << " too-short and " << skipped_excluded
              << " excluded sequence(s)\n";
  if (corpus.empty()) throw DataError("no trainable sequences in corpus");

  TrainStats stats;
  const EmbeddingModel model = train(corpus, to_train_config(cmd), &stats);
  if (!cmd.quiet) {
    std::cerr << "vocabulary: V=" << model.vocab.size()
              << " total_tokens=" << model.vocab.total_count << "\n";
    for (std::size_t e = 0; e < stats.epoch_mean_loss.size(); ++e)
      std::cerr << "epoch " << (e + 1) << "/" << stats.epoch_mean_loss.size()
                << ": mean_loss=" << stats.epoch_mean_loss[e]
                << " lr=" << stats.epoch_end_lr[e] << "\n";
  }

  save_model_binary(model, cmd.model_out);
  if (!cmd.text_out.empty()) save_model_text(model, cmd.text_out);
  if (!cmd.vocab_out.empty()) {
    auto out = open_output(cmd.vocab_out);
    write_vocab_tsv(model.vocab, out);
  }
  if (!cmd.quiet) std::cerr << "model saved: " << cmd.model_out << "\n";

  const std::string config_path = cmd.save_config.empty()
                                      ? default_config_path(cmd.model_out)
                                      : cmd.save_config;
  write_config_file(config_path, config_to_json(cmd), cmd.quiet);
  return 0;
}

int cmd_embed(const EmbedCmd& cmd) {
  if (cmd.fasta_in.empty()) throw std::invalid_argument("no input FASTA given");
  const EmbeddingModel model = load_model(cmd.model_in);
  FastaOptions options{.normalize_u = !cmd.keep_u};

  std::vector<SequenceEmbedding> embeddings;
  std::vector<std::pair<std::string, std::string>> labels;  // id, class
  std::uint64_t total = 0, failed = 0;
  for (const auto& path : cmd.fasta_in) {
    auto [records, report] = parse_fasta_file(path, options);
    const std::string stem = fs::path(path).stem().string();
    total += records.size() + report.n_records_dropped;
    for (const auto& rec : records) {
      try {
        embeddings.push_back(embed_sequence(model, rec));
        if (!cmd.quiet)
          std::cerr << rec.id << ": used=" << embeddings.back().n_kmers_used
                    << " unknown=" << embeddings.back().n_kmers_unknown << "\n";
        if (cmd.label_from_filename) labels.emplace_back(rec.id, stem);
      } catch (const Error& e) {
        ++failed;
        std::cerr << "warning: " << e.what() << "\n";
      }
    }
    failed += report.n_records_dropped;
    for (const auto& dropped : report.dropped_ids)
      std::cerr << "warning: dropped invalid sequence '" << dropped << "'\n";
  }

  if (cmd.tsv_out == "-") {
    write_embeddings_tsv(embeddings, std::cout);
  } else {
    auto out = open_output(cmd.tsv_out);
    write_embeddings_tsv(embeddings, out);
  }

  std::string labels_out = cmd.labels_out;
  if (cmd.label_from_filename && labels_out.empty()) {
    if (cmd.tsv_out == "-")
      throw std::invalid_argument(
          "--label-from-filename with stdout output needs --labels-out");
    labels_out = cmd.tsv_out + ".labels.tsv";
  }
  if (cmd.label_from_filename) {
    auto out = open_output(labels_out);
    for (const auto& [id, cls] : labels) out << id << '\t' << cls << '\n';
  }

  if (!cmd.quiet)
    std::cerr << "embedded " << embeddings.size() << "/" << total
              << " sequences -> " << cmd.tsv_out << "\n";

  const std::string config_path = cmd.save_config.empty()
                                      ? default_config_path(cmd.tsv_out)
                                      : cmd.save_config;
  write_config_file(config_path, config_to_json(cmd), cmd.quiet);
  return (embeddings.empty() && total > 0) ? 1 : 0;
}

namespace {

EmbeddingSet load_labeled_set(const std::string& embeddings_tsv,
                              const std::string& labels_tsv) {
  std::ifstream etsv(embeddings_tsv);
  if (!etsv) throw IoError("cannot open embeddings file '" + embeddings_tsv + "'");
  const EmbeddingTable table = read_embeddings_tsv(etsv);
  std::ifstream ltsv(labels_tsv);
  if (!ltsv) throw IoError("cannot open labels file '" + labels_tsv + "'");
  const auto labels_by_id = read_labels_tsv(ltsv);
  const LabeledDataset data = join_embeddings_labels(table, labels_by_id);

  EmbeddingSet set;
  set.ids = data.ids;
  set.n = data.n;
  set.dim = data.dim;
  set.matrix = data.matrix;
  set.labels = data.labels;
  return set;
}

}  // namespace

int cmd_analyze(const AnalyzeCmd& cmd) {
  if (cmd.components < 1) throw std::invalid_argument("components must be >= 1");
  const EmbeddingSet set = load_labeled_set(cmd.embeddings_tsv, cmd.labels_tsv);

  fs::create_directories(cmd.out_dir);
  const fs::path dir(cmd.out_dir);

  const PcaModel pca = pca_fit(set, static_cast<std::size_t>(cmd.components));
  const std::vector<double> projection = pca_transform(pca, set);
  {
    auto out = open_output((dir / "pca.tsv").string());
    write_projection_tsv(set, projection, pca.n_components, out);
  }

  const ClusterReport report = cluster_report(set);
  {
    auto out = open_output((dir / "cluster_report.txt").string());
    write_cluster_report_text(report, out);
  }
  {
    auto out = open_output((dir / "cluster_report.json").string());
    write_cluster_report_json(report, out);
  }
  write_cluster_report_text(report, std::cout);

  if (!cmd.quiet)
    std::cerr << "analysis written to " << dir.string() << "\n";
  write_config_file(cmd.save_config.empty() ? (dir / "analyze.config.json").string()
                                            : cmd.save_config,
                    config_to_json(cmd), cmd.quiet);
  return 0;
}

int cmd_classify(const ClassifyCmd& cmd) {
  std::ifstream etsv(cmd.embeddings_tsv);
  if (!etsv) throw IoError("cannot open embeddings file '" + cmd.embeddings_tsv + "'");
  const EmbeddingTable table = read_embeddings_tsv(etsv);
  std::ifstream ltsv(cmd.labels_tsv);
  if (!ltsv) throw IoError("cannot open labels file '" + cmd.labels_tsv + "'");
  const auto labels_by_id = read_labels_tsv(ltsv);
  const LabeledDataset data = join_embeddings_labels(table, labels_by_id);

  auto [train_set, test_set] = split(data, cmd.test_fraction, cmd.seed);
  if (!cmd.quiet)
    std::cerr << "split: train=" << train_set.n << " test=" << test_set.n << "\n";

  const SvmModel model = svm_train(train_set, cmd.lambda, cmd.epochs, cmd.seed);
  const auto predictions =
      svm_predict(model, test_set.matrix, test_set.n, test_set.dim);
  auto [report, confusion] = evaluate(test_set.labels, predictions, data.class_names);

  write_report_text(report, std::cout);
  std::cout << "\n";
  write_confusion_tsv(confusion, std::cout);

  fs::create_directories(cmd.out_dir);
  const fs::path dir(cmd.out_dir);
  {
    auto out = open_output((dir / "report.json").string());
    write_report_json(report, confusion, out);
  }
  {
    auto out = open_output((dir / "confusion.tsv").string());
    write_confusion_tsv(confusion, out);
  }
  write_config_file(cmd.save_config.empty() ? (dir / "classify.config.json").string()
                                            : cmd.save_config,
                    config_to_json(cmd), cmd.quiet);
  return 0;
}

int cmd_serve(const ServeCmd& cmd) {
  EmbeddingModel model = load_model(cmd.model_in);
  std::cerr << "serving " << cmd.model_in << " on " << cmd.host << ":" << cmd.port
            << " (k=" << model.vocab.k << " dim=" << model.dim
            << " V=" << model.vocab.size() << ")\n";
  std::cerr << config_to_json(cmd);
  if (!cmd.save_config.empty())
    write_config_file(cmd.save_config, config_to_json(cmd), false);
  InferenceServer server(std::move(model));
  if (!server.listen(cmd.host, cmd.port))
    throw IoError("cannot listen on " + cmd.host + ":" + std::to_string(cmd.port));
  return 0;
}

}  // namespace seq2vec::cli
