#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seq2vec/cli.hpp"
#include "seq2vec/errors.hpp"

namespace {

using namespace seq2vec;

// --config is applied before CLI11 parsing so explicit flags override the
// file; this finds it (and the subcommand) without a full parse.
std::string find_config_arg(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

std::string find_subcommand(int argc, char** argv) {
  if (argc > 1 && argv[1][0] != '-') return argv[1];
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-mer sequence embeddings: preprocess, train, embed, analyze, "
               "classify, serve"};
  app.require_subcommand(1);

  cli::PreprocessCmd pre;
  cli::TrainCmd train;
  cli::EmbedCmd embed;
  cli::AnalyzeCmd analyze;
  cli::ClassifyCmd classify;
  cli::ServeCmd serve;

  const std::string config_path = find_config_arg(argc, argv);
  const std::string subcommand = find_subcommand(argc, argv);
  try {
    if (!config_path.empty()) {
      if (subcommand == "preprocess") cli::load_config(config_path, subcommand, pre);
      else if (subcommand == "train") cli::load_config(config_path, subcommand, train);
      else if (subcommand == "embed") cli::load_config(config_path, subcommand, embed);
      else if (subcommand == "analyze") cli::load_config(config_path, subcommand, analyze);
      else if (subcommand == "classify") cli::load_config(config_path, subcommand, classify);
      else if (subcommand == "serve") cli::load_config(config_path, subcommand, serve);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string config_sink;  // accepted for every subcommand, handled above

  auto* p = app.add_subcommand("preprocess",
                               "validate a FASTA file and keep one representative "
                               "per identity cluster");
  p->add_option("-i,--in", pre.fasta_in, "input FASTA ('-' for stdin)");
  p->add_option("-o,--out", pre.fasta_out, "representatives FASTA out");
  p->add_option("--cluster-map", pre.cluster_map_out, "cluster map TSV out");
  p->add_option("--identity", pre.identity, "merge threshold (strictly greater joins)")
      ->capture_default_str();
  p->add_option("--prefilter-kmer", pre.prefilter_kmer, "prefilter k-mer size")
      ->capture_default_str();
  p->add_option("--prefilter-min-shared", pre.prefilter_min_shared,
                "shared k-mer fraction floor for skipping")
      ->capture_default_str();
  p->add_flag("--no-prefilter", pre.no_prefilter, "disable the alignment prefilter");
  p->add_flag("--keep-u", pre.keep_u, "do not normalize U to T");
  p->add_option("--save-config", pre.save_config, "effective-config path");
  p->add_option("--config", config_sink, "load parameters from a config file");

  auto* t = app.add_subcommand("train", "train k-mer embeddings on a FASTA corpus");
  t->add_option("-i,--in", train.fasta_in, "input FASTA ('-' for stdin)");
  t->add_option("-o,--model-out", train.model_out, "binary model out");
  t->add_option("--text-out", train.text_out, "also save the text model format");
  t->add_option("--vocab-out", train.vocab_out, "dump the vocabulary as token<TAB>count");
  t->add_option("--exclude-ids", train.exclude_ids,
                "file with one sequence id per line to hold out");
  t->add_option("-k,--kmer", train.k, "k-mer size")->capture_default_str();
  t->add_option("-d,--dim", train.dim, "embedding dimension")->capture_default_str();
  t->add_option("-w,--window", train.window, "context window")->capture_default_str();
  t->add_option("--min-count", train.min_count, "vocabulary frequency floor")
      ->capture_default_str();
  t->add_option("-e,--epochs", train.epochs, "training epochs")->capture_default_str();
  t->add_option("--workers", train.workers, "training threads")->capture_default_str();
  t->add_option("--mode", train.mode, "skipgram or cbow")->capture_default_str();
  t->add_option("--negative", train.negative, "negative samples per pair")
      ->capture_default_str();
  t->add_option("--lr", train.initial_lr, "initial learning rate")->capture_default_str();
  t->add_option("--min-lr", train.min_lr, "final learning rate")->capture_default_str();
  t->add_option("--subsample", train.subsample_t, "subsampling threshold (0 disables)")
      ->capture_default_str();
  t->add_option("--noise-power", train.noise_power, "negative-sampling distortion")
      ->capture_default_str();
  t->add_option("--seed", train.seed, "random seed")->capture_default_str();
  t->add_flag("--no-shrink-window", train.no_shrink_window,
              "use the full window at every position");
  t->add_flag("--keep-u", train.keep_u, "do not normalize U to T");
  t->add_option("--save-config", train.save_config, "effective-config path");
  t->add_option("--config", config_sink, "load parameters from a config file");

  auto* e = app.add_subcommand("embed", "mean-pool k-mer vectors per sequence");
  e->add_option("-i,--in", embed.fasta_in, "input FASTA file(s)");
  e->add_option("-m,--model", embed.model_in, "model file (binary or text)");
  e->add_option("-o,--out", embed.tsv_out, "embeddings TSV out ('-' for stdout)");
  e->add_option("--labels-out", embed.labels_out, "labels TSV out");
  e->add_flag("--label-from-filename", embed.label_from_filename,
              "label each sequence with its source file stem");
  e->add_flag("--keep-u", embed.keep_u, "do not normalize U to T");
  e->add_option("--save-config", embed.save_config, "effective-config path");
  e->add_option("--config", config_sink, "load parameters from a config file");

  auto* a = app.add_subcommand("analyze", "PCA projection and cluster quality metrics");
  a->add_option("-i,--embeddings", analyze.embeddings_tsv, "embeddings TSV");
  a->add_option("-l,--labels", analyze.labels_tsv, "labels TSV (id<TAB>class)");
  a->add_option("-o,--out-dir", analyze.out_dir, "output directory")
      ->capture_default_str();
  a->add_option("--components", analyze.components, "PCA components")
      ->capture_default_str();
  a->add_option("--save-config", analyze.save_config, "effective-config path");
  a->add_option("--config", config_sink, "load parameters from a config file");

  auto* c = app.add_subcommand("classify",
                               "split, train a linear SVM, report quality");
  c->add_option("-i,--embeddings", classify.embeddings_tsv, "embeddings TSV");
  c->add_option("-l,--labels", classify.labels_tsv, "labels TSV (id<TAB>class)");
  c->add_option("-o,--out-dir", classify.out_dir, "output directory")
      ->capture_default_str();
  c->add_option("--test-fraction", classify.test_fraction, "held-out fraction")
      ->capture_default_str();
  c->add_option("--lambda", classify.lambda, "L2 regularization")->capture_default_str();
  c->add_option("--epochs", classify.epochs, "passes over the training set")
      ->capture_default_str();
  c->add_option("--seed", classify.seed, "split / optimizer seed")->capture_default_str();
  c->add_option("--save-config", classify.save_config, "effective-config path");
  c->add_option("--config", config_sink, "load parameters from a config file");

  auto* s = app.add_subcommand("serve", "HTTP batch-inference endpoint");
  s->add_option("-m,--model", serve.model_in, "model file (binary or text)");
  s->add_option("--host", serve.host, "bind address")->capture_default_str();
  s->add_option("--port", serve.port, "bind port")->capture_default_str();
  s->add_option("--save-config", serve.save_config, "effective-config path");
  s->add_option("--config", config_sink, "load parameters from a config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& parse_error) {
    std::cerr << parse_error.what() << "\n";
    return 2;
  }

  try {
    if (p->parsed()) return cli::cmd_preprocess(pre);
    if (t->parsed()) return cli::cmd_train(train);
    if (e->parsed()) return cli::cmd_embed(embed);
    if (a->parsed()) return cli::cmd_analyze(analyze);
    if (c->parsed()) return cli::cmd_classify(classify);
    if (s->parsed()) return cli::cmd_serve(serve);
  } catch (const std::invalid_argument& bad) {
    std::cerr << "usage error: " << bad.what() << "\n";
    return 2;
  } catch (const Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& unexpected) {
    std::cerr << "error: " << unexpected.what() << "\n";
    return 1;
  }
  return 0;
}
