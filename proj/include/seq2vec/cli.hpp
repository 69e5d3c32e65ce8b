#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace seq2vec::cli {

// Every command echoes its effective parameters to a JSON config file and
// can be re-run from that file alone (workers=1 runs reproduce outputs).

struct PreprocessCmd {
  std::string fasta_in;
  std::string fasta_out;
  std::string cluster_map_out;
  double identity = 0.75;
  int prefilter_kmer = 5;
  double prefilter_min_shared = 0.5;
  bool no_prefilter = false;
  bool keep_u = false;  // keep U residues instead of normalizing to T
  std::string save_config;
  bool quiet = false;
};

struct TrainCmd {
  std::string fasta_in;
  std::string model_out;
  std::string text_out;     // optional interoperable text copy
  std::string vocab_out;    // optional vocabulary TSV dump
  std::string exclude_ids;  // optional file of ids to hold out
  int k = 6;
  int dim = 128;
  int window = 5;
  std::uint64_t min_count = 1;
  int epochs = 5;
  int workers = 4;
  std::string mode = "skipgram";  // or "cbow"
  int negative = 5;
  double initial_lr = 0.025;
  double min_lr = 1e-4;
  double subsample_t = 1e-3;
  double noise_power = 0.75;
  std::uint64_t seed = 1;
  bool no_shrink_window = false;
  bool keep_u = false;
  std::string save_config;
  bool quiet = false;
};

struct EmbedCmd {
  std::vector<std::string> fasta_in;
  std::string model_in;
  std::string tsv_out;
  std::string labels_out;
  bool label_from_filename = false;
  bool keep_u = false;
  std::string save_config;
  bool quiet = false;
};

struct AnalyzeCmd {
  std::string embeddings_tsv;
  std::string labels_tsv;
  std::string out_dir = ".";
  int components = 2;
  std::string save_config;
  bool quiet = false;
};

struct ClassifyCmd {
  std::string embeddings_tsv;
  std::string labels_tsv;
  std::string out_dir = ".";
  double test_fraction = 0.5;
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 42;
  std::string save_config;
  bool quiet = false;
};

struct ServeCmd {
  std::string model_in;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string save_config;
};

int cmd_preprocess(const PreprocessCmd& cmd);
int cmd_train(const TrainCmd& cmd);
int cmd_embed(const EmbedCmd& cmd);
int cmd_analyze(const AnalyzeCmd& cmd);
int cmd_classify(const ClassifyCmd& cmd);
int cmd_serve(const ServeCmd& cmd);

// JSON round trip for --config / --save-config.
std::string config_to_json(const PreprocessCmd& cmd);
std::string config_to_json(const TrainCmd& cmd);
std::string config_to_json(const EmbedCmd& cmd);
std::string config_to_json(const AnalyzeCmd& cmd);
std::string config_to_json(const ClassifyCmd& cmd);
std::string config_to_json(const ServeCmd& cmd);

// Reads the file, checks the embedded command name, and fills the struct.
void load_config(const std::string& path, const std::string& command,
                 PreprocessCmd& cmd);
void load_config(const std::string& path, const std::string& command,
                 TrainCmd& cmd);
void load_config(const std::string& path, const std::string& command,
                 EmbedCmd& cmd);
void load_config(const std::string& path, const std::string& command,
                 AnalyzeCmd& cmd);
void load_config(const std::string& path, const std::string& command,
                 ClassifyCmd& cmd);
void load_config(const std::string& path, const std::string& command,
                 ServeCmd& cmd);

}  // namespace seq2vec::cli
