#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seq2vec/embedder.hpp"

namespace seq2vec {

struct LabeledDataset {
  std::vector<std::string> ids;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> matrix;  // n x dim, row-major
  std::vector<std::string> labels;
  std::vector<std::string> class_names;  // lexicographic
  std::unordered_map<std::string, std::size_t> class_index;

  std::span<const double> row(std::size_t i) const {
    return {matrix.data() + i * dim, dim};
  }

  static LabeledDataset from_parts(std::vector<std::string> ids, std::size_t dim,
                                   std::vector<double> matrix,
                                   std::vector<std::string> labels);
};

// "id<TAB>class" rows.
std::unordered_map<std::string, std::string> read_labels_tsv(std::istream& in);

// Joins embedding rows with labels by id; every embedding id must be
// labeled, missing ids are reported together in the error.
LabeledDataset join_embeddings_labels(
    const EmbeddingTable& table,
    const std::unordered_map<std::string, std::string>& labels_by_id);

// Seeded uniform shuffle; the first ceil(n * test_fraction) rows become the
// test set. Not stratified. Returns (train, test).
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                double test_fraction,
                                                std::uint64_t seed);

struct SvmModel {
  std::vector<std::string> classes;
  std::size_t dim = 0;
  std::vector<double> weights;  // K x dim, row-major
  std::vector<double> biases;   // K
  double lambda = 0.0;
  int epochs = 0;
  std::uint64_t seed = 0;

  std::span<const double> weight_row(std::size_t c) const {
    return {weights.data() + c * dim, dim};
  }
};

// One-vs-rest linear SVMs fit by the Pegasos projected stochastic
// subgradient method (step 1/(lambda*t), epochs*n updates per class).
// Per-class seeds derive from the master seed, so results do not depend on
// how the independent subproblems are scheduled.
SvmModel svm_train(const LabeledDataset& train, double lambda = 1e-4,
                   int epochs = 20, std::uint64_t seed = 1);

// argmax_k w_k.x + b_k per row; ties go to the lower class index.
std::vector<std::string> svm_predict(const SvmModel& model,
                                     std::span<const double> matrix,
                                     std::size_t n, std::size_t dim);

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::uint64_t> counts;  // K x K, rows = true, columns = predicted

  std::uint64_t at(std::size_t t, std::size_t p) const {
    return counts[t * classes.size() + p];
  }
};

struct ReportRow {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct ClassificationReport {
  std::vector<std::string> classes;
  std::vector<ReportRow> per_class;
  double accuracy = 0.0;
  ReportRow macro_avg;
  ReportRow weighted_avg;
  std::uint64_t total = 0;
};

std::pair<ClassificationReport, ConfusionMatrix> evaluate(
    const std::vector<std::string>& truth,
    const std::vector<std::string>& predicted,
    const std::vector<std::string>& classes);

// Aligned text table with two-decimal rates, like standard classification
// report printers.
void write_report_text(const ClassificationReport& report, std::ostream& out);
void write_report_json(const ClassificationReport& report,
                       const ConfusionMatrix& confusion, std::ostream& out);
void write_confusion_tsv(const ConfusionMatrix& confusion, std::ostream& out);

}  // namespace seq2vec
