#include "seq2vec/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "seq2vec/errors.hpp"
#include "seq2vec/rng.hpp"

namespace seq2vec {

LabeledDataset LabeledDataset::from_parts(std::vector<std::string> ids,
                                          std::size_t dim,
                                          std::vector<double> matrix,
                                          std::vector<std::string> labels) {
  if (ids.size() != labels.size() || matrix.size() != ids.size() * dim)
    throw std::invalid_argument("misaligned dataset parts");
  LabeledDataset data;
  data.n = ids.size();
  data.dim = dim;
  data.ids = std::move(ids);
  data.matrix = std::move(matrix);
  data.labels = std::move(labels);
  std::set<std::string> classes(data.labels.begin(), data.labels.end());
  for (const auto& name : classes) {
    data.class_index.emplace(name, data.class_names.size());
    data.class_names.push_back(name);
  }
  return data;
}

std::unordered_map<std::string, std::string> read_labels_tsv(std::istream& in) {
  std::unordered_map<std::string, std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw ParseError("expected 'id<TAB>class'", line_no);
    std::string id = line.substr(0, tab);
    std::string cls = line.substr(tab + 1);
    if (!labels.emplace(std::move(id), std::move(cls)).second)
      throw ParseError("duplicate id '" + line.substr(0, tab) + "' in labels",
                       line_no);
  }
  if (labels.empty()) throw DataError("labels file has no rows");
  return labels;
}

LabeledDataset join_embeddings_labels(
    const EmbeddingTable& table,
    const std::unordered_map<std::string, std::string>& labels_by_id) {
  std::vector<std::string> labels;
  labels.reserve(table.n);
  std::string missing;
  std::size_t n_missing = 0;
  for (const auto& id : table.ids) {
    auto it = labels_by_id.find(id);
    if (it == labels_by_id.end()) {
      ++n_missing;
      if (n_missing <= 10) {
        if (!missing.empty()) missing += ", ";
        missing += id;
      }
    } else {
      labels.push_back(it->second);
    }
  }
  if (n_missing > 0)
    throw DataError("no label for " + std::to_string(n_missing) +
                    " embedding id(s): " + missing +
                    (n_missing > 10 ? ", ..." : ""));
  return LabeledDataset::from_parts(table.ids, table.dim, table.matrix,
                                    std::move(labels));
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                double test_fraction,
                                                std::uint64_t seed) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
    throw std::invalid_argument("test_fraction must be in (0, 1)");
  if (data.n < 2) throw DataError("cannot split fewer than 2 rows");

  std::vector<std::size_t> perm(data.n);
  for (std::size_t i = 0; i < data.n; ++i) perm[i] = i;
  Rng rng(seed);
  for (std::size_t i = data.n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(perm[i], perm[j]);
  }

  const auto test_n = static_cast<std::size_t>(
      std::ceil(static_cast<double>(data.n) * test_fraction));

  auto take = [&](std::size_t begin, std::size_t end) {
    std::vector<std::string> ids, labels;
    std::vector<double> matrix;
    ids.reserve(end - begin);
    labels.reserve(end - begin);
    matrix.reserve((end - begin) * data.dim);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t r = perm[i];
      ids.push_back(data.ids[r]);
      labels.push_back(data.labels[r]);
      auto row = data.row(r);
      matrix.insert(matrix.end(), row.begin(), row.end());
    }
    return LabeledDataset::from_parts(std::move(ids), data.dim,
                                      std::move(matrix), std::move(labels));
  };

  LabeledDataset test = take(0, test_n);
  LabeledDataset train = take(test_n, data.n);
  if (train.class_names.size() < 2)
    throw DataError("split left the training set with fewer than 2 classes; "
                    "retry with another seed or fraction");
  return {std::move(train), std::move(test)};
}

namespace {

struct BinaryProblem {
  std::vector<double> weights;
  double bias = 0.0;
};

// Exact minimizer of sum_i max(0, 1 - y_i (s_i + b)) over the intercept b.
// The objective is convex piecewise-linear in b, so a minimum sits on a
// breakpoint: b = 1 - s_i for positives, b = -1 - s_i for negatives. A
// left-to-right sweep with subgradient slopes finds it in O(n log n).
double exact_intercept(const std::vector<double>& scores,
                       const std::vector<signed char>& y) {
  const std::size_t n = scores.size();
  std::vector<std::pair<double, int>> breaks;  // (b, slope change)
  breaks.reserve(n);
  // For y=+1 the hinge decreases (slope -1) until b = 1 - s, then is flat;
  // for y=-1 it is flat until b = -1 - s, then increases (slope +1).
  std::int64_t slope = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] > 0) {
      breaks.emplace_back(1.0 - scores[i], +1);
      --slope;  // active hinge left of the breakpoint
    } else {
      breaks.emplace_back(-1.0 - scores[i], +1);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  // Walk the breakpoints; the first point where the slope becomes
  // non-negative minimizes the objective.
  for (const auto& [b, delta] : breaks) {
    if (slope >= 0) break;
    slope += delta;
    if (slope >= 0) return b;
  }
  return breaks.empty() ? 0.0 : breaks.back().first;
}

// w follows the classic Pegasos projected stochastic subgradient through the
// origin; the unregularized intercept is then set by exact 1-D hinge
// minimization. A free intercept inside the 1/(lambda*t) loop takes a 1/lambda
// first step it can never walk back, and a constant-1 bias feature drowns
// small-magnitude embeddings, so neither variant is used.
BinaryProblem pegasos_binary(const LabeledDataset& train, std::size_t target_class,
                             double lambda, int epochs, std::uint64_t seed) {
  const std::size_t n = train.n, dim = train.dim;
  std::vector<signed char> y(n);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = train.class_index.at(train.labels[i]) == target_class;
    y[i] = pos ? 1 : -1;
    positives += pos;
  }
  if (positives == 0 || positives == n)
    throw DataError("degenerate binary subproblem for class '" +
                    train.class_names[target_class] + "'");

  BinaryProblem problem;
  problem.weights.assign(dim, 0.0);
  auto& w = problem.weights;
  Rng rng(seed);
  const double radius = 1.0 / std::sqrt(lambda);
  const std::uint64_t total = static_cast<std::uint64_t>(epochs) * n;

  for (std::uint64_t t = 1; t <= total; ++t) {
    const std::size_t i = static_cast<std::size_t>(rng.below(n));
    auto x = train.row(i);
    double margin = 0.0;
    for (std::size_t j = 0; j < dim; ++j) margin += w[j] * x[j];
    margin *= y[i];

    const double eta = 1.0 / (lambda * static_cast<double>(t));
    const double scale = 1.0 - eta * lambda;  // = 1 - 1/t
    for (double& wj : w) wj *= scale;
    if (margin < 1.0) {
      const double step = eta * static_cast<double>(y[i]);
      for (std::size_t j = 0; j < dim; ++j) w[j] += step * x[j];
    }
    double norm_sq = 0.0;
    for (double wj : w) norm_sq += wj * wj;
    if (norm_sq > radius * radius) {
      const double shrink = radius / std::sqrt(norm_sq);
      for (double& wj : w) wj *= shrink;
    }
  }

  std::vector<double> scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = train.row(i);
    for (std::size_t j = 0; j < dim; ++j) scores[i] += w[j] * x[j];
  }
  problem.bias = exact_intercept(scores, y);
  return problem;
}

}  // namespace

SvmModel svm_train(const LabeledDataset& train, double lambda, int epochs,
                   std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (train.class_names.size() < 2)
    throw DataError("training needs at least 2 classes");
  for (double v : train.matrix)
    if (!std::isfinite(v)) throw NumericError("non-finite feature value");

  const std::size_t K = train.class_names.size();
  SvmModel model;
  model.classes = train.class_names;
  model.dim = train.dim;
  model.weights.assign(K * train.dim, 0.0);
  model.biases.assign(K, 0.0);
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;

  std::vector<std::future<BinaryProblem>> futures;
  futures.reserve(K);
  for (std::size_t c = 0; c < K; ++c)
    futures.push_back(std::async(std::launch::async, pegasos_binary,
                                 std::cref(train), c, lambda, epochs,
                                 derive_seed(seed, c)));
  for (std::size_t c = 0; c < K; ++c) {
    BinaryProblem problem = futures[c].get();
    std::copy(problem.weights.begin(), problem.weights.end(),
              model.weights.begin() + static_cast<std::ptrdiff_t>(c * train.dim));
    model.biases[c] = problem.bias;
  }
  return model;
}

std::vector<std::string> svm_predict(const SvmModel& model,
                                     std::span<const double> matrix,
                                     std::size_t n, std::size_t dim) {
  if (dim != model.dim)
    throw DataError("feature dimension " + std::to_string(dim) +
                    " does not match model dimension " +
                    std::to_string(model.dim));
  if (matrix.size() != n * dim)
    throw std::invalid_argument("matrix size mismatch");

  std::vector<std::string> predictions;
  predictions.reserve(n);
  const std::size_t K = model.classes.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < K; ++c) {
      double score = model.biases[c];
      auto w = model.weight_row(c);
      for (std::size_t j = 0; j < dim; ++j) score += w[j] * matrix[i * dim + j];
      if (score > best_score) {  // strict: ties keep the lower class index
        best_score = score;
        best = c;
      }
    }
    predictions.push_back(model.classes[best]);
  }
  return predictions;
}

std::pair<ClassificationReport, ConfusionMatrix> evaluate(
    const std::vector<std::string>& truth,
    const std::vector<std::string>& predicted,
    const std::vector<std::string>& classes) {
  if (truth.size() != predicted.size() || truth.empty())
    throw std::invalid_argument("truth/predicted must have equal nonzero length");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index.emplace(classes[c], c);
  auto class_of = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end())
      throw DataError("label '" + label + "' outside the class set");
    return it->second;
  };

  const std::size_t K = classes.size();
  ConfusionMatrix confusion;
  confusion.classes = classes;
  confusion.counts.assign(K * K, 0);
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++confusion.counts[class_of(truth[i]) * K + class_of(predicted[i])];

  ClassificationReport report;
  report.classes = classes;
  report.per_class.resize(K);
  report.total = truth.size();

  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < K; ++c) {
    std::uint64_t tp = confusion.at(c, c), row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < K; ++j) {
      row_sum += confusion.at(c, j);
      col_sum += confusion.at(j, c);
    }
    trace += tp;
    auto& row = report.per_class[c];
    row.support = row_sum;
    row.precision = col_sum ? static_cast<double>(tp) / static_cast<double>(col_sum) : 0.0;
    row.recall = row_sum ? static_cast<double>(tp) / static_cast<double>(row_sum) : 0.0;
    row.f1 = (row.precision + row.recall) > 0.0
                 ? 2.0 * row.precision * row.recall / (row.precision + row.recall)
                 : 0.0;
  }
  report.accuracy = static_cast<double>(trace) / static_cast<double>(report.total);

  report.macro_avg.support = report.total;
  report.weighted_avg.support = report.total;
  for (std::size_t c = 0; c < K; ++c) {
    const auto& row = report.per_class[c];
    report.macro_avg.precision += row.precision / static_cast<double>(K);
    report.macro_avg.recall += row.recall / static_cast<double>(K);
    report.macro_avg.f1 += row.f1 / static_cast<double>(K);
    const double weight =
        static_cast<double>(row.support) / static_cast<double>(report.total);
    report.weighted_avg.precision += weight * row.precision;
    report.weighted_avg.recall += weight * row.recall;
    report.weighted_avg.f1 += weight * row.f1;
  }
  return {std::move(report), std::move(confusion)};
}

void write_report_text(const ClassificationReport& report, std::ostream& out) {
  std::size_t name_width = 12;  // fits "weighted avg"
  for (const auto& name : report.classes)
    name_width = std::max(name_width, name.size());

  char buf[160];
  std::snprintf(buf, sizeof buf, "%*s  precision    recall  f1-score   support\n\n",
                static_cast<int>(name_width), "");
  out << buf;
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    const auto& row = report.per_class[c];
    std::snprintf(buf, sizeof buf, "%*s       %.2f      %.2f      %.2f  %8llu\n",
                  static_cast<int>(name_width), report.classes[c].c_str(),
                  row.precision, row.recall, row.f1,
                  static_cast<unsigned long long>(row.support));
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "\n%*s                        %.2f  %8llu\n",
                static_cast<int>(name_width), "accuracy", report.accuracy,
                static_cast<unsigned long long>(report.total));
  out << buf;
  std::snprintf(buf, sizeof buf, "%*s       %.2f      %.2f      %.2f  %8llu\n",
                static_cast<int>(name_width), "macro avg",
                report.macro_avg.precision, report.macro_avg.recall,
                report.macro_avg.f1,
                static_cast<unsigned long long>(report.macro_avg.support));
  out << buf;
  std::snprintf(buf, sizeof buf, "%*s       %.2f      %.2f      %.2f  %8llu\n",
                static_cast<int>(name_width), "weighted avg",
                report.weighted_avg.precision, report.weighted_avg.recall,
                report.weighted_avg.f1,
                static_cast<unsigned long long>(report.weighted_avg.support));
  out << buf;
}

namespace {

void append_json_number(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

void append_json_string(std::string& s, const std::string& v) {
  s += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') s += '\\';
    s += c;
  }
  s += '"';
}

void append_row(std::string& s, const ReportRow& row) {
  s += "{\"precision\": ";
  append_json_number(s, row.precision);
  s += ", \"recall\": ";
  append_json_number(s, row.recall);
  s += ", \"f1\": ";
  append_json_number(s, row.f1);
  s += ", \"support\": " + std::to_string(row.support) + "}";
}

}  // namespace

void write_report_json(const ClassificationReport& report,
                       const ConfusionMatrix& confusion, std::ostream& out) {
  std::string s = "{\n  \"classes\": [";
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    if (c) s += ", ";
    append_json_string(s, report.classes[c]);
  }
  s += "],\n  \"per_class\": {";
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    if (c) s += ", ";
    s += "\n    ";
    append_json_string(s, report.classes[c]);
    s += ": ";
    append_row(s, report.per_class[c]);
  }
  s += "\n  },\n  \"accuracy\": ";
  append_json_number(s, report.accuracy);
  s += ",\n  \"macro_avg\": ";
  append_row(s, report.macro_avg);
  s += ",\n  \"weighted_avg\": ";
  append_row(s, report.weighted_avg);
  s += ",\n  \"total\": " + std::to_string(report.total);
  s += ",\n  \"confusion\": [";
  const std::size_t K = confusion.classes.size();
  for (std::size_t t = 0; t < K; ++t) {
    if (t) s += ", ";
    s += '[';
    for (std::size_t p = 0; p < K; ++p) {
      if (p) s += ", ";
      s += std::to_string(confusion.at(t, p));
    }
    s += ']';
  }
  s += "]\n}\n";
  out << s;
}

void write_confusion_tsv(const ConfusionMatrix& confusion, std::ostream& out) {
  out << "true\\predicted";
  for (const auto& name : confusion.classes) out << '\t' << name;
  out << '\n';
  const std::size_t K = confusion.classes.size();
  for (std::size_t t = 0; t < K; ++t) {
    out << confusion.classes[t];
    for (std::size_t p = 0; p < K; ++p) out << '\t' << confusion.at(t, p);
    out << '\n';
  }
}

}  // namespace seq2vec
