#include "seq2vec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "seq2vec/errors.hpp"

namespace seq2vec {

namespace {

double frobenius(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

double off_diagonal_frobenius(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace

void jacobi_eigen_symmetric(std::vector<double> a, std::size_t n,
                            std::vector<double>& eigenvalues,
                            std::vector<double>& eigenvectors) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size mismatch");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = frobenius(a);
  const double tolerance = 1e-12 * (norm > 0.0 ? norm : 1.0);
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_frobenius(a, n) < tolerance) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i * n + p];
          const double aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p * n + i];
          const double aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v[i * n + p];
          const double viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] > a[y * n + y];
  });

  eigenvalues.resize(n);
  eigenvectors.assign(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t col = order[r];
    eigenvalues[r] = a[col * n + col];
    for (std::size_t i = 0; i < n; ++i)
      eigenvectors[r * n + i] = v[i * n + col];
  }
}

PcaModel pca_fit(const EmbeddingSet& set, std::size_t n_components) {
  if (set.n < 2) throw DataError("PCA needs at least 2 points");
  if (set.dim == 0) throw std::invalid_argument("empty feature dimension");
  if (n_components < 1 || n_components > std::min(set.n - 1, set.dim))
    throw std::invalid_argument("n_components must be in [1, min(n-1, dim)]");

  const std::size_t n = set.n, d = set.dim;
  PcaModel model;
  model.dim = d;
  model.n_components = n_components;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = set.row(i);
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += row[j];
  }
  for (double& m : model.mean) m /= static_cast<double>(n);

  std::vector<double> cov(d * d, 0.0);
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = set.row(i);
    for (std::size_t j = 0; j < d; ++j) centered[j] = row[j] - model.mean[j];
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = j; l < d; ++l)
        cov[j * d + l] += centered[j] * centered[l];
  }
  const double divisor = static_cast<double>(n - 1);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = j; l < d; ++l) {
      cov[j * d + l] /= divisor;
      cov[l * d + j] = cov[j * d + l];
    }

  std::vector<double> eigenvalues, eigenvectors;
  jacobi_eigen_symmetric(std::move(cov), d, eigenvalues, eigenvectors);

  double total_variance = 0.0;
  for (double& ev : eigenvalues) {
    if (ev < 0.0) ev = 0.0;  // covariance is PSD up to roundoff
    total_variance += ev;
  }

  model.components.resize(n_components * d);
  model.explained_variance.resize(n_components);
  model.explained_variance_ratio.resize(n_components);
  for (std::size_t c = 0; c < n_components; ++c) {
    model.explained_variance[c] = eigenvalues[c];
    model.explained_variance_ratio[c] =
        total_variance > 0.0 ? eigenvalues[c] / total_variance : 0.0;
    // Sign convention: the largest-magnitude coordinate is positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double mag = std::abs(eigenvectors[c * d + j]);
      if (mag > best) {
        best = mag;
        arg = j;
      }
    }
    const double sign = eigenvectors[c * d + arg] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j)
      model.components[c * d + j] = sign * eigenvectors[c * d + j];
  }
  return model;
}

std::vector<double> pca_transform(const PcaModel& model, const EmbeddingSet& set) {
  if (set.dim != model.dim)
    throw DataError("dimension mismatch: set has " + std::to_string(set.dim) +
                    " features, model expects " + std::to_string(model.dim));
  const std::size_t c = model.n_components, d = model.dim;
  std::vector<double> projection(set.n * c, 0.0);
  for (std::size_t i = 0; i < set.n; ++i) {
    auto row = set.row(i);
    for (std::size_t comp = 0; comp < c; ++comp) {
      double acc = 0.0;
      auto basis = model.component(comp);
      for (std::size_t j = 0; j < d; ++j)
        acc += (row[j] - model.mean[j]) * basis[j];
      projection[i * c + comp] = acc;
    }
  }
  return projection;
}

namespace {

struct LabeledView {
  std::vector<int> class_of;               // per row
  std::vector<std::string> class_names;    // sorted
  std::vector<std::size_t> class_sizes;
  std::size_t n_classes = 0;
};

LabeledView labeled_view(const EmbeddingSet& set) {
  if (!set.labels || set.labels->size() != set.n)
    throw DataError("labels are required for cluster metrics");
  if (set.n < 2) throw DataError("cluster metrics need at least 2 points");
  LabeledView view;
  std::map<std::string, int> index;
  for (const auto& label : *set.labels) index.emplace(label, 0);
  int next = 0;
  for (auto& [name, idx] : index) {
    idx = next++;
    view.class_names.push_back(name);
  }
  view.n_classes = index.size();
  if (view.n_classes < 2)
    throw DataError("cluster metrics are undefined for a single class");
  view.class_of.reserve(set.n);
  view.class_sizes.assign(view.n_classes, 0);
  for (const auto& label : *set.labels) {
    const int c = index[label];
    view.class_of.push_back(c);
    ++view.class_sizes[static_cast<std::size_t>(c)];
  }
  return view;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

std::vector<double> class_centroids(const EmbeddingSet& set,
                                    const LabeledView& view) {
  std::vector<double> centroids(view.n_classes * set.dim, 0.0);
  for (std::size_t i = 0; i < set.n; ++i) {
    auto row = set.row(i);
    const std::size_t c = static_cast<std::size_t>(view.class_of[i]);
    for (std::size_t j = 0; j < set.dim; ++j)
      centroids[c * set.dim + j] += row[j];
  }
  for (std::size_t c = 0; c < view.n_classes; ++c)
    for (std::size_t j = 0; j < set.dim; ++j)
      centroids[c * set.dim + j] /= static_cast<double>(view.class_sizes[c]);
  return centroids;
}

}  // namespace

double silhouette_score(const EmbeddingSet& set) {
  const LabeledView view = labeled_view(set);
  const std::size_t n = set.n;
  double total = 0.0;
  std::vector<double> dist_sum(view.n_classes);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = static_cast<std::size_t>(view.class_of[i]);
    if (view.class_sizes[own] <= 1) continue;  // singleton: s(i) = 0
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist_sum[static_cast<std::size_t>(view.class_of[j])] +=
          euclidean(set.row(i), set.row(j));
    }
    const double a = dist_sum[own] / static_cast<double>(view.class_sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < view.n_classes; ++c) {
      if (c == own) continue;
      b = std::min(b, dist_sum[c] / static_cast<double>(view.class_sizes[c]));
    }
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

double calinski_harabasz(const EmbeddingSet& set) {
  const LabeledView view = labeled_view(set);
  const std::size_t n = set.n, d = set.dim, K = view.n_classes;
  if (n <= K)
    throw DataError("calinski_harabasz needs more points than classes");

  const std::vector<double> centroids = class_centroids(set, view);
  std::vector<double> overall(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = set.row(i);
    for (std::size_t j = 0; j < d; ++j) overall[j] += row[j];
  }
  for (double& x : overall) x /= static_cast<double>(n);

  double between = 0.0;
  for (std::size_t c = 0; c < K; ++c) {
    double sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = centroids[c * d + j] - overall[j];
      sq += diff * diff;
    }
    between += static_cast<double>(view.class_sizes[c]) * sq;
  }
  double within = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = set.row(i);
    const std::size_t c = static_cast<std::size_t>(view.class_of[i]);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - centroids[c * d + j];
      within += diff * diff;
    }
  }
  if (within == 0.0) {
    if (between == 0.0) return 0.0;  // every cluster collapsed onto the mean
    throw DataError("calinski_harabasz is infinite: zero within-cluster scatter");
  }
  return (between / static_cast<double>(K - 1)) /
         (within / static_cast<double>(n - K));
}

double davies_bouldin(const EmbeddingSet& set) {
  const LabeledView view = labeled_view(set);
  const std::size_t n = set.n, d = set.dim, K = view.n_classes;
  const std::vector<double> centroids = class_centroids(set, view);

  std::vector<double> scatter(K, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = static_cast<std::size_t>(view.class_of[i]);
    scatter[c] += euclidean(set.row(i),
                            {centroids.data() + c * d, d});
  }
  for (std::size_t c = 0; c < K; ++c)
    scatter[c] /= static_cast<double>(view.class_sizes[c]);

  double total = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
      if (i == j) continue;
      const double dij = euclidean({centroids.data() + i * d, d},
                                   {centroids.data() + j * d, d});
      if (dij == 0.0)
        throw DataError("davies_bouldin undefined: coincident centroids for '" +
                        view.class_names[i] + "' and '" + view.class_names[j] +
                        "'");
      worst = std::max(worst, (scatter[i] + scatter[j]) / dij);
    }
    total += worst;
  }
  return total / static_cast<double>(K);
}

ClusterReport cluster_report(const EmbeddingSet& set) {
  return {silhouette_score(set), calinski_harabasz(set), davies_bouldin(set)};
}

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

}  // namespace

void write_projection_tsv(const EmbeddingSet& set,
                          const std::vector<double>& projection,
                          std::size_t n_components, std::ostream& out) {
  std::string line;
  for (std::size_t i = 0; i < set.n; ++i) {
    line = set.ids[i];
    line += '\t';
    line += set.labels ? (*set.labels)[i] : "";
    for (std::size_t c = 0; c < n_components; ++c) {
      line += '\t';
      append_number(line, projection[i * n_components + c]);
    }
    line += '\n';
    out << line;
  }
}

void write_cluster_report_text(const ClusterReport& report, std::ostream& out) {
  std::string text;
  text += "silhouette\t";
  append_number(text, report.silhouette);
  text += "\ncalinski_harabasz\t";
  append_number(text, report.calinski_harabasz);
  text += "\ndavies_bouldin\t";
  append_number(text, report.davies_bouldin);
  text += '\n';
  out << text;
}

void write_cluster_report_json(const ClusterReport& report, std::ostream& out) {
  std::string text = "{\n  \"silhouette\": ";
  append_number(text, report.silhouette);
  text += ",\n  \"calinski_harabasz\": ";
  append_number(text, report.calinski_harabasz);
  text += ",\n  \"davies_bouldin\": ";
  append_number(text, report.davies_bouldin);
  text += "\n}\n";
  out << text;
}

}  // namespace seq2vec
