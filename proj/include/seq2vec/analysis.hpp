#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seq2vec {

struct EmbeddingSet {
  std::vector<std::string> ids;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> matrix;  // n x dim, row-major
  std::optional<std::vector<std::string>> labels;  // aligned to rows

  std::span<const double> row(std::size_t i) const {
    return {matrix.data() + i * dim, dim};
  }
};

struct PcaModel {
  std::size_t dim = 0;
  std::size_t n_components = 0;
  std::vector<double> mean;                      // dim
  std::vector<double> components;                // c x dim, orthonormal rows
  std::vector<double> explained_variance;        // c, non-increasing
  std::vector<double> explained_variance_ratio;  // c, sums to <= 1

  std::span<const double> component(std::size_t i) const {
    return {components.data() + i * dim, dim};
  }
};

struct ClusterReport {
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;
  double davies_bouldin = 0.0;
};

// Eigendecomposition of a symmetric n x n matrix by cyclic Jacobi rotations;
// converges when the off-diagonal Frobenius norm drops below 1e-12 times the
// matrix norm. Eigenpairs are returned sorted by descending eigenvalue, with
// eigenvectors as rows of `eigenvectors`.
void jacobi_eigen_symmetric(std::vector<double> matrix, std::size_t n,
                            std::vector<double>& eigenvalues,
                            std::vector<double>& eigenvectors);

// PCA of the row vectors: centers by column means, eigendecomposes the
// sample covariance (divisor n-1), keeps the top n_components. Each
// component's largest-magnitude coordinate is made positive so results are
// deterministic.
PcaModel pca_fit(const EmbeddingSet& set, std::size_t n_components);

// Rows of (x - mean) * components^T; returns an n x c row-major matrix.
std::vector<double> pca_transform(const PcaModel& model, const EmbeddingSet& set);

// Mean silhouette over all points with Euclidean distances; singleton
// clusters contribute 0.
double silhouette_score(const EmbeddingSet& set);

// (B/(K-1)) / (W/(n-K)) with B the between- and W the within-cluster
// dispersion.
double calinski_harabasz(const EmbeddingSet& set);

// Mean over clusters of the worst (s_i + s_j) / d_ij ratio.
double davies_bouldin(const EmbeddingSet& set);

ClusterReport cluster_report(const EmbeddingSet& set);

// "id<TAB>label<TAB>pc1<TAB>pc2..." per row; projection is n x c row-major.
void write_projection_tsv(const EmbeddingSet& set,
                          const std::vector<double>& projection,
                          std::size_t n_components, std::ostream& out);

void write_cluster_report_text(const ClusterReport& report, std::ostream& out);
void write_cluster_report_json(const ClusterReport& report, std::ostream& out);

}  // namespace seq2vec
