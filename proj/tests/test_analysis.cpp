#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seq2vec/analysis.hpp"
#include "seq2vec/errors.hpp"
#include "seq2vec/rng.hpp"
#include "support/oracles.hpp"

using namespace seq2vec;

namespace {

EmbeddingSet make_set(std::size_t dim, std::vector<double> matrix,
                      std::optional<std::vector<std::string>> labels = {}) {
  EmbeddingSet set;
  set.dim = dim;
  set.n = matrix.size() / dim;
  set.matrix = std::move(matrix);
  set.labels = std::move(labels);
  set.ids.reserve(set.n);
  for (std::size_t i = 0; i < set.n; ++i) set.ids.push_back("p" + std::to_string(i));
  return set;
}

EmbeddingSet random_set(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<double> matrix(n * dim);
  for (double& x : matrix) x = rng.uniform(-1.0, 1.0);
  return make_set(dim, std::move(matrix));
}

// The far-pair silhouette instance evaluated by hand:
// clusters {0, 0.1} and {10, 10.1} in one dimension.
constexpr double kFarPairSilhouette = (199.0 / 201.0 + 197.0 / 199.0) / 2.0;

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("collinear 2-D points: PC1 along (1,1)/sqrt(2), ratio 1") {
  const auto set = make_set(2, {0, 0, 1, 1, 2, 2, 3, 3});
  const auto pca = pca_fit(set, 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(pca.component(0)[0] == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(pca.component(0)[1] == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(pca.explained_variance_ratio[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unit square corners: equal eigenvalues, ratios 0.5/0.5") {
  const auto set = make_set(2, {0, 0, 0, 1, 1, 0, 1, 1});
  const auto pca = pca_fit(set, 2);
  CHECK(pca.explained_variance[0] ==
        doctest::Approx(pca.explained_variance[1]).epsilon(1e-12));
  CHECK(pca.explained_variance_ratio[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pca.explained_variance_ratio[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("eigenvalues and eigenvectors match the Eigen oracle") {
  Rng rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 5 + rng.below(30);
    const std::size_t dim = 2 + rng.below(10);
    const auto set = random_set(rng, n, dim);
    const std::size_t c = std::min(n - 1, dim);
    const auto pca = pca_fit(set, c);
    const auto oracle_result = oracle::covariance_eigen_oracle(set.matrix, n, dim);

    for (std::size_t i = 0; i < c; ++i)
      CHECK(std::abs(pca.explained_variance[i] - oracle_result.eigenvalues[i]) < 1e-8);

    // Components agree up to sign where the spectrum is simple.
    for (std::size_t i = 0; i < c; ++i) {
      const double gap_prev =
          i == 0 ? 1.0 : oracle_result.eigenvalues[i - 1] - oracle_result.eigenvalues[i];
      const double gap_next = i + 1 < dim
                                  ? oracle_result.eigenvalues[i] - oracle_result.eigenvalues[i + 1]
                                  : 1.0;
      if (gap_prev < 1e-6 || gap_next < 1e-6) continue;
      double dot = 0.0;
      for (std::size_t j = 0; j < dim; ++j)
        dot += pca.component(i)[j] * oracle_result.eigenvectors[i * dim + j];
      CHECK(std::abs(std::abs(dot) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("components are orthonormal and signed deterministically") {
  Rng rng(56);
  const auto set = random_set(rng, 30, 8);
  const auto pca = pca_fit(set, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) {
      double dot = 0.0;
      for (std::size_t x = 0; x < 8; ++x)
        dot += pca.component(i)[x] * pca.component(j)[x];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
    const auto comp = pca.component(i);
    const auto arg = static_cast<std::size_t>(
        std::max_element(comp.begin(), comp.end(),
                         [](double a, double b) { return std::abs(a) < std::abs(b); }) -
        comp.begin());
    CHECK(comp[arg] > 0.0);
  }
  for (std::size_t i = 0; i + 1 < 5; ++i)
    CHECK(pca.explained_variance[i] >= pca.explained_variance[i + 1]);
}

TEST_CASE("transforming the mean gives the zero vector") {
  Rng rng(57);
  const auto set = random_set(rng, 20, 6);
  const auto pca = pca_fit(set, 3);
  EmbeddingSet mean_point;
  mean_point.n = 1;
  mean_point.dim = 6;
  mean_point.ids = {"mean"};
  mean_point.matrix = pca.mean;
  const auto projected = pca_transform(pca, mean_point);
  for (double x : projected) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("projected column variances equal explained variance") {
  Rng rng(58);
  const auto set = random_set(rng, 40, 7);
  const auto pca = pca_fit(set, 4);
  const auto projected = pca_transform(pca, set);
  for (std::size_t c = 0; c < 4; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < set.n; ++i) mean += projected[i * 4 + c];
    mean /= static_cast<double>(set.n);
    double var = 0.0;
    for (std::size_t i = 0; i < set.n; ++i) {
      const double d = projected[i * 4 + c] - mean;
      var += d * d;
    }
    var /= static_cast<double>(set.n - 1);
    CHECK(std::abs(var - pca.explained_variance[c]) < 1e-8);
  }
}

TEST_CASE("a full basis preserves pairwise distances") {
  Rng rng(59);
  const auto set = random_set(rng, 12, 5);
  const auto pca = pca_fit(set, 5);
  const auto projected = pca_transform(pca, set);
  for (std::size_t i = 0; i < set.n; ++i)
    for (std::size_t j = i + 1; j < set.n; ++j) {
      double orig = 0.0, proj = 0.0;
      for (std::size_t x = 0; x < 5; ++x) {
        const double d1 = set.matrix[i * 5 + x] - set.matrix[j * 5 + x];
        const double d2 = projected[i * 5 + x] - projected[j * 5 + x];
        orig += d1 * d1;
        proj += d2 * d2;
      }
      CHECK(std::abs(std::sqrt(orig) - std::sqrt(proj)) < 1e-8);
    }
}

TEST_CASE("zero-variance data yields zero eigenvalues and zero ratios") {
  const auto set = make_set(3, {1, 2, 3, 1, 2, 3, 1, 2, 3});
  const auto pca = pca_fit(set, 2);
  CHECK(pca.explained_variance[0] == 0.0);
  CHECK(pca.explained_variance_ratio[0] == 0.0);
}

TEST_CASE("pca preconditions") {
  const auto one_point = make_set(2, {1, 2});
  CHECK_THROWS_AS(pca_fit(one_point, 1), DataError);
  const auto two_points = make_set(2, {1, 2, 3, 4});
  CHECK_THROWS_AS(pca_fit(two_points, 2), std::invalid_argument);  // > n-1
  Rng rng(60);
  const auto good = random_set(rng, 8, 3);
  const auto pca = pca_fit(good, 2);
  const auto other_dim = make_set(4, {1, 2, 3, 4});
  CHECK_THROWS_AS(pca_transform(pca, other_dim), DataError);
}

TEST_CASE("silhouette on the hand-computed far-pair instance") {
  const auto set = make_set(1, {0.0, 0.1, 10.0, 10.1},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK(silhouette_score(set) ==
        doctest::Approx(kFarPairSilhouette).epsilon(1e-12));
  CHECK(kFarPairSilhouette == doctest::Approx(0.98999975).epsilon(1e-7));
}

TEST_CASE("silhouette of two coincident clusters is exactly 0") {
  const auto set = make_set(2, {1, 1, 1, 1, 1, 1, 1, 1},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK(silhouette_score(set) == 0.0);
}

TEST_CASE("silhouette is always within [-1, 1]") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + rng.below(40);
    auto set = random_set(rng, n, 3);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
      labels.push_back("c" + std::to_string(rng.below(3)));
    labels[0] = "c0";
    labels[1] = "c1";  // guarantee 2 classes
    set.labels = labels;
    const double s = silhouette_score(set);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("singleton clusters contribute zero") {
  const auto set = make_set(1, {0.0, 0.2, 50.0},
                            std::vector<std::string>{"A", "A", "B"});
  // Hand evaluation: the singleton contributes 0; point 0: a=0.2,
  // b=50 -> 0.996; point 0.2: a=0.2, b=49.8 -> (49.8-0.2)/49.8.
  const double expected = ((50.0 - 0.2) / 50.0 + (49.8 - 0.2) / 49.8 + 0.0) / 3.0;
  CHECK(silhouette_score(set) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("single class is an undefined-metric error") {
  const auto set = make_set(1, {0.0, 1.0}, std::vector<std::string>{"A", "A"});
  CHECK_THROWS_AS(silhouette_score(set), DataError);
  CHECK_THROWS_AS(calinski_harabasz(set), DataError);
  CHECK_THROWS_AS(davies_bouldin(set), DataError);
  auto unlabeled = make_set(1, {0.0, 1.0});
  CHECK_THROWS_AS(silhouette_score(unlabeled), DataError);
}

TEST_CASE("calinski-harabasz on the hand-computed instance equals 50") {
  const auto set = make_set(1, {0, 2, 10, 12},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK(calinski_harabasz(set) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("identical point sets in both clusters give CH 0") {
  const auto set = make_set(1, {0, 2, 0, 2},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK(calinski_harabasz(set) == 0.0);
}

TEST_CASE("perfectly collapsed distinct clusters are an infinity signal") {
  const auto set = make_set(1, {0, 0, 5, 5},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK_THROWS_AS(calinski_harabasz(set), DataError);
}

TEST_CASE("davies-bouldin on the hand-computed instance equals 0.2") {
  const auto set = make_set(1, {0, 2, 10, 12},
                            std::vector<std::string>{"A", "A", "B", "B"});
  CHECK(davies_bouldin(set) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("davies-bouldin is scale invariant") {
  Rng rng(62);
  auto set = random_set(rng, 24, 4);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < set.n; ++i)
    labels.push_back("c" + std::to_string(i % 3));
  set.labels = labels;
  const double base = davies_bouldin(set);
  auto scaled = set;
  for (double& x : scaled.matrix) x *= 7.5;
  CHECK(std::abs(davies_bouldin(scaled) - base) < 1e-9);
}

TEST_CASE("coincident centroids are a division error naming the pair") {
  const auto set = make_set(1, {0, 2, 1, 1},
                            std::vector<std::string>{"A", "A", "B", "B"});
  try {
    davies_bouldin(set);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("A") != std::string::npos);
    CHECK(what.find("B") != std::string::npos);
  }
}

TEST_CASE("metrics are invariant under row/label permutation and translation") {
  Rng rng(63);
  auto set = random_set(rng, 30, 5);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < set.n; ++i)
    labels.push_back("c" + std::to_string(i % 4));
  set.labels = labels;

  const double s0 = silhouette_score(set);
  const double ch0 = calinski_harabasz(set);
  const double db0 = davies_bouldin(set);
  CHECK(ch0 >= 0.0);
  CHECK(db0 >= 0.0);

  // Permute rows and labels together.
  std::vector<std::size_t> perm(set.n);
  for (std::size_t i = 0; i < set.n; ++i) perm[i] = i;
  for (std::size_t i = set.n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(i + 1)]);
  EmbeddingSet permuted = set;
  for (std::size_t i = 0; i < set.n; ++i) {
    for (std::size_t j = 0; j < set.dim; ++j)
      permuted.matrix[i * set.dim + j] = set.matrix[perm[i] * set.dim + j];
    (*permuted.labels)[i] = (*set.labels)[perm[i]];
  }
  CHECK(silhouette_score(permuted) == doctest::Approx(s0).epsilon(1e-12));
  CHECK(calinski_harabasz(permuted) == doctest::Approx(ch0).epsilon(1e-12));
  CHECK(davies_bouldin(permuted) == doctest::Approx(db0).epsilon(1e-12));

  // Translate every point by the same vector.
  EmbeddingSet shifted = set;
  for (std::size_t i = 0; i < set.n; ++i)
    for (std::size_t j = 0; j < set.dim; ++j)
      shifted.matrix[i * set.dim + j] += 3.25 * static_cast<double>(j + 1);
  CHECK(std::abs(silhouette_score(shifted) - s0) < 1e-9);
  CHECK(std::abs(calinski_harabasz(shifted) - ch0) < 1e-9);
  CHECK(std::abs(davies_bouldin(shifted) - db0) < 1e-9);
}

TEST_CASE("projection TSV has one row per point with id, label, and pcs") {
  auto set = make_set(2, {0, 0, 1, 1, 2, 2, 3, 3},
                      std::vector<std::string>{"x", "x", "y", "y"});
  const auto pca = pca_fit(set, 2);
  const auto projected = pca_transform(pca, set);
  std::ostringstream out;
  write_projection_tsv(set, projected, 2, out);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 3);  // id, label, pc1, pc2
  }
  CHECK(rows == 4);
}

TEST_CASE("cluster report text and JSON contain the three keys") {
  ClusterReport report{0.5, 123.25, 0.75};
  std::ostringstream text, json;
  write_cluster_report_text(report, text);
  write_cluster_report_json(report, json);
  for (const auto* key : {"silhouette", "calinski_harabasz", "davies_bouldin"}) {
    CHECK(text.str().find(key) != std::string::npos);
    CHECK(json.str().find(key) != std::string::npos);
  }
  CHECK(json.str().find("123.25") != std::string::npos);
}

}  // TEST_SUITE
