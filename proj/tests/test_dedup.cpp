#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "seq2vec/dedup.hpp"
#include "seq2vec/errors.hpp"
#include "seq2vec/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace seq2vec;

namespace {

SequenceRecord rec(std::string id, std::string residues) {
  return {std::move(id), "", std::move(residues)};
}

// Random corpus with planted near-duplicates, for transparency and property
// tests.
std::vector<SequenceRecord> random_corpus(Rng& rng, std::size_t n,
                                          std::size_t max_len) {
  std::vector<SequenceRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    std::string residues;
    if (!records.empty() && rng.uniform() < 0.4) {
      const auto& base = records[rng.below(records.size())].residues;
      residues = synth::mutate(rng, base, 0.05 + 0.25 * rng.uniform());
    } else {
      residues = synth::random_dna(rng, 10 + rng.below(max_len - 9));
    }
    records.push_back(rec("s" + std::to_string(i), std::move(residues)));
  }
  return records;
}

bool same_clustering(const std::vector<ClusterAssignment>& a,
                     const std::vector<ClusterAssignment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].representative_id != b[i].representative_id) return false;
    if (a[i].member_ids != b[i].member_ids) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("dedup") {

TEST_CASE("identity of identical and disjoint sequences") {
  CHECK(pairwise_identity(rec("a", "ACGT"), rec("b", "ACGT")) == 1.0);
  CHECK(pairwise_identity(rec("a", "AAAA"), rec("b", "CCCC")) == 0.0);
}

TEST_CASE("identity AAAA vs AATA is 0.75 (exhaustive alignment oracle)") {
  CHECK(oracle::lcs_exhaustive("AAAA", "AATA") == 3);
  CHECK(pairwise_identity(rec("a", "AAAA"), rec("b", "AATA")) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("identity equals the memoized LCS oracle on random pairs") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = rec("a", synth::random_dna(rng, 1 + rng.below(120)));
    const auto b = rec("b", rng.uniform() < 0.5
                                ? synth::mutate(rng, a.residues, 0.2)
                                : synth::random_dna(rng, 1 + rng.below(120)));
    const double expected = oracle::identity_oracle(a.residues, b.residues);
    CHECK(pairwise_identity(a, b) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(pairwise_identity(a, b) == pairwise_identity(b, a));
  }
}

TEST_CASE("identity agrees with the exhaustive oracle on tiny strings") {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = rec("a", synth::random_dna(rng, 1 + rng.below(8)));
    const auto b = rec("b", synth::random_dna(rng, 1 + rng.below(8)));
    const double expected =
        static_cast<double>(oracle::lcs_exhaustive(a.residues, b.residues)) /
        static_cast<double>(std::min(a.residues.size(), b.residues.size()));
    CHECK(pairwise_identity(a, b) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("empty sequences are rejected") {
  CHECK_THROWS_AS(pairwise_identity(rec("a", ""), rec("b", "ACGT")),
                  std::invalid_argument);
}

TEST_CASE("duplicates collapse to one cluster") {
  std::vector<SequenceRecord> records;
  for (int i = 0; i < 10; ++i)
    records.push_back(rec("dup" + std::to_string(i), "ACGTACGTACGTACGT"));
  const auto clusters = greedy_cluster(records);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].member_ids.size() == 10);
  CHECK(clusters[0].representative_id == "dup0");  // tie broken by id
}

TEST_CASE("planted pair above the threshold merges, below does not") {
  // Block construction pins the LCS exactly: only the shared prefix aligns.
  const auto hi_a = rec("hi_a", std::string(80, 'A') + std::string(20, 'C'));
  const auto hi_b = rec("hi_b", std::string(80, 'A') + std::string(20, 'G'));
  CHECK(oracle::identity_oracle(hi_a.residues, hi_b.residues) ==
        doctest::Approx(0.80).epsilon(1e-15));
  const auto merged = greedy_cluster({hi_a, hi_b});
  CHECK(merged.size() == 1);

  const auto lo_a = rec("lo_a", std::string(60, 'A') + std::string(40, 'C'));
  const auto lo_b = rec("lo_b", std::string(60, 'A') + std::string(40, 'G'));
  CHECK(oracle::identity_oracle(lo_a.residues, lo_b.residues) ==
        doctest::Approx(0.60).epsilon(1e-15));
  const auto separate = greedy_cluster({lo_a, lo_b});
  CHECK(separate.size() == 2);
}

TEST_CASE("threshold comparison is strict: exactly 0.75 founds a new cluster") {
  const auto a = rec("a", std::string(75, 'A') + std::string(25, 'C'));
  const auto b = rec("b", std::string(75, 'A') + std::string(25, 'G'));
  CHECK(oracle::identity_oracle(a.residues, b.residues) ==
        doctest::Approx(0.75).epsilon(1e-15));
  CHECK(greedy_cluster({a, b}).size() == 2);
}

TEST_CASE("empty input gives empty output") {
  CHECK(greedy_cluster({}).empty());
}

TEST_CASE("partition, dominance, and idempotence properties") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto records = random_corpus(rng, 40 + rng.below(40), 80);
    const auto clusters = greedy_cluster(records);

    std::set<std::string> seen;
    std::size_t member_total = 0;
    for (const auto& cluster : clusters) {
      std::size_t rep_len = 0;
      for (const auto& r : records)
        if (r.id == cluster.representative_id) rep_len = r.residues.size();
      for (const auto& id : cluster.member_ids) {
        CHECK(seen.insert(id).second);  // disjoint
        ++member_total;
        for (const auto& r : records)
          if (r.id == id) CHECK(r.residues.size() <= rep_len);  // dominance
      }
    }
    CHECK(member_total == records.size());  // coverage

    // Idempotence: clustering the representatives yields singletons.
    const auto reps = representatives(clusters, records);
    const auto again = greedy_cluster(reps);
    CHECK(again.size() == reps.size());
    for (const auto& cluster : again) CHECK(cluster.member_ids.size() == 1);
  }
}

TEST_CASE("prefilter does not change clusters (randomized, up to 500 records)") {
  Rng rng(41);
  DedupConfig with, without;
  without.prefilter_enabled = false;
  for (int trial = 0; trial < 8; ++trial) {
    const auto records = random_corpus(rng, 30 + rng.below(50), 100);
    CHECK(same_clustering(greedy_cluster(records, with),
                          greedy_cluster(records, without)));
  }
  const auto big = random_corpus(rng, 500, 60);
  CHECK(same_clustering(greedy_cluster(big, with), greedy_cluster(big, without)));
}

TEST_CASE("representatives come back in cluster-creation order") {
  const auto records = std::vector<SequenceRecord>{
      rec("short", "ACGTACGT"),
      rec("long", std::string(50, 'A') + std::string(50, 'C')),
      rec("mid", "TTTTGGGGTTTTGGGGTTTT"),
  };
  const auto clusters = greedy_cluster(records);
  REQUIRE(clusters.size() == 3);
  const auto reps = representatives(clusters, records);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].id == "long");   // 100 bases
  CHECK(reps[1].id == "mid");    // 20 bases
  CHECK(reps[2].id == "short");  // 8 bases
}

TEST_CASE("unknown representative id is an internal-consistency error") {
  ClusterAssignment bogus{"ghost", {"ghost"}};
  CHECK_THROWS_AS(representatives({bogus}, {rec("a", "ACGT")}), DataError);
}

TEST_CASE("cluster map TSV") {
  const auto clusters = greedy_cluster({rec("a", "ACGTACGTAC"),
                                        rec("b", "ACGTACGTAC"),
                                        rec("c", "GGGGGGGGGG")});
  std::ostringstream out;
  write_cluster_map(clusters, out);
  CHECK(out.str() == "a\ta,b\nc\tc\n");
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(greedy_cluster({rec("a", "ACGT")}, DedupConfig{.identity_threshold = 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(greedy_cluster({rec("a", "ACGT")}, DedupConfig{.identity_threshold = 1.5}),
                  std::invalid_argument);
}

}  // TEST_SUITE
