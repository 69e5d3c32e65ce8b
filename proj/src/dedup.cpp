#include "seq2vec/dedup.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "seq2vec/errors.hpp"

namespace seq2vec {

namespace {

// With match=+1, mismatch=0, gap=0 the optimal alignment score is the LCS
// length: matched columns form a common subsequence and vice versa.
std::uint32_t lcs_length(std::string_view a, std::string_view b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::uint32_t> prev(nb + 1, 0), cur(nb + 1, 0);
  for (std::size_t i = 1; i <= na; ++i) {
    const char ca = a[i - 1];
    for (std::size_t j = 1; j <= nb; ++j) {
      if (ca == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[nb];
}

// Threshold-only variant used by the greedy loop. Merging requires
// LCS > threshold * shorter_length; rows where even a perfect remainder
// cannot reach that bound abort early. The early exit never changes the
// decision, only skips work.
bool identity_exceeds(std::string_view a, std::string_view b, double threshold) {
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t na = a.size(), nb = b.size();
  const double needed = threshold * static_cast<double>(na);
  if (static_cast<double>(na) <= needed) return false;
  std::vector<std::uint32_t> prev(nb + 1, 0), cur(nb + 1, 0);
  for (std::size_t i = 1; i <= na; ++i) {
    const char ca = a[i - 1];
    std::uint32_t row_max = 0;
    for (std::size_t j = 1; j <= nb; ++j) {
      std::uint32_t v;
      if (ca == b[j - 1])
        v = prev[j - 1] + 1;
      else
        v = std::max(prev[j], cur[j - 1]);
      cur[j] = v;
      if (v > row_max) row_max = v;
    }
    const double attainable = static_cast<double>(row_max + (na - i));
    if (attainable <= needed) return false;
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[nb]) > needed;
}

struct KmerProfile {
  std::vector<std::uint32_t> gram_counts;  // 4^q entries
  std::array<std::uint32_t, 4> base_counts{};
  std::uint32_t n_grams = 0;
  std::uint32_t length = 0;
};

int base_code(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    default: return 3;  // 'T'; residues are validated upstream
  }
}

KmerProfile make_profile(std::string_view seq, int q) {
  KmerProfile p;
  p.length = static_cast<std::uint32_t>(seq.size());
  p.gram_counts.assign(std::size_t(1) << (2 * q), 0);
  for (char c : seq) ++p.base_counts[static_cast<std::size_t>(base_code(c))];
  if (seq.size() < static_cast<std::size_t>(q)) return p;
  const std::uint32_t mask = static_cast<std::uint32_t>((1u << (2 * q)) - 1);
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    code = ((code << 2) | static_cast<std::uint32_t>(base_code(seq[i]))) & mask;
    if (i + 1 >= static_cast<std::size_t>(q)) {
      ++p.gram_counts[code];
      ++p.n_grams;
    }
  }
  return p;
}

// Decides whether the pair can be skipped without aligning. Two provable
// upper bounds on LCS/shorter_length:
//   composition: matched columns pair equal letters injectively, so
//     LCS <= sum_c min(countA(c), countB(c));
//   q-gram: a single-character indel changes a q-gram profile by at most
//     2q-1 in L1, and indel distance = |A|+|B|-2*LCS, so with
//     D = sum_w |cntA(w)-cntB(w)|:  LCS <= (|A|+|B| - D/(2q)) / 2.
// Skipping additionally requires the shared-gram fraction to sit below the
// configured floor; pairs the bounds cannot rule out are always aligned.
bool prefilter_skips(const KmerProfile& a, const KmerProfile& b, int q,
                     double min_shared_fraction, double threshold) {
  if (a.n_grams == 0 || b.n_grams == 0) return false;
  std::uint64_t shared = 0;
  for (std::size_t w = 0; w < a.gram_counts.size(); ++w)
    shared += std::min(a.gram_counts[w], b.gram_counts[w]);
  const double shared_fraction =
      static_cast<double>(shared) /
      static_cast<double>(std::min(a.n_grams, b.n_grams));
  if (shared_fraction >= min_shared_fraction) return false;

  const std::uint32_t shorter = std::min(a.length, b.length);
  std::uint64_t composition = 0;
  for (int c = 0; c < 4; ++c)
    composition += std::min(a.base_counts[static_cast<std::size_t>(c)],
                            b.base_counts[static_cast<std::size_t>(c)]);
  const double bound_composition =
      static_cast<double>(composition) / static_cast<double>(shorter);

  const double profile_l1 =
      static_cast<double>(a.n_grams) + static_cast<double>(b.n_grams) -
      2.0 * static_cast<double>(shared);
  const double lcs_bound =
      (static_cast<double>(a.length) + static_cast<double>(b.length) -
       profile_l1 / (2.0 * q)) / 2.0;
  const double bound_qgram = lcs_bound / static_cast<double>(shorter);

  return std::min(bound_composition, bound_qgram) <= threshold;
}

}  // namespace

double pairwise_identity(const SequenceRecord& a, const SequenceRecord& b) {
  if (a.residues.empty() || b.residues.empty())
    throw std::invalid_argument("pairwise_identity requires nonempty sequences");
  const std::uint32_t lcs = lcs_length(a.residues, b.residues);
  return static_cast<double>(lcs) /
         static_cast<double>(std::min(a.residues.size(), b.residues.size()));
}

std::vector<ClusterAssignment> greedy_cluster(
    const std::vector<SequenceRecord>& records, const DedupConfig& config) {
  if (config.identity_threshold <= 0.0 || config.identity_threshold > 1.0)
    throw std::invalid_argument("identity_threshold must be in (0, 1]");
  // Profiles cost 4^q counters per representative.
  if (config.prefilter_kmer < 1 || config.prefilter_kmer > 8)
    throw std::invalid_argument("prefilter_kmer must be in [1, 8]");

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (records[x].residues.size() != records[y].residues.size())
      return records[x].residues.size() > records[y].residues.size();
    return records[x].id < records[y].id;
  });

  struct Cluster {
    std::size_t rep_index;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  std::vector<KmerProfile> rep_profiles;
  const int q = config.prefilter_kmer;

  for (std::size_t idx : order) {
    const auto& candidate = records[idx];
    KmerProfile candidate_profile;
    if (config.prefilter_enabled)
      candidate_profile = make_profile(candidate.residues, q);

    bool placed = false;
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      const auto& rep = records[clusters[ci].rep_index];
      if (config.prefilter_enabled &&
          prefilter_skips(rep_profiles[ci], candidate_profile, q,
                          config.prefilter_min_shared_fraction,
                          config.identity_threshold))
        continue;
      if (identity_exceeds(rep.residues, candidate.residues,
                           config.identity_threshold)) {
        clusters[ci].members.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({idx, {idx}});
      if (config.prefilter_enabled)
        rep_profiles.push_back(std::move(candidate_profile));
    }
  }

  std::vector<ClusterAssignment> result;
  result.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    ClusterAssignment assignment;
    assignment.representative_id = records[cluster.rep_index].id;
    assignment.member_ids.reserve(cluster.members.size());
    for (std::size_t m : cluster.members)
      assignment.member_ids.push_back(records[m].id);
    result.push_back(std::move(assignment));
  }
  return result;
}

std::vector<SequenceRecord> representatives(
    const std::vector<ClusterAssignment>& clusters,
    const std::vector<SequenceRecord>& records) {
  std::unordered_map<std::string_view, const SequenceRecord*> by_id;
  by_id.reserve(records.size());
  for (const auto& rec : records) by_id.emplace(rec.id, &rec);

  std::vector<SequenceRecord> reps;
  reps.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    auto it = by_id.find(cluster.representative_id);
    if (it == by_id.end())
      throw DataError("cluster representative '" + cluster.representative_id +
                      "' not found among records");
    reps.push_back(*it->second);
  }
  return reps;
}

void write_cluster_map(const std::vector<ClusterAssignment>& clusters,
                       std::ostream& out) {
  for (const auto& cluster : clusters) {
    out << cluster.representative_id << '\t';
    for (std::size_t i = 0; i < cluster.member_ids.size(); ++i) {
      if (i) out << ',';
      out << cluster.member_ids[i];
    }
    out << '\n';
  }
}

}  // namespace seq2vec
