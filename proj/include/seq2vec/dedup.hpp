#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seq2vec/seqio.hpp"

namespace seq2vec {

struct DedupConfig {
  // A candidate joins a cluster only when identity with the representative
  // is strictly greater than this.
  double identity_threshold = 0.75;
  int prefilter_kmer = 5;
  double prefilter_min_shared_fraction = 0.5;
  bool prefilter_enabled = true;
};

struct ClusterAssignment {
  std::string representative_id;
  std::vector<std::string> member_ids;  // representative first, then joiners
};

// Fraction of matched columns in an optimal global alignment scored
// match=+1, mismatch=0, gap=0 (i.e. the longest common subsequence),
// normalized by the shorter sequence length. Symmetric, in [0,1].
double pairwise_identity(const SequenceRecord& a, const SequenceRecord& b);

// Longest-first greedy clustering: each record joins the first existing
// cluster whose representative exceeds the identity threshold, else founds
// its own. The k-mer prefilter only skips comparisons it can prove are at
// or below the threshold, so the clustering is identical with it disabled.
std::vector<ClusterAssignment> greedy_cluster(
    const std::vector<SequenceRecord>& records, const DedupConfig& config = {});

// One record per cluster (its representative), in cluster-creation order.
std::vector<SequenceRecord> representatives(
    const std::vector<ClusterAssignment>& clusters,
    const std::vector<SequenceRecord>& records);

// "representative_id<TAB>member1,member2,..." per cluster.
void write_cluster_map(const std::vector<ClusterAssignment>& clusters,
                       std::ostream& out);

}  // namespace seq2vec
