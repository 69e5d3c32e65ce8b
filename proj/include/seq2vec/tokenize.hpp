#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seq2vec {

// Overlapping k-mers of a sequence: token i starts at position i, so a
// length-L sequence yields exactly L-k+1 tokens. id is only used in the
// too-short error message.
std::vector<std::string> kmerize(std::string_view residues, int k,
                                 std::string_view id = {});

// Dense token<->index map with corpus counts. Indices are assigned by
// descending frequency, ties broken by lexicographic token order.
struct KmerVocabulary {
  int k = 0;
  std::vector<std::string> tokens;                        // index -> k-mer
  std::unordered_map<std::string, std::uint32_t> index_of;
  std::vector<std::uint64_t> counts;                      // per-index frequency
  std::uint64_t total_count = 0;

  std::size_t size() const { return tokens.size(); }

  std::optional<std::uint32_t> lookup(std::string_view token) const {
    auto it = index_of.find(std::string(token));
    if (it == index_of.end()) return std::nullopt;
    return it->second;
  }
};

KmerVocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus,
                           std::uint64_t min_count = 1);

// One "token<TAB>count" line per vocabulary index.
void write_vocab_tsv(const KmerVocabulary& vocab, std::ostream& out);

}  // namespace seq2vec
