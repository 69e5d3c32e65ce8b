#include "seq2vec/tokenize.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "seq2vec/errors.hpp"

namespace seq2vec {

std::vector<std::string> kmerize(std::string_view residues, int k,
                                 std::string_view id) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (residues.size() < static_cast<std::size_t>(k))
    throw TooShortError(std::string(id), residues.size(), k);
  std::vector<std::string> tokens;
  tokens.reserve(residues.size() - static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= residues.size(); ++i)
    tokens.emplace_back(residues.substr(i, static_cast<std::size_t>(k)));
  return tokens;
}

KmerVocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus,
                           std::uint64_t min_count) {
  if (corpus.empty()) throw DataError("cannot build a vocabulary from an empty corpus");

  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& tokens : corpus)
    for (const auto& token : tokens) ++freq[token];

  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(freq.size());
  for (auto& [token, count] : freq)
    if (count >= min_count) entries.emplace_back(token, count);
  if (entries.empty())
    throw DataError("empty vocabulary: no token reaches min_count=" +
                    std::to_string(min_count));

  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  KmerVocabulary vocab;
  vocab.k = static_cast<int>(entries.front().first.size());
  vocab.tokens.reserve(entries.size());
  vocab.counts.reserve(entries.size());
  for (std::uint32_t i = 0; i < entries.size(); ++i) {
    auto& [token, count] = entries[i];
    if (token.size() != static_cast<std::size_t>(vocab.k))
      throw DataError("inconsistent token lengths in corpus: '" + token + "'");
    vocab.index_of.emplace(token, i);
    vocab.tokens.push_back(std::move(token));
    vocab.counts.push_back(count);
    vocab.total_count += count;
  }
  return vocab;
}

void write_vocab_tsv(const KmerVocabulary& vocab, std::ostream& out) {
  for (std::size_t i = 0; i < vocab.size(); ++i)
    out << vocab.tokens[i] << '\t' << vocab.counts[i] << '\n';
}

}  // namespace seq2vec
