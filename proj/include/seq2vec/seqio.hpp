#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace seq2vec {

// One validated FASTA entry. residues is uppercase over {A,C,G,T}.
struct SequenceRecord {
  std::string id;           // header token up to the first whitespace
  std::string description;  // remainder of the header, possibly empty
  std::string residues;

  bool operator==(const SequenceRecord&) const = default;
};

struct ParseReport {
  std::uint64_t n_records_kept = 0;
  std::uint64_t n_records_dropped = 0;
  std::vector<std::string> dropped_ids;
  std::uint64_t n_normalized_u = 0;  // U/u -> T substitutions performed
};

struct FastaOptions {
  // RNA exports commonly use U; the working alphabet is A,C,G,T.
  bool normalize_u = true;
};

// Streaming FASTA parse. Wrapped sequence lines are concatenated, residues
// uppercased, and (by default) U mapped to T before validation. Records with
// residues outside {A,C,G,T} after normalization are dropped and listed in
// the report. Structural problems -- sequence data before any header, an
// empty header id, a duplicate id -- are ParseErrors naming the line.
std::pair<std::vector<SequenceRecord>, ParseReport> parse_fasta(
    std::istream& in, const FastaOptions& options = {});

// Opens path ("-" means standard input) and parses it.
std::pair<std::vector<SequenceRecord>, ParseReport> parse_fasta_file(
    const std::string& path, const FastaOptions& options = {});

void write_fasta(const std::vector<SequenceRecord>& records, std::ostream& out,
                 std::size_t line_width = 70);

// "-" means standard output.
void write_fasta_file(const std::vector<SequenceRecord>& records,
                      const std::string& path, std::size_t line_width = 70);

}  // namespace seq2vec
