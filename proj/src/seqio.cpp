#include "seq2vec/seqio.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "seq2vec/errors.hpp"

namespace seq2vec {

namespace {

bool is_valid_base(char c) {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T';
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::pair<std::vector<SequenceRecord>, ParseReport> parse_fasta(
    std::istream& in, const FastaOptions& options) {
  std::vector<SequenceRecord> records;
  ParseReport report;
  std::unordered_set<std::string> seen_ids;

  std::string id, description, residues;
  bool in_record = false;

  auto finish_record = [&]() {
    if (!in_record) return;
    std::uint64_t u_subs = 0;
    bool valid = !residues.empty();
    for (char& c : residues) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (options.normalize_u && c == 'U') {
        c = 'T';
        ++u_subs;
      }
      if (!is_valid_base(c)) valid = false;
    }
    report.n_normalized_u += u_subs;
    if (valid) {
      records.push_back({std::move(id), std::move(description), std::move(residues)});
      ++report.n_records_kept;
    } else {
      ++report.n_records_dropped;
      report.dropped_ids.push_back(std::move(id));
    }
    id.clear();
    description.clear();
    residues.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!line.empty() && line[0] == '>') {
      finish_record();
      std::size_t pos = 1;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      id = line.substr(1, pos - 1);
      if (id.empty()) throw ParseError("empty header id", line_no);
      if (!seen_ids.insert(id).second)
        throw ParseError("duplicate sequence id '" + id + "'", line_no);
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      description = line.substr(pos);
      in_record = true;
    } else {
      // Trim surrounding whitespace; a fully blank line separates records.
      std::size_t b = 0, e = line.size();
      while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
      while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
      if (b == e) continue;
      if (!in_record)
        throw ParseError("sequence data before any header", line_no);
      residues.append(line, b, e - b);
    }
  }
  finish_record();
  return {std::move(records), std::move(report)};
}

std::pair<std::vector<SequenceRecord>, ParseReport> parse_fasta_file(
    const std::string& path, const FastaOptions& options) {
  if (path == "-") return parse_fasta(std::cin, options);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FASTA file '" + path + "'");
  return parse_fasta(in, options);
}

void write_fasta(const std::vector<SequenceRecord>& records, std::ostream& out,
                 std::size_t line_width) {
  if (line_width == 0) line_width = 70;
  for (const auto& rec : records) {
    out << '>' << rec.id;
    if (!rec.description.empty()) out << ' ' << rec.description;
    out << '\n';
    for (std::size_t i = 0; i < rec.residues.size(); i += line_width) {
      out.write(rec.residues.data() + i,
                static_cast<std::streamsize>(
                    std::min(line_width, rec.residues.size() - i)));
      out << '\n';
    }
  }
}

void write_fasta_file(const std::vector<SequenceRecord>& records,
                      const std::string& path, std::size_t line_width) {
  if (path == "-") {
    write_fasta(records, std::cout, line_width);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_fasta(records, out, line_width);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace seq2vec
