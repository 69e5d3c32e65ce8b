#include <doctest.h>

#include <sstream>

#include "seq2vec/errors.hpp"
#include "seq2vec/rng.hpp"
#include "seq2vec/seqio.hpp"
#include "support/synthetic.hpp"

using namespace seq2vec;

namespace {

std::pair<std::vector<SequenceRecord>, ParseReport> parse(std::string text,
                                                          FastaOptions opt = {}) {
  std::istringstream in(std::move(text));
  return parse_fasta(in, opt);
}

}  // namespace

TEST_SUITE("seqio") {

TEST_CASE("minimal well-formed input") {
  auto [records, report] = parse(">a desc\nACGT\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "a");
  CHECK(records[0].description == "desc");
  CHECK(records[0].residues == "ACGT");
  CHECK(report.n_records_kept == 1);
  CHECK(report.n_records_dropped == 0);
}

TEST_CASE("wrapped sequence lines concatenate") {
  auto [records, report] = parse(">a\nACG\nTAC\n>b\nGGGG\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].residues == "ACGTAC");
  CHECK(records[1].residues == "GGGG");
  CHECK(report.n_records_kept == 2);
}

TEST_CASE("U normalizes to T and is counted") {
  auto [records, report] = parse(">a\nACGU\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].residues == "ACGT");
  CHECK(report.n_normalized_u == 1);
}

TEST_CASE("U kept and rejected when normalization is off") {
  auto [records, report] = parse(">a\nACGU\n", FastaOptions{.normalize_u = false});
  CHECK(records.empty());
  CHECK(report.n_records_dropped == 1);
  REQUIRE(report.dropped_ids.size() == 1);
  CHECK(report.dropped_ids[0] == "a");
}

TEST_CASE("records with non-ACGT residues are dropped, not fatal") {
  auto [records, report] = parse(">a\nACGN\n");
  CHECK(records.empty());
  CHECK(report.n_records_kept == 0);
  CHECK(report.n_records_dropped == 1);
  REQUIRE(report.dropped_ids == std::vector<std::string>{"a"});
}

TEST_CASE("lowercase residues uppercase") {
  auto [records, report] = parse(">a\nacgt\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].residues == "ACGT");
}

TEST_CASE("CRLF input and blank lines between records") {
  auto [records, report] = parse(">a\r\nAC\r\nGT\r\n\r\n>b\r\nTTTT\r\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].residues == "ACGT");
  CHECK(records[1].residues == "TTTT");
}

TEST_CASE("sequence data before any header is a parse error") {
  CHECK_THROWS_AS(parse("ACGT\n>a\nACGT\n"), ParseError);
  try {
    parse("ACGT\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("empty header id is a parse error") {
  CHECK_THROWS_AS(parse(">\nACGT\n"), ParseError);
  CHECK_THROWS_AS(parse("> nameless\nACGT\n"), ParseError);
}

TEST_CASE("duplicate id is a parse error naming the line") {
  try {
    parse(">a\nACGT\n>a\nTTTT\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("header with no residues is dropped and reported") {
  auto [records, report] = parse(">a\n>b\nACGT\n");
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "b");
  CHECK(report.dropped_ids == std::vector<std::string>{"a"});
}

TEST_CASE("parse order equals file order") {
  auto [records, report] = parse(">z\nAAAA\n>m\nCCCC\n>a\nGGGG\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "z");
  CHECK(records[1].id == "m");
  CHECK(records[2].id == "a");
}

TEST_CASE("round trip: write then reparse gives identical records") {
  Rng rng(7);
  std::vector<SequenceRecord> original;
  for (int i = 0; i < 40; ++i) {
    original.push_back({"seq" + std::to_string(i),
                        i % 3 ? "some description " + std::to_string(i) : "",
                        synth::random_dna(rng, 1 + rng.below(300))});
  }
  std::ostringstream out;
  write_fasta(original, out, 60);
  auto [records, report] = parse(out.str());
  CHECK(report.n_records_dropped == 0);
  REQUIRE(records.size() == original.size());
  for (std::size_t i = 0; i < original.size(); ++i) CHECK(records[i] == original[i]);
}

TEST_CASE("property: random mixed inputs keep only valid alphabet records") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::ostringstream fasta;
    std::size_t total = 0, expect_valid = 0;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      fasta << ">r" << trial << "_" << i << "\n";
      std::string seq = synth::random_dna(rng, 1 + rng.below(50));
      bool valid = true;
      if (rng.uniform() < 0.4) {
        seq[rng.below(seq.size())] = "NRYWSKX"[rng.below(7)];
        valid = false;
      }
      // random line wrapping
      for (std::size_t p = 0; p < seq.size();) {
        const std::size_t w = 1 + rng.below(20);
        fasta << seq.substr(p, w) << "\n";
        p += w;
      }
      ++total;
      expect_valid += valid;
    }
    auto [records, report] = parse(fasta.str());
    CHECK(report.n_records_kept + report.n_records_dropped == total);
    CHECK(records.size() == expect_valid);
    for (const auto& rec : records) {
      CHECK(!rec.residues.empty());
      for (char c : rec.residues)
        CHECK((c == 'A' || c == 'C' || c == 'G' || c == 'T'));
    }
  }
}

}  // TEST_SUITE
