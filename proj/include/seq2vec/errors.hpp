#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seq2vec {

// Base class for all recoverable errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Syntactically valid but unusable data: wrong shapes, missing labels,
// degenerate class sets, sequences with no k-mer coverage, and so on.
class DataError : public Error {
 public:
  using Error::Error;
};

// A sequence too short to produce a single k-mer.
class TooShortError : public DataError {
 public:
  TooShortError(const std::string& id, std::size_t length, int k)
      : DataError("sequence '" + id + "' of length " + std::to_string(length) +
                  " is shorter than k=" + std::to_string(k)),
        id_(id),
        length_(length),
        k_(k) {}

  const std::string& id() const noexcept { return id_; }
  std::size_t length() const noexcept { return length_; }
  int k() const noexcept { return k_; }

 private:
  std::string id_;
  std::size_t length_;
  int k_;
};

// Non-finite values showed up where finite math was required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Filesystem or file-format failure: unopenable path, bad magic, truncation.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace seq2vec
