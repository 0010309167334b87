#ifndef QSTR_ERROR_HPP
#define QSTR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qstr {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed calculus or network text. line/column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(std::string source, std::size_t line, std::size_t column,
             const std::string &message);

  const std::string &source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &detail() const { return detail_; }

private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Binary operation on relations (or networks) from two different calculi.
class CalculusMismatch : public Error {
public:
  using Error::Error;
};

// Bad argument to an engine operation (index out of range, non-atomic
// refinement, duplicate variable, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// An operation required at least one scenario and the network has none.
class NoScenarioError : public Error {
public:
  using Error::Error;
};

// Probabilistic evidence on an edge is incompatible with background knowledge.
class ContradictionError : public Error {
public:
  ContradictionError(std::size_t i, std::size_t j, const std::string &message)
      : Error(message), i_(i), j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

private:
  std::size_t i_;
  std::size_t j_;
};

} // namespace qstr

#endif
