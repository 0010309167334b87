#ifndef QSTR_LEXER_HPP
#define QSTR_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qstr/error.hpp"

namespace qstr::detail {

struct Token {
  std::string text;
  std::size_t column; // 1-based
  bool quoted = false;
};

struct Line {
  std::size_t number; // 1-based
  std::vector<Token> tokens;
};

// Splits text into non-empty lines of whitespace-separated tokens. '#' starts
// a comment outside quotes; ( ) { } are always tokens of their own; "..." is a
// single quoted token.
std::vector<Line> tokenize(std::string_view text, const std::string &source);

} // namespace qstr::detail

#endif
