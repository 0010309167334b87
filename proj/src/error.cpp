#include "qstr/error.hpp"

namespace qstr {

namespace {

std::string format_location(const std::string &source, std::size_t line,
                            std::size_t column, const std::string &message) {
  std::string out = source.empty() ? std::string("<input>") : source;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (column > 0)
      out += ":" + std::to_string(column);
  }
  return out + ": " + message;
}

} // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column,
                       const std::string &message)
    : Error(format_location(source, line, column, message)),
      source_(std::move(source)), line_(line), column_(column),
      detail_(message) {}

} // namespace qstr
