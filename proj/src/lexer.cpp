#include "lexer.hpp"

#include <cctype>

namespace qstr::detail {

namespace {

bool is_punct(char c) { return c == '(' || c == ')' || c == '{' || c == '}'; }

} // namespace

std::vector<Line> tokenize(std::string_view text, const std::string &source) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '#') {
        break;
      } else if (is_punct(c)) {
        line.tokens.push_back({std::string(1, c), i + 1});
        ++i;
      } else if (c == '"') {
        const std::size_t close = raw.find('"', i + 1);
        if (close == std::string_view::npos)
          throw ParseError(source, number, i + 1, "unterminated string");
        line.tokens.push_back(
            {std::string(raw.substr(i + 1, close - i - 1)), i + 1, true});
        i = close + 1;
      } else {
        const std::size_t start = i;
        while (i < raw.size() &&
               !std::isspace(static_cast<unsigned char>(raw[i])) &&
               raw[i] != '#' && !is_punct(raw[i]) && raw[i] != '"')
          ++i;
        line.tokens.push_back({std::string(raw.substr(start, i - start)),
                               start + 1});
      }
    }
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
    if (end == text.size())
      break;
    pos = end + 1;
  }
  return lines;
}

} // namespace qstr::detail
