#ifndef QSTR_EMBEDDED_HPP
#define QSTR_EMBEDDED_HPP

#include <string_view>
#include <utility>
#include <vector>

namespace qstr::detail {

// (name, definition text) of every calculus file under data/calculi.
const std::vector<std::pair<std::string_view, std::string_view>> &
embedded_calculi();

} // namespace qstr::detail

#endif
