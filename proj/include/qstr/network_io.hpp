#ifndef QSTR_NETWORK_IO_HPP
#define QSTR_NETWORK_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qstr/distribution.hpp"

namespace qstr {

// Maps the calculus name in a network header to a calculus. Lookup order:
// the override if set, a built-in, <search_dir>/<name>.cal, then
// <base_dir>/<name>.cal.
struct CalculusResolver {
  CalculusPtr override_calculus;
  std::optional<std::filesystem::path> search_dir;
  std::optional<std::filesystem::path> base_dir;

  // nullptr when nothing matches.
  CalculusPtr resolve(const std::string &name) const;
};

// Network file format:
//
//   network <name> calculus <calcname>
//   vars <v1> ... <vn>
//   <vi> <vj> ( <r1> ... )             constraint; repeated lines intersect
//   prob <vi> <vj> { <r>:<p> ... }     optional relation distribution
//   label <vi> { <name>:<p> ... }      optional label confidences
//
// '#' starts a comment and unlisted pairs are universal. Throws ParseError
// with line and column on any malformed input.
ProbabilisticQcn parse_network(std::string_view text,
                               const CalculusResolver &resolver = {},
                               const std::string &source = "<input>");
ProbabilisticQcn load_network(const std::filesystem::path &path,
                              CalculusResolver resolver = {});

// Normalized text: constraints for non-universal pairs with i < j, relations
// in calculus order, probabilities in shortest round-trip form. Zero
// probabilities are omitted.
std::string write_network(const ProbabilisticQcn &pq);
std::string write_network(const Qcn &q);

// Graphviz digraph with one edge per constrained unordered pair (i < j),
// labelled "r1|r2". Universal pairs are omitted.
std::string to_dot(const Qcn &q);

// Shortest decimal text that reads back as the same double.
std::string format_probability(double p);

} // namespace qstr

#endif
