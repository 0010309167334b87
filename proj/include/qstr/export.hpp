#ifndef QSTR_EXPORT_HPP
#define QSTR_EXPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qstr/distribution.hpp"

namespace qstr {

// Text output, one atom (or '%' comment) per line. Only facts are emitted;
// integrity constraints and choice rules are left to the consuming program.
struct AtomDocument {
  std::vector<std::string> lines;

  std::string text() const;
};

// Lower-case ASP constant for a name: letters are lower-cased, digits and '_'
// kept, '<' '=' '>' become lt/eq/gt, any other byte becomes x<hex>. A
// leading digit or '_' gets an "n" prefix.
std::string asp_identifier(std::string_view name);

// asp_identifier over a list of names, made injective by appending '_' to
// later names that collide with an earlier one.
std::vector<std::string> asp_identifiers(const std::vector<std::string> &names);

// nn(region(1, V), [labels by descending confidence]). per labelled variable,
// nn(network(M, Name), [true, false]). with M the number of constrained
// pairs, and one comment per edge distribution.
AtomDocument to_neurasp_atoms(const ProbabilisticQcn &pq);

// var/1 per variable, possible/3 per base relation of every ordered pair,
// converse/2 per base relation, and one line of composition/3 facts per
// ordered pair of base relations.
AtomDocument to_asp_facts(const Qcn &q);

} // namespace qstr

#endif
