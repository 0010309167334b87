#ifndef QSTR_CALCULI_HPP
#define QSTR_CALCULI_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qstr/algebra.hpp"

namespace qstr {

using CalculusPtr = std::shared_ptr<const Calculus>;

// Built-in calculi: "pa", "ia", "rcc8". Each call for the same name returns
// the same shared instance, so relations from separate calls interoperate.
// Throws InvalidArgument for an unknown name.
CalculusPtr builtin(std::string_view name);
std::vector<std::string> builtin_names();
// The shipped definition text of a built-in calculus.
std::string_view builtin_source(std::string_view name);

// Calculus definition format:
//
//   calculus <name>
//   domain "<free text>"
//   relations <r1> ... <rk>
//   identity <ri>
//   converse <r> <rconv>            one per base relation
//   compose <r1> <r2> = ( <s> ... ) one per ordered pair
//
// '#' starts a comment. Parsed calculi have atomic_closure_decides = false.
CalculusPtr parse_calculus(std::string_view text,
                           const std::string &source = "<input>");
CalculusPtr load_calculus(const std::filesystem::path &path);
std::string write_calculus(const Calculus &c);

struct Violation {
  enum class Kind {
    converse_not_involution,
    identity_not_self_converse,
    identity_law,
    converse_duality,
  };
  Kind kind;
  std::string message;
};

// Every violated law, with the offending entry. Empty means valid.
std::vector<Violation> validate_calculus(const Calculus &c);

// Interval Algebra composition table derived by enumerating all endpoint
// orderings of three intervals. Indexed [a * 13 + b] in builtin("ia") order.
std::vector<RelationBits> derive_ia_table();

// Base relation between intervals (x_start, x_end) and (y_start, y_end),
// as an index into builtin("ia"). Requires x_start < x_end, y_start < y_end.
std::size_t ia_relation_of(long x_start, long x_end, long y_start, long y_end);

/// OPRA_m relation between two oriented points A and B, written A m∠_i^j B:
/// i is the sector of A's frame in which B lies, j the sector of B's frame in
/// which A lies. Sectors are numbered 0..4m-1. Representation only; OPRA has
/// no composition table here.
struct OpraRelation {
  int granularity = 1;
  int sector_of_b_from_a = 0;
  int sector_of_a_from_b = 0;
  // Coinciding positions: only one sector (the relative orientation) is
  // meaningful; it is kept in both fields.
  bool same_position = false;

  friend bool operator==(const OpraRelation &, const OpraRelation &) = default;
};

// Throws InvalidArgument if granularity < 1 or a sector is out of range.
OpraRelation make_opra(int granularity, int sector_of_b_from_a,
                       int sector_of_a_from_b);
OpraRelation make_opra_same_position(int granularity, int sector);
OpraRelation opra_converse(const OpraRelation &r);
// "4<13^3" for A 4∠13^3 B, "4<5" for a same-position relation.
std::string to_string(const OpraRelation &r);

} // namespace qstr

#endif
