#ifndef QSTR_SOLVER_HPP
#define QSTR_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "qstr/qcn.hpp"

namespace qstr {

struct ClosureResult {
  Qcn closed_network;
  bool consistent;
  // Number of times a constraint strictly shrank.
  std::size_t revisions;
};

/// Algebraic closure: the greatest fixpoint of
///   C(i,j) <- C(i,j) ∩ (C(i,k) ⋄ C(k,j))
/// over all ordered triples, computed with a queue of revised pairs.
/// Stops as soon as a constraint becomes empty (consistent = false).
ClosureResult a_closure(const Qcn &q);

// True iff q is atomic and every triple satisfies C(i,j) ⊆ C(i,k) ⋄ C(k,j).
bool is_closed_scenario(const Qcn &q);

/// A closure-consistent atomic refinement of q, found by depth-first search:
/// branch on the non-atomic pair with the fewest base relations (lowest (i,j)
/// on ties), trying base relations in declaration order and pruning with
/// closure. For calculi whose atomic_closure_decides flag is false the result
/// is only known to be closure-consistent.
std::optional<Qcn> solve(const Qcn &q);

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

// Visits scenarios in the same order solve() would find them. The visitor
// returns false to stop. Returns the number of scenarios visited.
std::size_t for_each_scenario(const Qcn &q,
                              const std::function<bool(const Qcn &)> &visit);

// All scenarios (up to limit), duplicate-free, in search order. With jobs > 1
// the first branching level is split across threads; output order is the
// same as with one job.
std::vector<Qcn> enumerate_scenarios(const Qcn &q, std::size_t limit = unlimited,
                                     unsigned jobs = 1);

} // namespace qstr

#endif
