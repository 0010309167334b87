#ifndef QSTR_PROBABILISTIC_HPP
#define QSTR_PROBABILISTIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "qstr/distribution.hpp"

namespace qstr {

struct EdgeScore {
  std::size_t i; // i < j
  std::size_t j;
  std::size_t relation; // base relation chosen on (i,j)
  double probability;
};

struct RobustnessReport {
  Qcn refinement;
  std::vector<EdgeScore> per_edge_probability; // all pairs i < j, ascending
  double robustness;
  bool satisfiable;
  std::vector<std::string> warnings;
};

// p_ij(b) = (#scenarios with b on (i,j)) / (#scenarios), for every pair.
// The exact counts are attached to the result. Throws NoScenarioError when q
// has no scenario.
ProbabilisticQcn edge_probabilities_from_scenarios(const Qcn &q);

/// Mean over the n(n-1)/2 unordered pairs of the probability of the base
/// relation the refinement picks on that pair. A pair without a distribution
/// contributes 0 and adds a warning. With a single variable there are no
/// pairs and the robustness is 1. satisfiable reports whether the refinement
/// survives closure.
///
/// Throws InvalidArgument if the refinement is not atomic, or its variables
/// differ from the distribution's (matched by position).
RobustnessReport robustness(const EdgeProbabilities &dist,
                            const Qcn &refinement);

/// The scenario of q with the highest robustness under dist, by branch and
/// bound over the solve() search tree. A subtree is cut when
///   (Σ fixed-pair p + Σ unfixed-pair max p over remaining relations) / |pairs|
/// cannot beat the incumbent by more than 1e-12, so among equally robust
/// scenarios the first in search order wins. nullopt iff q has no scenario.
std::optional<RobustnessReport> max_robust_scenario(const Qcn &q,
                                                    const EdgeProbabilities &dist);

/// Prunes each edge distribution of pq to the base relations that occur on
/// that edge in some scenario of pq.qcn ∩ background, renormalizes the
/// survivors proportionally and tightens the constraints to the new supports
/// (edges without a distribution are tightened to their consistent support).
///
/// Throws NoScenarioError if pq.qcn ∩ background has no scenario and
/// ContradictionError naming the first edge whose evidence keeps no
/// consistent relation.
ProbabilisticQcn rectify(const ProbabilisticQcn &pq, const Qcn &background);

} // namespace qstr

#endif
