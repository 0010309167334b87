#ifndef QSTR_DISTRIBUTION_HPP
#define QSTR_DISTRIBUTION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstr/qcn.hpp"

namespace qstr {

inline constexpr double probability_tolerance = 1e-9;

using Edge = std::pair<std::size_t, std::size_t>;

/// Per-edge distributions over base relations. Stored once per unordered
/// pair {i,j} in the (min, max) direction; reading (j,i) maps the keys
/// through the converse permutation.
class EdgeProbabilities {
public:
  EdgeProbabilities(CalculusPtr calculus, std::size_t variables);

  const Calculus &calculus() const { return *calculus_; }
  std::size_t variable_count() const { return n_; }

  // dist[k] is the probability of base relation k holding from i to j.
  void set(std::size_t i, std::size_t j, std::vector<double> dist);
  void erase(std::size_t i, std::size_t j);
  bool has(std::size_t i, std::size_t j) const;
  bool empty() const { return dist_.empty(); }
  // Oriented distribution; throws InvalidArgument if the edge has none.
  std::vector<double> distribution(std::size_t i, std::size_t j) const;
  // nullopt when the edge has no distribution.
  std::optional<double> probability(std::size_t i, std::size_t j,
                                    std::size_t base) const;
  // Base relations with non-zero probability, oriented.
  RelationBits support(std::size_t i, std::size_t j) const;
  // Edges with a distribution, as (i,j) with i < j, ascending.
  std::vector<Edge> edges() const;

private:
  void check(std::size_t i, std::size_t j) const;

  CalculusPtr calculus_;
  std::size_t n_;
  std::map<Edge, std::vector<double>> dist_;
};

// Exact scenario frequencies behind scenario-derived probabilities.
struct ScenarioCounts {
  std::uint64_t total = 0;
  // (i,j) with i < j -> count per base relation.
  std::map<Edge, std::vector<std::uint64_t>> per_edge;
};

enum class ProbabilitySource { none, external, scenario_derived };

struct LabelEntry {
  std::string label;
  double probability;

  friend bool operator==(const LabelEntry &, const LabelEntry &) = default;
};

/// A network annotated with relation probabilities per edge and label
/// confidences per variable. Labels are carried through but never influence
/// relation-level reasoning.
struct ProbabilisticQcn {
  explicit ProbabilisticQcn(Qcn network);

  Qcn qcn;
  EdgeProbabilities edges;
  std::vector<std::vector<LabelEntry>> labels;
  ProbabilitySource source = ProbabilitySource::none;
  std::optional<ScenarioCounts> counts;

  bool has_labels() const;
};

bool operator==(const ProbabilisticQcn &a, const ProbabilisticQcn &b);

// Broken invariants: distribution sums, support inside the constraint, label
// sums, plus everything audit(Qcn) reports.
std::vector<std::string> audit(const ProbabilisticQcn &pq);

} // namespace qstr

#endif
