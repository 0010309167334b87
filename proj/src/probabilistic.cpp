#include "qstr/probabilistic.hpp"

#include "qstr/solver.hpp"
#include "search.hpp"

namespace qstr {

namespace {

constexpr double tie_tolerance = 1e-12;

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

void require_compatible(const EdgeProbabilities &dist, const Qcn &q) {
  if (!dist.calculus().same_algebra(q.calculus()))
    throw CalculusMismatch("probabilities over " + dist.calculus().name() +
                           " used with a " + q.calculus().name() + " network");
  if (dist.variable_count() != q.size())
    throw InvalidArgument("probabilities and network have different variables");
}

} // namespace

ProbabilisticQcn edge_probabilities_from_scenarios(const Qcn &q) {
  const std::size_t n = q.size();
  const std::size_t b = q.calculus().size();
  ScenarioCounts counts;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      counts.per_edge[{i, j}].assign(b, 0);

  for_each_scenario(q, [&](const Qcn &s) {
    ++counts.total;
    for (auto &[edge, c] : counts.per_edge)
      for_each_base(s.bits(edge.first, edge.second),
                    [&](std::size_t k) { ++c[k]; });
    return true;
  });
  if (counts.total == 0)
    throw NoScenarioError("network '" + q.name() + "' has no scenario");

  ProbabilisticQcn out(q);
  for (const auto &[edge, c] : counts.per_edge) {
    std::vector<double> dist(b, 0.0);
    for (std::size_t k = 0; k < b; ++k)
      dist[k] = static_cast<double>(c[k]) / static_cast<double>(counts.total);
    out.edges.set(edge.first, edge.second, std::move(dist));
  }
  out.source = ProbabilitySource::scenario_derived;
  out.counts = std::move(counts);
  return out;
}

RobustnessReport robustness(const EdgeProbabilities &dist,
                            const Qcn &refinement) {
  require_compatible(dist, refinement);
  if (!refinement.is_atomic())
    throw InvalidArgument("refinement is not atomic");
  const std::size_t n = refinement.size();
  RobustnessReport report{refinement, {}, 1.0, false, {}};
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto k =
          static_cast<std::size_t>(std::countr_zero(refinement.bits(i, j)));
      auto p = dist.probability(i, j, k);
      if (!p)
        report.warnings.push_back("no probability for (" +
                                  refinement.variable(i) + "," +
                                  refinement.variable(j) + "), using 0");
      report.per_edge_probability.push_back({i, j, k, p.value_or(0.0)});
      sum += p.value_or(0.0);
    }
  if (n > 1)
    report.robustness = sum / static_cast<double>(pair_count(n));
  report.satisfiable = a_closure(refinement).consistent;
  return report;
}

std::optional<RobustnessReport>
max_robust_scenario(const Qcn &q, const EdgeProbabilities &dist) {
  require_compatible(dist, q);
  const Calculus &c = q.calculus();
  const std::size_t n = q.size();
  const std::size_t b = c.size();

  // probs[(i*n+j)*b + k]: probability of k on (i,j), i < j; 0 when missing.
  std::vector<double> probs(n * n * b, 0.0);
  for (const auto &[i, j] : dist.edges()) {
    const auto d = dist.distribution(i, j);
    std::copy(d.begin(), d.end(), probs.begin() + (i * n + j) * b);
  }
  const double pairs = n > 1 ? static_cast<double>(pair_count(n)) : 1.0;

  auto bound = [&](const detail::Matrix &m) {
    if (n < 2)
      return 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double best = 0.0;
        for_each_base(m[i * n + j], [&](std::size_t k) {
          best = std::max(best, probs[(i * n + j) * b + k]);
        });
        sum += best;
      }
    return sum / pairs;
  };

  detail::Matrix start = detail::matrix_of(q);
  if (!detail::propagate_all(c, n, start, nullptr))
    return std::nullopt;

  std::optional<detail::Matrix> incumbent;
  double incumbent_value = 0.0;
  std::function<void(const detail::Matrix &)> visit =
      [&](const detail::Matrix &m) {
        const double upper = bound(m);
        if (incumbent && upper <= incumbent_value + tie_tolerance)
          return;
        const auto edge = detail::pick_branch(n, m);
        if (!edge) {
          // Atomic: the bound is exactly this scenario's robustness.
          incumbent = m;
          incumbent_value = upper;
          return;
        }
        for_each_base(m[edge->first * n + edge->second], [&](std::size_t k) {
          if (auto next = detail::branch(c, n, m, *edge, k))
            visit(*next);
        });
      };
  visit(start);

  if (!incumbent)
    return std::nullopt;
  return robustness(dist, detail::network_of(q, *incumbent));
}

ProbabilisticQcn rectify(const ProbabilisticQcn &pq, const Qcn &background) {
  const Qcn combined = intersect(pq.qcn, background);
  const auto closed = a_closure(combined);
  if (!closed.consistent || !solve(closed.closed_network))
    throw NoScenarioError("network and background knowledge have no common "
                          "scenario");
  const Qcn &base = closed.closed_network;
  const std::size_t n = base.size();

  // consistent(i,j): relations on (i,j) in at least one scenario of base.
  std::vector<RelationBits> consistent(n * n, 0);
  auto record = [&](const Qcn &s) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        consistent[i * n + j] |= s.bits(i, j);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for_each_base(base.bits(i, j), [&](std::size_t k) {
        if (consistent[i * n + j] & bit_of(k))
          return;
        Qcn trial = base;
        trial.set_bits(i, j, bit_of(k));
        if (auto s = solve(trial))
          record(*s);
      });

  ProbabilisticQcn out = pq;
  out.counts.reset();
  if (out.source == ProbabilitySource::scenario_derived)
    out.source = ProbabilitySource::external;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RelationBits ok = consistent[i * n + j];
      if (!pq.edges.has(i, j)) {
        out.qcn.set_bits(i, j, ok);
        continue;
      }
      const auto d = pq.edges.distribution(i, j);
      const RelationBits keep = pq.edges.support(i, j) & ok;
      if (keep == 0)
        throw ContradictionError(
            i, j,
            "evidence on (" + base.variable(i) + "," + base.variable(j) +
                ") " + Relation(base.calculus(), pq.edges.support(i, j)).to_string() +
                " contradicts background knowledge " +
                Relation(base.calculus(), ok).to_string());
      double mass = 0.0;
      for_each_base(keep, [&](std::size_t k) { mass += d[k]; });
      std::vector<double> next(d.size(), 0.0);
      for_each_base(keep, [&](std::size_t k) { next[k] = d[k] / mass; });
      out.edges.set(i, j, std::move(next));
      out.qcn.set_bits(i, j, keep);
    }
  return out;
}

} // namespace qstr
