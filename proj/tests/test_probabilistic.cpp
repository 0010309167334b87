#include "doctest.h"

#include <cmath>
#include <map>

#include "qstr/network_io.hpp"
#include "qstr/probabilistic.hpp"
#include "qstr/solver.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace qstr;

namespace {

constexpr double exact = 1e-12;

ProbabilisticQcn fixture(const char *name) {
  return load_network(std::string(QSTR_FIXTURE_DIR) + "/" + name);
}

// Robustness by the hand formula: mean over unordered pairs of the
// probability of the chosen relation.
double hand_robustness(const EdgeProbabilities &d, const Qcn &s) {
  const std::size_t n = s.size();
  if (n < 2)
    return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += d.probability(i, j, static_cast<std::size_t>(std::countr_zero(
                                     s.bits(i, j))))
                 .value_or(0.0);
  return sum / static_cast<double>(n * (n - 1) / 2);
}

// First scenario in search order with the highest robustness.
std::optional<Qcn> exhaustive_argmax(const Qcn &q, const EdgeProbabilities &d) {
  std::optional<Qcn> best;
  double value = -1.0;
  for (const auto &s : enumerate_scenarios(q)) {
    const double r = hand_robustness(d, s);
    if (!best || r > value + exact) {
      best = s;
      value = r;
    }
  }
  return best;
}

} // namespace

TEST_CASE("scenario-derived probabilities of an atomic network") {
  auto ia = builtin("ia");
  Qcn q = new_qcn(ia, {"a", "b", "c"});
  q.set(0, 1, Relation::of(*ia, {"p"}));
  q.set(1, 2, Relation::of(*ia, {"m"}));
  q.set(0, 2, Relation::of(*ia, {"p"}));
  const auto pq = edge_probabilities_from_scenarios(q);
  CHECK(pq.source == ProbabilitySource::scenario_derived);
  REQUIRE(pq.counts.has_value());
  CHECK(pq.counts->total == 1);
  CHECK(pq.edges.probability(0, 1, *ia->index_of("p")) == 1.0);
  CHECK(pq.edges.probability(1, 2, *ia->index_of("m")) == 1.0);
  CHECK(pq.edges.probability(2, 1, *ia->index_of("mi")) == 1.0);
  const auto report = robustness(pq.edges, q);
  CHECK(report.robustness == 1.0);
  CHECK(report.satisfiable);
  CHECK(report.warnings.empty());
}

TEST_CASE("two unconstrained intervals give 1/13 everywhere") {
  const auto pq = edge_probabilities_from_scenarios(new_qcn(builtin("ia"), {"a", "b"}));
  CHECK(pq.counts->total == 13);
  for (std::size_t k = 0; k < 13; ++k) {
    CHECK(pq.edges.probability(0, 1, k) == 1.0 / 13.0);
    CHECK(pq.counts->per_edge.at({0, 1})[k] == 1);
  }
}

TEST_CASE("yolk and egg under background knowledge") {
  const auto evidence = fixture("yolk_egg_evidence.net");
  const auto background = fixture("yolk_egg_background.net");
  auto rcc8 = builtin("rcc8");
  const std::size_t ntpp = *rcc8->index_of("NTPP");
  const std::size_t po = *rcc8->index_of("PO");

  const Qcn feasible = intersect(evidence.qcn, background.qcn);
  const auto derived = edge_probabilities_from_scenarios(feasible);
  CHECK(derived.edges.probability(0, 1, ntpp) == 1.0);
  CHECK(derived.edges.probability(0, 1, po) == 0.0);

  const auto rect = rectify(evidence, background.qcn);
  CHECK(rect.edges.probability(0, 1, ntpp) == 1.0);
  CHECK(rect.edges.probability(0, 1, po) == 0.0);
  CHECK(rect.qcn.at(0, 1) == Relation::of(*rcc8, {"NTPP"}));
  CHECK(rect.labels == evidence.labels);
  CHECK(audit(rect).empty());

  // Without background knowledge the evidence alone prefers overlap.
  const auto free_choice = max_robust_scenario(evidence.qcn, evidence.edges);
  REQUIRE(free_choice);
  CHECK(free_choice->refinement.at(0, 1) == Relation::of(*rcc8, {"PO"}));
  CHECK(free_choice->robustness == 0.55);

  const auto constrained = max_robust_scenario(feasible, evidence.edges);
  REQUIRE(constrained);
  CHECK(constrained->refinement.at(0, 1) == Relation::of(*rcc8, {"NTPP"}));
  CHECK(constrained->robustness == 0.45);

  // The shipped three-region network encodes the background itself.
  const auto shipped = fixture("yolk_egg.net");
  const auto best = max_robust_scenario(shipped.qcn, shipped.edges);
  REQUIRE(best);
  CHECK(best->refinement.at(0, 1) == Relation::of(*rcc8, {"NTPP"}));
  CHECK(std::abs(best->robustness - (0.45 + 1.0 + 1.0) / 3.0) <= exact);
}

TEST_CASE("robustness of a refinement averaging 0.9") {
  auto rcc8 = builtin("rcc8");
  Qcn s = new_qcn(rcc8, {"a", "b", "c"});
  s.set(0, 1, Relation::of(*rcc8, {"DC"}));
  s.set(0, 2, Relation::of(*rcc8, {"DC"}));
  s.set(1, 2, Relation::of(*rcc8, {"DC"}));
  EdgeProbabilities d(rcc8, 3);
  auto dist = [&](double p_dc) {
    std::vector<double> v(8, 0.0);
    v[*rcc8->index_of("DC")] = p_dc;
    v[*rcc8->index_of("EC")] = 1.0 - p_dc;
    return v;
  };
  d.set(0, 1, dist(1.0));
  d.set(0, 2, dist(0.8));
  d.set(1, 2, dist(0.9));
  const auto r = robustness(d, s);
  CHECK(std::abs(r.robustness - 0.9) <= exact);
  CHECK(r.per_edge_probability.size() == 3);
  CHECK(r.per_edge_probability[1].probability == 0.8);
  CHECK(r.satisfiable);
}

TEST_CASE("robustness edge cases") {
  auto ia = builtin("ia");
  Qcn s = new_qcn(ia, {"a", "b", "c"});
  s.set(0, 1, Relation::of(*ia, {"p"}));
  s.set(1, 2, Relation::of(*ia, {"p"}));
  s.set(0, 2, Relation::of(*ia, {"pi"}));
  EdgeProbabilities d(ia, 3);
  std::vector<double> v(13, 0.0);
  v[*ia->index_of("p")] = 1.0;
  d.set(0, 1, v);
  d.set(1, 2, v);
  const auto r = robustness(d, s);
  CHECK(r.warnings.size() == 1);
  CHECK(r.per_edge_probability[1].probability == 0.0);
  CHECK(std::abs(r.robustness - 2.0 / 3.0) <= exact);
  CHECK_FALSE(r.satisfiable);

  CHECK_THROWS_AS(robustness(d, new_qcn(ia, {"a", "b", "c"})), InvalidArgument);
  CHECK_THROWS_AS(robustness(EdgeProbabilities(ia, 2), s), InvalidArgument);
  CHECK_THROWS_AS(robustness(EdgeProbabilities(builtin("pa"), 3), s),
                  CalculusMismatch);

  const Qcn one = new_qcn(ia, {"a"});
  CHECK(robustness(EdgeProbabilities(ia, 1), one).robustness == 1.0);
}

TEST_CASE("no scenario") {
  const Qcn bad = fixture("ia_chain_inconsistent.net").qcn;
  CHECK_THROWS_AS(edge_probabilities_from_scenarios(bad), NoScenarioError);
  CHECK_FALSE(max_robust_scenario(bad, EdgeProbabilities(bad.calculus_ptr(), 3)));
}

TEST_CASE("a unique scenario wins regardless of the distribution") {
  auto ia = builtin("ia");
  Qcn q = new_qcn(ia, {"a", "b", "c"});
  q.set(0, 1, Relation::of(*ia, {"p"}));
  q.set(1, 2, Relation::of(*ia, {"p"}));
  qstr_test::Rng rng(3);
  const auto d = qstr_test::random_distributions(rng, new_qcn(ia, {"a", "b", "c"}));
  const auto best = max_robust_scenario(q, d);
  REQUIRE(best);
  CHECK(best->refinement.at(0, 2) == Relation::of(*ia, {"p"}));
}

TEST_CASE("rectification corner cases") {
  auto ia = builtin("ia");
  const auto pq = fixture("ia_probabilities.net");

  // A universal background changes nothing when every supported relation
  // occurs in some scenario.
  const auto same = rectify(pq, new_qcn(ia, pq.qcn.variables()));
  CHECK(same.edges.distribution(0, 1) == pq.edges.distribution(0, 1));
  CHECK(same.edges.distribution(1, 2) == pq.edges.distribution(1, 2));

  Qcn conflict = new_qcn(ia, pq.qcn.variables());
  conflict.set(0, 1, Relation::of(*ia, {"p", "pi"}));
  const auto narrowed = rectify(pq, conflict);
  CHECK(narrowed.edges.probability(0, 1, *ia->index_of("p")) == 1.0);

  ProbabilisticQcn single(new_qcn(ia, {"a", "b"}));
  std::vector<double> v(13, 0.0);
  v[*ia->index_of("p")] = 1.0;
  single.edges.set(0, 1, v);
  single.source = ProbabilitySource::external;
  Qcn against = new_qcn(ia, {"a", "b"});
  against.set(0, 1, Relation::of(*ia, {"pi"}));
  try {
    rectify(single, against);
    FAIL("expected a contradiction");
  } catch (const ContradictionError &e) {
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
  }

  Qcn cycle = new_qcn(ia, pq.qcn.variables());
  cycle.set(0, 1, Relation::of(*ia, {"p"}));
  cycle.set(1, 2, Relation::of(*ia, {"p"}));
  cycle.set(0, 2, Relation::of(*ia, {"pi"}));
  CHECK_THROWS_AS(rectify(pq, cycle), NoScenarioError);
}

TEST_CASE("property: scenario-derived probabilities are symmetric and normalized") {
  qstr_test::Rng rng(31337);
  for (const char *name : {"ia", "rcc8"}) {
    auto c = builtin(name);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng.below(3);
      const Qcn q = qstr_test::random_qcn(rng, c, n, 0.7, c->size() / 2);
      const auto oracle = qstr_test::consistent_atomic_refinements(q);
      if (oracle.empty()) {
        CHECK_THROWS_AS(edge_probabilities_from_scenarios(q), NoScenarioError);
        continue;
      }
      const auto pq = edge_probabilities_from_scenarios(q);
      CHECK(pq.counts->total == oracle.size());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j)
            continue;
          double sum = 0.0;
          for (std::size_t k = 0; k < c->size(); ++k) {
            const double p = *pq.edges.probability(i, j, k);
            sum += p;
            CHECK(p == *pq.edges.probability(j, i, c->converse_of(k)));
            if (i < j) {
              std::size_t count = 0;
              for (const auto &a : oracle)
                count += a[qstr_test::pair_index(n, i, j)] == k ? 1 : 0;
              CHECK(p == static_cast<double>(count) /
                             static_cast<double>(oracle.size()));
            }
          }
          CHECK(std::abs(sum - 1.0) <= exact);
        }
      CHECK(audit(pq).empty());
    }
  }
}

TEST_CASE("property: branch and bound equals the exhaustive argmax") {
  qstr_test::Rng rng(4242);
  for (const char *name : {"ia", "rcc8"}) {
    auto c = builtin(name);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t n = 2 + rng.below(3);
      const Qcn q = qstr_test::random_qcn(rng, c, n, 0.6, c->size() / 2);
      const auto d = qstr_test::random_distributions(
          rng, new_qcn(c, q.variables()));
      CAPTURE(name);
      CAPTURE(write_network(q));
      const auto expected = exhaustive_argmax(q, d);
      const auto got = max_robust_scenario(q, d);
      REQUIRE(got.has_value() == expected.has_value());
      if (!got)
        continue;
      CHECK(got->refinement == *expected);
      CHECK(std::abs(got->robustness - hand_robustness(d, *expected)) <= exact);
      CHECK(got->satisfiable);

      // Scaling every distribution by a common factor keeps the argmax.
      EdgeProbabilities scaled = d;
      for (const auto &[i, j] : d.edges()) {
        auto v = d.distribution(i, j);
        for (auto &x : v)
          x *= 0.5;
        scaled.set(i, j, v);
      }
      const auto again = max_robust_scenario(q, scaled);
      REQUIRE(again);
      CHECK(again->refinement == got->refinement);
    }
  }
}

TEST_CASE("property: rectify output refines both inputs") {
  qstr_test::Rng rng(8080);
  auto c = builtin("rcc8");
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    ProbabilisticQcn pq(qstr_test::random_qcn(rng, c, n, 0.8, 4));
    pq.edges = qstr_test::random_distributions(rng, pq.qcn);
    pq.source = ProbabilitySource::external;
    const Qcn background = qstr_test::random_qcn(rng, c, n, 0.3, 5);
    try {
      const auto out = rectify(pq, background);
      CHECK(out.qcn.is_refinement_of(pq.qcn));
      CHECK(out.qcn.is_refinement_of(background));
      CHECK(audit(out).empty());
      ++checked;
    } catch (const NoScenarioError &) {
      CHECK_FALSE(solve(intersect(pq.qcn, background)).has_value());
    } catch (const ContradictionError &) {
    }
  }
  CHECK(checked > 50);
}
