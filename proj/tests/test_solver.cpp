#include "doctest.h"

#include <algorithm>
#include <set>

#include "qstr/network_io.hpp"
#include "qstr/solver.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace qstr;

namespace {

Qcn chain(const char *calc, const char *ab, const char *bc, const char *ac) {
  auto c = builtin(calc);
  Qcn q = new_qcn(c, {"x", "z", "y"});
  if (ab)
    q.set(0, 1, Relation::of(*c, {ab}));
  if (bc)
    q.set(1, 2, Relation::of(*c, {bc}));
  if (ac)
    q.set(0, 2, Relation::of(*c, {ac}));
  return q;
}

// Independent check of the scenario contract.
void check_scenario(const Qcn &scenario, const Qcn &source) {
  CHECK(scenario.is_atomic());
  CHECK(scenario.is_refinement_of(source));
  CHECK(audit(scenario).empty());
  CHECK(qstr_test::has_consistent_atomic_refinement(scenario));
}

} // namespace

TEST_CASE("closure infers strict containment along a chain") {
  const auto r = a_closure(chain("rcc8", "NTPP", "NTPP", nullptr));
  CHECK(r.consistent);
  CHECK(r.closed_network.at(0, 2) == Relation::of(*builtin("rcc8"), {"NTPP"}));
  CHECK(r.revisions > 0);
}

TEST_CASE("closure detects the p, p, pi cycle") {
  const auto r = a_closure(chain("ia", "p", "p", "pi"));
  CHECK_FALSE(r.consistent);
  CHECK(r.closed_network.has_empty_constraint());
}

TEST_CASE("closed atomic networks need no revisions") {
  const Qcn q = chain("ia", "p", "p", "p");
  const auto r = a_closure(q);
  CHECK(r.consistent);
  CHECK(r.revisions == 0);
  CHECK(r.closed_network == q);
  CHECK(is_closed_scenario(q));
  CHECK_FALSE(is_closed_scenario(chain("ia", "p", "p", "pi")));
  CHECK(solve(q) == q);
}

TEST_CASE("networks with an empty edge") {
  auto ia = builtin("ia");
  Qcn q = new_qcn(ia, {"a", "b", "c"});
  q.set(0, 1, Relation::empty(*ia));
  CHECK_FALSE(a_closure(q).consistent);
  CHECK_FALSE(solve(q).has_value());
  CHECK(enumerate_scenarios(q).empty());
}

TEST_CASE("precedence example has scenarios") {
  const Qcn q = load_network(QSTR_FIXTURE_DIR "/precedence.net").qcn;
  CHECK(a_closure(q).consistent);
  const auto s = solve(q);
  REQUIRE(s.has_value());
  check_scenario(*s, q);
  CHECK(s->at(0, 2) == Relation::of(*builtin("ia"), {"p"}));
  CHECK(enumerate_scenarios(q).size() ==
        qstr_test::consistent_atomic_refinements(q).size());
}

TEST_CASE("two unconstrained intervals have 13 scenarios") {
  const Qcn q = new_qcn(builtin("ia"), {"a", "b"});
  const auto all = enumerate_scenarios(q);
  CHECK(all.size() == 13);
  std::set<RelationBits> seen;
  for (const auto &s : all)
    seen.insert(s.bits(0, 1));
  CHECK(seen.size() == 13);
  CHECK(enumerate_scenarios(q, 5).size() == 5);
}

TEST_CASE("RCC8 TPP chain scenarios match brute force") {
  const Qcn q = chain("rcc8", "TPP", "TPP", nullptr);
  std::size_t surviving = 0;
  for (std::size_t b = 0; b < 8; ++b) {
    Qcn r = q;
    r.set_bits(0, 2, bit_of(b));
    surviving += a_closure(r).consistent ? 1 : 0;
  }
  CHECK(enumerate_scenarios(q).size() == surviving);
  CHECK(surviving == qstr_test::consistent_atomic_refinements(q).size());
  CHECK(surviving == 2);
}

TEST_CASE("single-variable networks have exactly one scenario") {
  const Qcn q = new_qcn(builtin("rcc8"), {"x"});
  CHECK(solve(q) == q);
  CHECK(enumerate_scenarios(q).size() == 1);
}

TEST_CASE("property: closure is idempotent, shrinking and sound") {
  qstr_test::Rng rng(99);
  for (const char *name : {"pa", "ia", "rcc8"}) {
    auto c = builtin(name);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t n = 2 + rng.below(5);
      const Qcn q = qstr_test::random_qcn(rng, c, n, 0.7, 4);
      const auto r = a_closure(q);
      CAPTURE(name);
      CAPTURE(write_network(q));
      CHECK(r.closed_network.is_refinement_of(q));
      CHECK(audit(r.closed_network).empty());
      CHECK(r.consistent == !r.closed_network.has_empty_constraint());
      if (!r.consistent)
        continue;
      const auto again = a_closure(r.closed_network);
      CHECK(again.revisions == 0);
      CHECK(again.closed_network == r.closed_network);
      // Every triple satisfies the path condition.
      const Qcn &m = r.closed_network;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j)
            CHECK((m.bits(i, j) & ~c->compose_bits(m.bits(i, k), m.bits(k, j))) == 0);
      // Closure never removes a relation used by some scenario.
      for (const auto &a : qstr_test::consistent_atomic_refinements(q))
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            CHECK((m.bits(i, j) >> a[qstr_test::pair_index(n, i, j)] & 1) == 1);
    }
  }
}

TEST_CASE("property: closure result does not depend on variable order") {
  qstr_test::Rng rng(5);
  auto c = builtin("ia");
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(3);
    const Qcn q = qstr_test::random_qcn(rng, c, n, 0.8, 5);
    std::vector<std::string> order = q.variables();
    std::reverse(order.begin(), order.end());
    const auto direct = a_closure(q);
    const auto permuted = a_closure(reorder_variables(q, order));
    CHECK(direct.consistent == permuted.consistent);
    if (direct.consistent)
      CHECK(reorder_variables(permuted.closed_network, q.variables()) ==
            direct.closed_network);
  }
}

TEST_CASE("property: solve and enumeration agree with the brute-force oracle") {
  qstr_test::Rng rng(2024);
  for (const char *name : {"ia", "rcc8"}) {
    auto c = builtin(name);
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t n = 2 + rng.below(3);
      const Qcn q = qstr_test::random_qcn(rng, c, n, 0.8, c->size() / 2);
      CAPTURE(name);
      CAPTURE(write_network(q));
      const auto oracle = qstr_test::consistent_atomic_refinements(q);
      const auto s = solve(q);
      CHECK(s.has_value() == !oracle.empty());
      const auto all = enumerate_scenarios(q);
      REQUIRE(all.size() == oracle.size());
      std::set<qstr_test::Assignment> expected(oracle.begin(), oracle.end());
      std::set<qstr_test::Assignment> got;
      for (const auto &x : all)
        got.insert(qstr_test::assignment_of(x));
      CHECK(got == expected);
      if (s) {
        check_scenario(*s, q);
        CHECK(all.front() == *s);
      }
    }
  }
}

TEST_CASE("property: parallel enumeration returns the same ordered list") {
  qstr_test::Rng rng(77);
  auto c = builtin("ia");
  for (int trial = 0; trial < 30; ++trial) {
    const Qcn q = qstr_test::random_qcn(rng, c, 4, 0.5, 6);
    const auto serial = enumerate_scenarios(q);
    CHECK(enumerate_scenarios(q, unlimited, 4) == serial);
    const std::size_t limit = 1 + rng.below(10);
    const auto head = enumerate_scenarios(q, limit, 3);
    CHECK(head.size() == std::min(limit, serial.size()));
    CHECK(std::equal(head.begin(), head.end(), serial.begin()));
  }
}

TEST_CASE("for_each_scenario stops on request") {
  const Qcn q = new_qcn(builtin("ia"), {"a", "b"});
  std::size_t seen = 0;
  const std::size_t visited = for_each_scenario(q, [&](const Qcn &) {
    return ++seen < 4;
  });
  CHECK(seen == 4);
  CHECK(visited == 4);
}
