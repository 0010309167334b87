#include "doctest.h"

#include "qstr/generator.hpp"
#include "qstr/network_io.hpp"

using namespace qstr;

TEST_CASE("random networks follow the model") {
  auto ia = builtin("ia");
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Qcn q = random_network(ia, {6, 0.5, 3, seed});
    CHECK(q.size() == 6);
    CHECK(q.variable(5) == "v5");
    CHECK(audit(q).empty());
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        CHECK((q.bits(i, j) == ia->universal_bits() || cardinality(q.bits(i, j)) == 3));
  }
  CHECK(random_network(ia, {5, 0.0, 2, 1}).constrained_pairs() == 0);
  CHECK(random_network(ia, {5, 1.0, 2, 1}).constrained_pairs() == 10);
}

TEST_CASE("random networks are reproducible") {
  auto rcc8 = builtin("rcc8");
  const RandomModel m{5, 0.6, 2, 12345};
  CHECK(write_network(random_network(rcc8, m)) ==
        write_network(random_network(rcc8, m)));
  CHECK(write_network(random_network(rcc8, m)) !=
        write_network(random_network(rcc8, {5, 0.6, 2, 12346})));
}

TEST_CASE("random model arguments are checked") {
  auto pa = builtin("pa");
  CHECK_THROWS_AS(random_network(pa, {0, 0.5, 1, 1}), InvalidArgument);
  CHECK_THROWS_AS(random_network(pa, {3, 0.5, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(random_network(pa, {3, 0.5, 4, 1}), InvalidArgument);
  CHECK_THROWS_AS(random_network(pa, {3, 1.5, 1, 1}), InvalidArgument);
}
