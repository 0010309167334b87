#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <string>

#include "qstr/calculi.hpp"
#include "support/oracles.hpp"

using namespace qstr;

namespace {

std::string replace_once(std::string text, const std::string &from,
                         const std::string &to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

bool has_kind(const std::vector<Violation> &vs, Violation::Kind k) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation &v) { return v.kind == k; });
}

} // namespace

TEST_CASE("built-in calculi shapes") {
  auto ia = builtin("ia");
  auto rcc8 = builtin("rcc8");
  auto pa = builtin("pa");
  CHECK(ia->size() == 13);
  CHECK(rcc8->size() == 8);
  CHECK(pa->size() == 3);
  CHECK(rcc8->identity() == *rcc8->index_of("EQ"));
  CHECK(ia->identity() == *ia->index_of("eq"));
  CHECK(pa->converse_of(*pa->index_of("<")) == *pa->index_of(">"));
  CHECK(pa->converse_of(*pa->index_of("=")) == *pa->index_of("="));
  CHECK(builtin("ia") == ia);
  CHECK(ia->atomic_closure_decides());
  CHECK(builtin_names() == std::vector<std::string>{"pa", "ia", "rcc8"});
  CHECK_THROWS_AS(builtin("opra"), InvalidArgument);
}

TEST_CASE("built-in calculi satisfy every calculus law") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    auto c = builtin(name);
    CHECK(validate_calculus(*c).empty());
    for (std::size_t a = 0; a < c->size(); ++a)
      for (std::size_t b = 0; b < c->size(); ++b)
        CHECK(c->compose_base(a, b) != 0);
  }
}

TEST_CASE("IA table entries") {
  auto ia = builtin("ia");
  auto entry = [&](const char *a, const char *b) {
    return ia->names_of(ia->compose_base(*ia->index_of(a), *ia->index_of(b)));
  };
  CHECK(entry("p", "p") == std::vector<std::string>{"p"});
  CHECK(entry("m", "m") == std::vector<std::string>{"p"});
  CHECK(entry("o", "o") == std::vector<std::string>{"p", "m", "o"});
  CHECK(entry("d", "di").size() == 13);
  for (std::size_t b = 0; b < ia->size(); ++b)
    CHECK(ia->compose_base(ia->identity(), b) == bit_of(b));
}

TEST_CASE("IA table equals the endpoint derivation and the enumeration oracle") {
  auto ia = builtin("ia");
  const auto derived = derive_ia_table();
  REQUIRE(derived.size() == 169);
  const auto oracle = qstr_test::allen_composition_by_enumeration();
  REQUIRE(oracle.size() == 169);
  for (std::size_t a = 0; a < 13; ++a)
    for (std::size_t b = 0; b < 13; ++b) {
      CAPTURE(ia->base_name(a));
      CAPTURE(ia->base_name(b));
      CHECK(ia->compose_base(a, b) == derived[a * 13 + b]);
      const auto &names = oracle.at({ia->base_name(a), ia->base_name(b)});
      CHECK(ia->names_of(ia->compose_base(a, b)) ==
            ia->names_of(ia->bits_of(
                std::vector<std::string>(names.begin(), names.end()))));
    }
}

TEST_CASE("interval relation of endpoints") {
  auto ia = builtin("ia");
  CHECK(ia_relation_of(0, 1, 2, 3) == *ia->index_of("p"));
  CHECK(ia_relation_of(0, 2, 2, 3) == *ia->index_of("m"));
  CHECK(ia_relation_of(0, 2, 1, 3) == *ia->index_of("o"));
  CHECK(ia_relation_of(1, 2, 0, 3) == *ia->index_of("d"));
  CHECK(ia_relation_of(0, 3, 0, 3) == *ia->index_of("eq"));
  CHECK(ia_relation_of(2, 3, 0, 3) == *ia->index_of("f"));
}

TEST_CASE("RCC8 table entries have witnesses among grid rectangles") {
  auto rcc8 = builtin("rcc8");
  const auto witnesses = qstr_test::rcc8_grid_witnesses();
  std::size_t checked = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (const auto &c : rcc8->names_of(rcc8->compose_base(a, b))) {
        CAPTURE(rcc8->base_name(a));
        CAPTURE(rcc8->base_name(b));
        CAPTURE(c);
        CHECK(witnesses.count({rcc8->base_name(a), rcc8->base_name(b), c}) == 1);
        ++checked;
      }
  CHECK(checked > 64);
}

TEST_CASE("shipped calculus files load equal to the built-ins") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    const auto path =
        std::filesystem::path(QSTR_DATA_DIR) / "calculi" / (name + ".cal");
    auto loaded = load_calculus(path);
    CHECK(loaded->same_algebra(*builtin(name)));
    CHECK_FALSE(loaded->atomic_closure_decides());
    // The writer reproduces a calculus the parser accepts unchanged.
    CHECK(parse_calculus(write_calculus(*loaded))->same_algebra(*loaded));
  }
}

TEST_CASE("validation reports a broken converse map") {
  const std::string text = replace_once(std::string(builtin_source("rcc8")),
                                        "converse TPP TPPi", "converse TPP TPP");
  auto broken = parse_calculus(text, "mutated.cal");
  const auto violations = validate_calculus(*broken);
  REQUIRE_FALSE(violations.empty());
  CHECK(has_kind(violations, Violation::Kind::converse_duality));
  const bool named = std::any_of(violations.begin(), violations.end(), [](auto &v) {
    return v.message.rfind("converse not matching duality", 0) == 0;
  });
  CHECK(named);
}

TEST_CASE("validation reports identity and involution failures") {
  std::string text(builtin_source("pa"));
  text = replace_once(text, "converse = =", "converse = <");
  auto c = parse_calculus(text);
  const auto vs = validate_calculus(*c);
  CHECK(has_kind(vs, Violation::Kind::identity_not_self_converse));
  CHECK(has_kind(vs, Violation::Kind::converse_not_involution));

  std::string law(builtin_source("pa"));
  law = replace_once(law, "compose = < = ( < )", "compose = < = ( < = )");
  CHECK(has_kind(validate_calculus(*parse_calculus(law)),
                 Violation::Kind::identity_law));
}

TEST_CASE("incomplete composition tables are parse errors") {
  std::string text(builtin_source("rcc8"));
  text = replace_once(text, "compose PO PO = ( DC EC PO EQ TPP TPPi NTPP NTPPi )\n",
                      "");
  try {
    parse_calculus(text, "missing.cal");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("incomplete composition table") !=
          std::string::npos);
    CHECK(std::string(e.what()).find("(PO,PO)") != std::string::npos);
  }
}

TEST_CASE("calculus parse errors carry positions") {
  try {
    parse_calculus("calculus x\ndomain \"d\"\nrelations a b\nidentity c\n", "bad.cal");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.source() == "bad.cal");
    CHECK(e.line() == 4);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(load_calculus("/nonexistent/none.cal"), Error);
}

TEST_CASE("OPRA relations") {
  const OpraRelation r = make_opra(4, 13, 3);
  CHECK(to_string(r) == "4<13^3");
  CHECK(opra_converse(r) == make_opra(4, 3, 13));
  CHECK(to_string(opra_converse(r)) == "4<3^13");
  CHECK(opra_converse(opra_converse(r)) == r);

  const OpraRelation same = make_opra_same_position(4, 5);
  CHECK(opra_converse(same) == same);
  CHECK(to_string(same) == "4<5");

  CHECK_THROWS_AS(make_opra(4, 16, 0), InvalidArgument);
  CHECK_THROWS_AS(make_opra(0, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(make_opra(1, 0, -1), InvalidArgument);
  for (int m = 1; m <= 4; ++m)
    for (int i = 0; i < 4 * m; ++i)
      for (int j = 0; j < 4 * m; ++j) {
        const auto x = make_opra(m, i, j);
        CHECK(opra_converse(opra_converse(x)) == x);
      }
}
