#include <doctest.h>

#include "eqsimp/error.hpp"
#include "eqsimp/oracle.hpp"
#include "eqsimp/term.hpp"

using namespace eqsimp;

TEST_CASE("bottom-up completion finds every boolean function") {
  const AxiomSet axioms = standard_axioms();
  const auto r0 = saturate({"0", "1"}, axioms);
  CHECK(r0.reached_fixpoint);
  CHECK(r0.classes == 2);
  const auto r1 = saturate({"0", "1", "a"}, axioms);
  CHECK(r1.reached_fixpoint);
  CHECK(r1.classes == 4);
  const auto r2 = saturate({"0", "1", "a", "b"}, axioms);
  CHECK(r2.reached_fixpoint);
  CHECK(r2.classes == 16);
  CHECK(r2.structures > r1.structures);
}

TEST_CASE("completion stops unfinished at the structure limit") {
  const auto r = saturate({"0", "1", "a", "b"}, standard_axioms(), 100);
  CHECK_FALSE(r.reached_fixpoint);
  CHECK(r.structures <= 100);
}

TEST_CASE("ground word problems") {
  const Term a = parse("a");
  const Term b = parse("b");
  const Term c = parse("c");
  Collection s = solve_ground({{a, b}, {b, c}});
  CHECK(s.to_set(parse("!a")) == s.to_set(parse("!c")));
  CHECK(s.to_set(parse("a + b")) == s.to_set(parse("c + a")));
  CHECK(s.to_set(parse("a + d")) != s.to_set(parse("d + a")));

  Collection t = solve_ground({{parse("!!!a"), a}, {parse("!!!!!a"), a}});
  CHECK(t.to_set(parse("!a")) == t.to_set(a));
}

TEST_CASE("truth-table equivalence") {
  CHECK(equivalent(parse("a + ab"), parse("a")));
  CHECK(equivalent(parse("!(a + b)"), parse("!a !b")));
  CHECK(equivalent(parse("a + !a"), parse("1")));
  CHECK(equivalent(parse("a + b + !b + a"), parse("1")));
  CHECK_FALSE(equivalent(parse("a + b"), parse("a")));
  CHECK_FALSE(equivalent(parse("a"), parse("b")));
  CHECK(equivalent(parse("abcdefghijklmnop + !a"), parse("!a + bcdefghijklmnop")));
  CHECK_FALSE(equivalent(parse("abcdefghijklmnop"), parse("abcdefghijklmno")));
}

TEST_CASE("equivalence agrees with direct evaluation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Term s = random_expr(seed, 3, 12);
    const Term t = random_expr(seed + 1000, 3, 12);
    bool same = true;
    for (int bits = 0; bits < 8; ++bits) {
      const TruthAssignment v{{"a", (bits & 1) != 0}, {"b", (bits & 2) != 0}, {"c", (bits & 4) != 0}};
      same = same && evaluate(s, v) == evaluate(t, v);
    }
    CHECK(equivalent(s, t) == same);
    CHECK(equivalent(s, s));
  }
}

TEST_CASE("sampled equivalence") {
  CHECK(sampled_equivalent(parse("a + ab"), parse("a"), 64, 1));
  CHECK_FALSE(sampled_equivalent(parse("abcd + e"), parse("e"), 256, 1));
}
