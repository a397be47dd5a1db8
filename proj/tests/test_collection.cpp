#include <doctest.h>

#include <string>
#include <vector>

#include "eqsimp/collection.hpp"
#include "eqsimp/error.hpp"
#include "eqsimp/term.hpp"
#include "support/reference.hpp"

using namespace eqsimp;
using eqsimp::testing::is_normalized;
using eqsimp::testing::is_well_formed;

namespace {

Id add(Collection& c, const char* text) { return c.to_set(parse(text)); }

}  // namespace

TEST_CASE("ids follow creation order and shared subterms are reused") {
  Collection c;
  CHECK(add(c, "0") == Id{1});
  CHECK(add(c, "1") == Id{2});
  CHECK(add(c, "a + b + !b + a") == Id{8});
  CHECK(c.lookup(parse("a")) == Id{3});
  CHECK(c.lookup(parse("b")) == Id{4});
  CHECK(c.lookup(parse("a + b")) == Id{5});
  CHECK(c.lookup(parse("!b")) == Id{6});
  CHECK(c.lookup(parse("a + b + !b")) == Id{7});
  CHECK(c.structure_count() == 8);
  CHECK(c.id_count() == 8);
  CHECK(add(c, "a + b") == Id{5});
  CHECK(c.structure_count() == 8);
  CHECK_FALSE(c.lookup(parse("b + a")).has_value());
  CHECK(c.dump().rfind("0:1 @1\n1:2 @2\na:3 @3\n", 0) == 0);
}

TEST_CASE("sizes are minimal term sizes") {
  Collection c;
  const Id e = add(c, "a + b + !b + a");
  CHECK(c.size(e) == 8);
  const Id one = add(c, "1");
  c.unify(one, add(c, "b + !b"));
  CHECK(c.size(*c.canonical(e)) == 8);
  c.unify(*c.lookup(parse("a + b + !b")), one);
  CHECK(c.size(*c.canonical(e)) == 3);
  CHECK(print(c.extract_min(*c.canonical(e))) == "1 + a");
}

TEST_CASE("unify renames the younger id into the older one") {
  Collection c;
  const Id a = add(c, "a");
  const Id b = add(c, "b");
  c.unify(b, a);
  CHECK(c.is_live(a));
  CHECK_FALSE(c.is_live(b));
  CHECK(c.canonical(b) == a);
  CHECK(c.id_count() == 1);
  CHECK(c.structure_count() == 2);
}

TEST_CASE("unify propagates congruence") {
  Collection c;
  const Id fa = add(c, "!a");
  const Id fb = add(c, "!b");
  const Id ga = add(c, "!!a");
  const Id gb = add(c, "!!b");
  c.unify(*c.lookup(parse("a")), *c.lookup(parse("b")));
  CHECK(c.canonical(fa) == c.canonical(fb));
  CHECK(c.canonical(ga) == c.canonical(gb));
  CHECK(is_normalized(c));
  CHECK(is_well_formed(c));
  CHECK(c.id_count() == 3);
}

TEST_CASE("substitute queues collisions until normalize") {
  Collection c;
  add(c, "!a");
  add(c, "!b");
  const Id a = *c.lookup(parse("a"));
  const Id b = *c.lookup(parse("b"));
  c.substitute(a, b);
  CHECK(c.pending_merges().size() == 1);
  CHECK_FALSE(is_normalized(c));
  c.normalize();
  CHECK(is_normalized(c));
  CHECK(c.id_count() == 2);
}

TEST_CASE("main id follows renaming") {
  Collection c;
  const Id a = add(c, "a");
  const Id e = add(c, "a.a");
  c.set_main_id(e);
  c.unify(a, e);
  CHECK(c.main_id() == a);
}

TEST_CASE("capacity is enforced") {
  Collection c(3);
  add(c, "a");
  add(c, "b");
  CHECK(c.has_room(1));
  CHECK_FALSE(c.has_room(2));
  add(c, "a + b");
  CHECK(c.structure_count() == 3);
  CHECK_THROWS_AS(add(c, "c"), CapacityExceeded);
  CHECK_THROWS_AS(add(c, "!a"), CapacityExceeded);
  CHECK(c.structure_count() == 3);
}

TEST_CASE("unknown ids are rejected") {
  Collection c;
  add(c, "a");
  CHECK_THROWS_AS(c.unify(Id{1}, Id{7}), UnknownId);
  CHECK_THROWS_AS(c.size(Id{9}), UnknownId);
}

TEST_CASE("symbol arities must agree") {
  Collection c;
  c.symbol("f", 2);
  CHECK_THROWS_AS(c.symbol("f", 1), TheoryError);
  CHECK(c.find_symbol("f").has_value());
  CHECK_FALSE(c.find_symbol("g").has_value());
}

TEST_CASE("variables resolve through the valuation") {
  Collection c;
  const Id a = add(c, "a");
  const Id b = add(c, "b");
  const Valuation v = Valuation::of(a, b);
  const Id s = c.to_set(parse_pattern("x + !y"), &v);
  CHECK(c.lookup(parse("a + !b")) == s);
  CHECK_THROWS_AS(c.to_set(parse_pattern("z"), &v), UnboundVariable);
}

TEST_CASE("next_id walks live ids chronologically") {
  Collection c;
  add(c, "a + b");
  c.unify(Id{1}, Id{2});
  std::vector<Id> seen;
  for (auto id = c.next_id(kNullId); id; id = c.next_id(*id)) seen.push_back(*id);
  CHECK(seen == c.ids());
  CHECK(seen.size() == 2);
  CHECK(seen.front() == Id{1});
}

TEST_CASE("extract_min returns a term of minimal size in the class") {
  Collection c;
  const Id e = add(c, "a + ab");
  const Id a = *c.lookup(parse("a"));
  c.unify(a, e);
  const Term t = c.extract_min(*c.canonical(e));
  CHECK(print(t) == "a");
}

TEST_CASE("the three collectors keep root sizes") {
  for (GcMode mode : {GcMode::AllMinimal, GcMode::OneMinimal, GcMode::Reachable}) {
    Collection c;
    const Id e = add(c, "(a + b)(a + b) + !c");
    add(c, "d + d");
    const Id small = add(c, "a + b + !c");
    c.unify(small, e);
    const Id root = *c.canonical(e);
    const auto before = c.size(root);
    const Id roots[] = {root};
    c.gc(mode, roots);
    CHECK(c.size(root) == before);
    CHECK_FALSE(c.lookup(parse("d + d")).has_value());
    CHECK(is_normalized(c));
    CHECK(is_well_formed(c));
    if (mode == GcMode::Reachable) {
      CHECK(c.lookup(parse("(a + b)(a + b)")).has_value());
    } else {
      CHECK_FALSE(c.lookup(parse("(a + b)(a + b)")).has_value());
    }
  }
}

TEST_CASE("one-minimal keeps exactly one witness, newest first") {
  Collection c;
  const Id ab = add(c, "ab");
  const Id ba = add(c, "ba");
  c.unify(ab, ba);
  const Id roots[] = {ab};
  Collection copy = c;
  copy.gc(GcMode::AllMinimal, roots);
  CHECK(copy.structure_count() == 4);
  c.gc(GcMode::OneMinimal, roots);
  CHECK(c.structure_count() == 3);
  CHECK(c.lookup(parse("ba")) == ab);
  CHECK_FALSE(c.lookup(parse("ab")).has_value());
}

TEST_CASE("pinned ids survive collection") {
  Collection c;
  const Id one = add(c, "1");
  const Id e = add(c, "a");
  c.pin(one);
  const Id roots[] = {e};
  c.gc(GcMode::OneMinimal, roots);
  CHECK(c.is_live(one));
  CHECK(c.lookup(parse("1")) == one);
}

TEST_CASE("watched ids count lookups, insertions and renamings") {
  Collection c;
  const Id one = add(c, "1");
  const Id a = add(c, "a");
  c.watch(one);
  const auto h0 = c.watch_hits();
  add(c, "a + b");
  CHECK(c.watch_hits() == h0);
  c.lookup(parse("a + 1"));
  CHECK(c.watch_hits() > h0);
  const auto h1 = c.watch_hits();
  c.unify(one, a);
  CHECK(c.watch_hits() > h1);
  CHECK(c.is_watched(one));
}

TEST_CASE("merge log records every renaming") {
  Collection c;
  add(c, "!a + !b");
  std::vector<std::pair<Id, Id>> log;
  c.set_merge_log(&log);
  c.unify(*c.lookup(parse("a")), *c.lookup(parse("b")));
  c.set_merge_log(nullptr);
  REQUIRE(log.size() == 2);
  CHECK(log[0] == std::pair{Id{1}, Id{3}});
  CHECK(log[1] == std::pair{Id{2}, Id{4}});
}
