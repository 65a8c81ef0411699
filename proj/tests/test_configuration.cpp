#include <doctest.h>

#include <random>

#include "nomega/configuration.hpp"
#include "nomega/oracle.hpp"
#include "test_support.hpp"

using namespace nomega;
using namespace nomega::test;

namespace {

Configuration conf(StateId q, std::initializer_list<std::string> names) {
  Configuration c;
  c.state = q;
  for (const auto& n : names) c.assignment.push_back(Name{n});
  return c;
}

}  // namespace

TEST_CASE("session steps") {
  Automaton a = load_corpus("session.aut");
  Configuration c = initial_configuration(a);
  REQUIRE(c == conf(0, {}));

  c = step(a, c, nm("a"));
  CHECK(c == conf(1, {"a"}));

  // A different name keeps the stored one.
  CHECK(step(a, c, nm("b")) == conf(1, {"a"}));

  // The stored name releases the register.
  CHECK(step(a, c, nm("a")) == conf(0, {}));
}

TEST_CASE("trio single step stores and swaps") {
  Automaton a = load_corpus("trio.aut");
  Configuration c = initial_configuration(a);
  CHECK(step(a, c, nm("c")) == conf(1, {"b", "a", "c"}));
}

TEST_CASE("trio runs the worked three-symbol prefix") {
  Automaton a = load_corpus("trio.aut");
  RunRecord r = run_prefix(a, initial_configuration(a), word_of({"c", "d", "b"}));
  CHECK(r.final == conf(0, {"b", "a", "d"}));
  CHECK(r.visited == std::vector<StateId>{0, 1, 2, 0});
}

TEST_CASE("empty word runs to the start") {
  for (const Automaton& a : corpus()) {
    Configuration c = initial_configuration(a);
    RunRecord r = run_prefix(a, c, {});
    CHECK(r.final == c);
    CHECK(r.visited == std::vector<StateId>{c.state});
  }
}

TEST_CASE("trio returns to its start on the worked six-symbol word") {
  Automaton a = load_corpus("trio.aut");
  Configuration c = initial_configuration(a);
  RunRecord r = run_prefix(a, c, word_of({"c", "d", "b", "d", "c", "a"}));
  CHECK(r.final == c);
}

TEST_CASE("membership on the universal automaton") {
  Membership m = up_member(load_corpus("all.aut"), up({}, {"a"}));
  CHECK(m.accepted);
  CHECK(m.inf == StateSet{0});
}

TEST_CASE("membership on the session automaton") {
  Automaton a = load_corpus("session.aut");

  Membership m = up_member(a, up({}, {"a", "a"}));
  CHECK(m.accepted);
  CHECK(m.inf == StateSet{0, 1});

  m = up_member(a, up({"a"}, {"b"}));
  CHECK(!m.accepted);
  CHECK(m.inf == StateSet{1});

  CHECK(up_member(a, up({}, {"a", "b", "a", "b"})).accepted);
}

TEST_CASE("word permutation") {
  NamePermutation swap_ab = NamePermutation::from_pairs({{nm("a"), nm("b")}, {nm("b"), nm("a")}});
  CHECK(permute_word(up({}, {"a", "a"}), swap_ab) == up({}, {"b", "b"}));
  CHECK(permute_word(up({"a"}, {"b"}), NamePermutation{}) == up({"a"}, {"b"}));

  NamePermutation swap_bc = NamePermutation::from_pairs({{nm("b"), nm("c")}, {nm("c"), nm("b")}});
  CHECK(permute_word(up({"a"}, {"b", "c"}), swap_bc) == up({"a"}, {"c", "b"}));

  CHECK_THROWS_AS(NamePermutation::from_pairs({{nm("a"), nm("c")}, {nm("b"), nm("c")}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NamePermutation::from_pairs({{nm("a"), nm("c")}}), std::invalid_argument);
}

TEST_CASE("steps stay valid and only pick up the consumed name") {
  std::mt19937_64 rng(7);
  std::vector<Name> pool{nm("a"), nm("b"), nm("c"), nm("d"), nm("e")};
  for (const Automaton& a : corpus()) {
    Configuration c = initial_configuration(a);
    for (int i = 0; i < 200; ++i) {
      Name symbol = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      Configuration next = step(a, c, symbol);
      CHECK(is_valid_configuration(a, next));
      // Name growth: new values come from the old image plus the symbol.
      std::set<Name> old_image(c.assignment.begin(), c.assignment.end());
      old_image.insert(symbol);
      for (const Name& n : next.assignment) CHECK(old_image.count(n));
      c = next;
    }
  }
}

TEST_CASE("membership is invariant under permutations fixing the initial names") {
  std::mt19937_64 rng(11);
  std::vector<Name> pool{nm("a"), nm("b"), nm("c"), nm("d"), nm("e")};
  for (const Automaton& a : corpus()) {
    std::set<Name> fixed(a.initial_assignment.begin(), a.initial_assignment.end());
    std::vector<Name> movable{nm("u"), nm("v"), nm("w"), nm("t")};
    for (const Name& n : pool)
      if (!fixed.count(n)) movable.push_back(n);
    for (int i = 0; i < 25; ++i) {
      UPWord w = random_upword(rng, pool);
      NamePermutation pi = random_permutation(rng, movable);
      Membership lhs = up_member(a, w);
      Membership rhs = up_member(a, permute_word(w, pi));
      CHECK(lhs.accepted == rhs.accepted);
      CHECK(lhs.inf == rhs.inf);
    }
  }
}

TEST_CASE("block-boundary and step-level lassos agree") {
  std::mt19937_64 rng(13);
  std::vector<Name> pool{nm("a"), nm("b"), nm("c"), nm("d")};
  for (const Automaton& a : corpus()) {
    for (int i = 0; i < 30; ++i) {
      UPWord w = random_upword(rng, pool);
      Membership fast = up_member(a, w);
      Membership slow = oracle_up_member(a, w);
      CHECK(fast.accepted == slow.accepted);
      CHECK(fast.inf == slow.inf);
    }
  }
}
