#include <doctest.h>

#include <algorithm>

#include "nomega/format.hpp"
#include "nomega/product.hpp"
#include "test_support.hpp"

using namespace nomega;
using namespace nomega::test;

namespace {

std::optional<StateId> find_state(const ProductAutomaton& p, const ProductStateKey& key) {
  for (StateId s = 0; s < p.info.size(); ++s)
    if (p.info[s].key == key) return s;
  return std::nullopt;
}

Automaton tiny(const std::string& reg, const std::string& name) {
  return validate_or_throw(parse_automaton("automaton tiny_" + reg +
                                           "\n"
                                           "state q0 [" + reg + "]\n"
                                           "init q0 {" + reg + "=" + name + "}\n"
                                           "accept {q0}\n"
                                           "trans q0 * q0 {" + reg + "=" + reg + "}\n"
                                           "trans q0 " + reg + " q0 {" + reg + "=" + reg + "}\n"));
}

}  // namespace

TEST_CASE("initial product state relates registers holding equal names") {
  Automaton all = load_corpus("all.aut");
  Automaton session = load_corpus("session.aut");
  Automaton trio = load_corpus("trio.aut");

  InitialProduct p = initial_product_state(all, session);
  CHECK(p.state == ProductStateKey{0, 0, {}});
  CHECK(p.classes.empty());
  CHECK(p.assignment.empty());

  p = initial_product_state(trio, trio);
  CHECK(p.state.rel == RegRelation{{0, 0}, {1, 1}, {2, 2}});
  CHECK(p.classes.size() == 3);
  for (const QuotientClass& c : p.classes) {
    REQUIRE(c.left.has_value());
    REQUIRE(c.right.has_value());
    CHECK(*c.left == *c.right);
  }

  p = initial_product_state(tiny("x", "a"), tiny("y", "b"));
  CHECK(p.state.rel.empty());
  REQUIRE(p.classes.size() == 2);
  CHECK(p.assignment == std::vector<Name>{nm("a"), nm("b")});
}

TEST_CASE("allocation synchronizes the freshly stored registers") {
  Automaton session = load_corpus("session.aut");
  ProductStep step = product_transition(session, session, {0, 0, {}}, std::nullopt);
  CHECK(step.target == ProductStateKey{1, 1, {{0, 0}}});
  REQUIRE(step.history.size() == 1);
  CHECK(!step.history[0].has_value());  // the joint register takes the fresh name
}

TEST_CASE("a two-sided class fires both register transitions") {
  Automaton session = load_corpus("session.aut");
  ProductStep step = product_transition(session, session, {1, 1, {{0, 0}}}, 0);
  CHECK(step.target == ProductStateKey{0, 0, {}});
  CHECK(step.history.empty());
}

TEST_CASE("a singleton class fires one register against the other side's star") {
  Automaton all = load_corpus("all.aut");
  Automaton session = load_corpus("session.aut");
  // (q0, q1, {}) has one class: the session register alone.
  ProductStep step = product_transition(all, session, {0, 1, {}}, 0);
  CHECK(step.target == ProductStateKey{0, 0, {}});
  CHECK(step.history.empty());
}

TEST_CASE("the universal automaton is a neutral product factor") {
  Automaton all = load_corpus("all.aut");
  Automaton session = load_corpus("session.aut");
  ProductAutomaton p = build_product(all, session);
  REQUIRE(p.automaton.states.size() == 2);
  CHECK(find_state(p, {0, 0, {}}).has_value());
  CHECK(find_state(p, {0, 1, {}}).has_value());
  // Same shape as the session automaton itself.
  CHECK(p.automaton.transitions.size() == session.transitions.size());
}

TEST_CASE("identical deterministic factors stay in lockstep") {
  Automaton session = load_corpus("session.aut");
  ProductAutomaton p = build_product(session, session);
  // Reading one word with both copies from equal initial assignments keeps
  // the assignments equal, so only the diagonal with the full relation is
  // reachable.
  REQUIRE(p.automaton.states.size() == 2);
  CHECK(find_state(p, {0, 0, {}}).has_value());
  CHECK(find_state(p, {1, 1, {{0, 0}}}).has_value());
}

TEST_CASE("product of the universal automaton with itself") {
  Automaton all = load_corpus("all.aut");
  ProductAutomaton p = build_product(all, all);
  CHECK(p.automaton.states.size() == 1);
  REQUIRE(p.automaton.transitions.size() == 1);
  CHECK(p.automaton.transitions[0].label.is_star());
  CHECK(p.automaton.transitions[0].target == 0);
}

TEST_CASE("desynchronized factors reach one-sided classes") {
  Automaton session = load_corpus("session.aut");
  Automaton trio = load_corpus("trio.aut");
  ProductAutomaton p = build_product(session, trio);
  // The session register can be bound to a trio register by a one-sided
  // fresh step; such states carry a two-sided class.
  bool saw_joint = false;
  bool saw_singletons = false;
  for (const ProductStateInfo& info : p.info) {
    for (const QuotientClass& c : info.classes) {
      if (c.left && c.right) saw_joint = true;
      if (!c.left || !c.right) saw_singletons = true;
    }
  }
  CHECK(saw_joint);
  CHECK(saw_singletons);
}

TEST_CASE("projections read the class holding the register") {
  Automaton session = load_corpus("session.aut");
  ProductAutomaton p = build_product(session, session);
  StateId joint = *find_state(p, {1, 1, {{0, 0}}});

  Configuration c{joint, {nm("a")}};
  CHECK(project(p, c, 1) == Configuration{1, {nm("a")}});
  CHECK(project(p, c, 2) == Configuration{1, {nm("a")}});

  StateId start = *find_state(p, {0, 0, {}});
  CHECK(project(p, Configuration{start, {}}, 2) == Configuration{0, {}});
}

TEST_CASE("projection of singleton classes picks the owning side") {
  Automaton all = load_corpus("all.aut");
  Automaton session = load_corpus("session.aut");
  ProductAutomaton p = build_product(all, session);
  StateId s = *find_state(p, {0, 1, {}});
  Configuration c{s, {nm("b")}};
  CHECK(project(p, c, 1) == Configuration{0, {}});
  CHECK(project(p, c, 2) == Configuration{1, {nm("b")}});
}

TEST_CASE("every corpus product validates with a trivially true condition") {
  const auto& automata = corpus();
  for (std::size_t i = 0; i < automata.size(); ++i) {
    for (std::size_t j = 0; j < automata.size(); ++j) {
      ProductAutomaton p = build_product(automata[i], automata[j]);
      for (const ProductStateInfo& info : p.info) CHECK(is_valid_relation(info.key.rel));

      Automaton with_true = p.automaton;
      with_true.accepting = AcceptingCondition::explicit_sets({}).complemented();
      CHECK(validate(to_raw(with_true)).ok());

      // Serialization of products is deterministic.
      CHECK(serialize_automaton(build_product(automata[i], automata[j]).automaton) ==
            serialize_automaton(p.automaton));
    }
  }
}
