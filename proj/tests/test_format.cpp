#include <doctest.h>

#include "nomega/boolean.hpp"
#include "nomega/format.hpp"
#include "test_support.hpp"

using namespace nomega;
using namespace nomega::test;

TEST_CASE("session file parses and validates") {
  RawAutomaton raw = parse_automaton(read_corpus_file("session.aut"));
  CHECK(raw.name == "session");
  CHECK(raw.states.size() == 2);
  CHECK(raw.transitions.size() == 3);
  CHECK(validate(raw).ok());
}

TEST_CASE("universal file parses") {
  RawAutomaton raw = parse_automaton(read_corpus_file("all.aut"));
  CHECK(raw.states.size() == 1);
  CHECK(raw.accepting_sets.size() == 1);
  CHECK(validate(raw).ok());
}

TEST_CASE("missing init line is an error") {
  try {
    parse_automaton("automaton a\nstate q0 []\naccept {q0}\ntrans q0 * q0 {}\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("expected exactly one init") != std::string::npos);
  }
}

TEST_CASE("second init line is an error") {
  CHECK_THROWS_AS(parse_automaton("automaton a\nstate q0 []\ninit q0 {}\ninit q0 {}\n"),
                  ParseError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_automaton("automaton a\nstate q0 ]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position.line == 2);
    CHECK(e.position.column == 10);
    CHECK(std::string(e.what()).find("expected '['") != std::string::npos);
  }
}

TEST_CASE("comment lines and blank lines are ignored") {
  RawAutomaton raw = parse_automaton(
      "# a comment\n"
      "automaton a\n"
      "\n"
      "state q0 []\n"
      "#another comment\n"
      "init q0 {}\n"
      "accept {q0}\n"
      "trans q0 * q0 {}\n");
  CHECK(validate(raw).ok());
}

TEST_CASE("accept lines union and may hold several sets") {
  RawAutomaton raw = parse_automaton(
      "automaton a\n"
      "state q0 []\n"
      "state q1 []\n"
      "init q0 {}\n"
      "accept {q0} {q1}\n"
      "accept {q0, q1}\n"
      "trans q0 * q1 {}\n"
      "trans q1 * q0 {}\n");
  CHECK(raw.accepting_sets.size() == 3);
  CHECK(!raw.accepting_negated);
}

TEST_CASE("complement-of marks the condition negated") {
  RawAutomaton raw = parse_automaton(read_corpus_file("empty.aut"));
  CHECK(raw.accepting_negated);
  Automaton a = validate_or_throw(raw);
  CHECK(a.accepting.negated());
  CHECK(!a.accepting.accepts(StateSet{0}));
  CHECK(a.accepting.accepts(StateSet{}));
}

TEST_CASE("mixing plain and complement-of accept lines is rejected") {
  CHECK_THROWS_AS(parse_automaton("automaton a\nstate q0 []\ninit q0 {}\n"
                                  "accept {q0}\naccept complement-of {q0}\n"
                                  "trans q0 * q0 {}\n"),
                  ParseError);
}

TEST_CASE("empty braces denote the empty accepting set, not no sets") {
  RawAutomaton raw = parse_automaton(
      "automaton a\nstate q0 []\ninit q0 {}\naccept {}\ntrans q0 * q0 {}\n");
  REQUIRE(raw.accepting_sets.size() == 1);
  CHECK(raw.accepting_sets[0].empty());
}

TEST_CASE("serialization round-trips token for token") {
  std::string text = read_corpus_file("session.aut");
  Automaton a = validate_or_throw(parse_automaton(text));
  CHECK(token_stream(serialize_automaton(a)) == token_stream(text));
}

TEST_CASE("serialized intersection parses and validates") {
  Automaton a = intersect(load_corpus("all.aut"), load_corpus("session.aut"));
  std::string text = serialize_automaton(a);
  CHECK(validate(parse_automaton(text)).ok());
}

TEST_CASE("serialized complement mentions complement-of") {
  std::string text = serialize_automaton(complement(load_corpus("session.aut")));
  CHECK(text.find("complement-of") != std::string::npos);
  CHECK(validate(parse_automaton(text)).ok());
}

TEST_CASE("word parsing") {
  UPWord w = parse_upword("; a a");
  CHECK(w.prefix.empty());
  CHECK(w.period == word_of({"a", "a"}));

  w = parse_upword("a ; b");
  CHECK(w.prefix == word_of({"a"}));
  CHECK(w.period == word_of({"b"}));

  CHECK_THROWS_AS(parse_upword("a ;"), ParseError);
  CHECK_THROWS_AS(parse_upword("a b c"), ParseError);
  CHECK_THROWS_AS(parse_upword("a ; b ; c"), ParseError);
}

TEST_CASE("word formatting round-trips") {
  for (const UPWord& w : {up({}, {"a", "a"}), up({"a"}, {"b"}), up({"a", "b"}, {"c", "#0"})}) {
    CHECK(parse_upword(format_upword(w)) == w);
  }
}

TEST_CASE("configuration formatting") {
  Automaton a = load_corpus("trio.aut");
  CHECK(format_configuration(a, initial_configuration(a)) == "q0 {x0=a, y0=b, z0=c}");
}
