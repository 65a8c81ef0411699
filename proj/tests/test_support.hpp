#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/format.hpp"
#include "nomega/loops.hpp"

namespace nomega::test {

inline std::string read_corpus_file(const std::string& name) {
  std::string path = std::string(NOMEGA_CORPUS_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing corpus file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline Automaton load_corpus(const std::string& name) {
  return validate_or_throw(parse_automaton(read_corpus_file(name)));
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"all", "session", "trio",
                                              "rot3", "refresh", "empty"};
  return names;
}

inline const std::vector<Automaton>& corpus() {
  static const std::vector<Automaton> automata = [] {
    std::vector<Automaton> out;
    for (const std::string& n : corpus_names()) out.push_back(load_corpus(n + ".aut"));
    return out;
  }();
  return automata;
}

inline Name nm(const std::string& token) { return Name{token}; }

inline Word word_of(std::initializer_list<std::string> tokens) {
  Word w;
  for (const auto& t : tokens) w.push_back(Name{t});
  return w;
}

inline UPWord up(std::initializer_list<std::string> u, std::initializer_list<std::string> v) {
  return UPWord{word_of(u), word_of(v)};
}

inline UPWord random_upword(std::mt19937_64& rng, const std::vector<Name>& pool,
                            std::size_t max_u = 3, std::size_t max_v = 4) {
  std::uniform_int_distribution<std::size_t> ulen(0, max_u);
  std::uniform_int_distribution<std::size_t> vlen(1, max_v);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  UPWord w;
  for (std::size_t i = ulen(rng); i > 0; --i) w.prefix.push_back(pool[pick(rng)]);
  for (std::size_t i = vlen(rng); i > 0; --i) w.period.push_back(pool[pick(rng)]);
  return w;
}

/// A random permutation of `movable` (identity elsewhere), for equivariance
/// checks: callers pass names disjoint from whatever must stay fixed.
inline NamePermutation random_permutation(std::mt19937_64& rng, std::vector<Name> movable) {
  std::vector<Name> shuffled = movable;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::vector<std::pair<Name, Name>> pairs;
  for (std::size_t i = 0; i < movable.size(); ++i) pairs.emplace_back(movable[i], shuffled[i]);
  return NamePermutation::from_pairs(pairs);
}

/// A random simple-cycle loop embedded in a validated automaton (missing
/// labels routed to a sink), together with the loop transition indices
/// (0..n-1: the loop transitions are listed first) and an initial assignment
/// for the base state.
struct RandomLoop {
  Automaton automaton;
  Loop loop;
  std::vector<Name> assignment;
};

inline RandomLoop random_loop(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);

  const std::size_t n = len(rng);
  for (;;) {
    // Register counts around the cycle; each history needs
    // |regs(target)| <= |regs(source)| + (1 if the label is fresh).
    std::vector<std::size_t> regs(n);
    std::vector<bool> star_label(n);
    std::uniform_int_distribution<std::size_t> rc(0, 3);
    for (std::size_t k = 0; k < n; ++k) regs[k] = rc(rng);
    bool feasible = true;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t next = regs[(k + 1) % n];
      star_label[k] = regs[k] == 0 || coin(rng) == 1;
      if (next > regs[k] + (star_label[k] ? 1 : 0)) feasible = false;
    }
    if (!feasible) continue;

    RawAutomaton raw;
    raw.name = "loopcase";
    for (std::size_t k = 0; k < n; ++k) {
      RawState s;
      s.name = "L" + std::to_string(k);
      for (std::size_t r = 0; r < regs[k]; ++r) s.registers.push_back("g" + std::to_string(r));
      raw.states.push_back(std::move(s));
    }
    raw.initial_state = "L0";
    for (std::size_t r = 0; r < regs[0]; ++r)
      raw.initial_assignment.emplace_back("g" + std::to_string(r), Name{"n" + std::to_string(r)});
    std::vector<std::string> all_states;
    for (const RawState& s : raw.states) all_states.push_back(s.name);
    raw.accepting_sets.push_back(all_states);

    for (std::size_t k = 0; k < n; ++k) {
      std::size_t next = (k + 1) % n;
      RawTransition t;
      t.source = "L" + std::to_string(k);
      t.target = "L" + std::to_string(next);
      if (star_label[k]) {
        t.label = "*";
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, regs[k] - 1);
        t.label = "g" + std::to_string(pick(rng));
      }
      // Injective history: shuffle the sources (registers plus, on fresh
      // labels, the fresh marker) and hand them out.
      std::vector<std::string> sources;
      for (std::size_t r = 0; r < regs[k]; ++r) sources.push_back("g" + std::to_string(r));
      if (star_label[k]) sources.push_back("*");
      std::shuffle(sources.begin(), sources.end(), rng);
      for (std::size_t r = 0; r < regs[next]; ++r)
        t.history.emplace_back("g" + std::to_string(r), sources[r]);
      raw.transitions.push_back(std::move(t));
    }

    ValidationResult result = complete_with_sink(raw);
    if (!result.ok()) throw std::logic_error("random loop generator produced an invalid automaton");

    RandomLoop out;
    out.automaton = std::move(*result.automaton);
    for (std::size_t k = 0; k < n; ++k) out.loop.transitions.push_back(k);
    out.assignment = out.automaton.initial_assignment;
    return out;
  }
}

/// Legal history edits of single transitions: swaps of two entries and
/// redirections to an unused source. Each mutant still validates but differs
/// semantically wherever the edited transition fires, since injective
/// assignments give distinct sources distinct values.
struct Mutation {
  std::string description;
  Automaton automaton;
};

inline std::vector<Mutation> history_mutations(const Automaton& a) {
  std::vector<Mutation> out;
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    std::string where = a.states[t.source].name + "-" +
                        (t.label.is_star() ? "*" : a.states[t.source].registers[t.label.reg_index()]) +
                        ">" + a.states[t.target].name;
    for (RegId d1 = 0; d1 < t.history.size(); ++d1) {
      for (RegId d2 = d1 + 1; d2 < t.history.size(); ++d2) {
        Automaton m = a;
        std::swap(m.transitions[i].history[d1], m.transitions[i].history[d2]);
        out.push_back({"swap entries " + std::to_string(d1) + "," + std::to_string(d2) +
                           " of " + where,
                       std::move(m)});
      }
    }
    std::set<std::optional<RegId>> used(t.history.begin(), t.history.end());
    for (RegId d = 0; d < t.history.size(); ++d) {
      for (RegId s = 0; s < a.register_count(t.source); ++s) {
        if (used.count(std::optional<RegId>(s))) continue;
        Automaton m = a;
        m.transitions[i].history[d] = s;
        out.push_back({"redirect entry " + std::to_string(d) + " to register " +
                           std::to_string(s) + " in " + where,
                       std::move(m)});
      }
      if (t.label.is_star() && !used.count(std::nullopt) && t.history[d].has_value()) {
        Automaton m = a;
        m.transitions[i].history[d] = std::nullopt;
        out.push_back({"redirect entry " + std::to_string(d) + " to fresh in " + where,
                       std::move(m)});
      }
    }
  }
  return out;
}

/// The parser's token stream, for whitespace-insensitive text comparison.
inline std::vector<std::string> token_stream(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i < line.size() && line[i] == '#') continue;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) out.push_back(std::exchange(cur, ""));
    };
    for (; i < line.size(); ++i) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else if (std::string("[]{}=,*").find(c) != std::string::npos) {
        flush();
        out.emplace_back(1, c);
      } else {
        cur += c;
      }
    }
    flush();
  }
  return out;
}

}  // namespace nomega::test
