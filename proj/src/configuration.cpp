#include "nomega/configuration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace nomega {

Configuration initial_configuration(const Automaton& a) {
  return {a.initial_state, a.initial_assignment};
}

bool is_valid_configuration(const Automaton& a, const Configuration& c) {
  if (c.state >= a.states.size()) return false;
  if (c.assignment.size() != a.register_count(c.state)) return false;
  std::set<Name> seen;
  for (const Name& n : c.assignment)
    if (!seen.insert(n).second) return false;
  return true;
}

Configuration apply_transition(const Automaton& a, const Transition& t,
                               const Configuration& c, const Name& symbol) {
  Configuration next;
  next.state = t.target;
  next.assignment.resize(a.register_count(t.target));
  for (RegId d = 0; d < next.assignment.size(); ++d)
    next.assignment[d] = t.history[d] ? c.assignment[*t.history[d]] : symbol;
  return next;
}

Configuration step(const Automaton& a, const Configuration& c, const Name& symbol) {
  for (RegId r = 0; r < c.assignment.size(); ++r) {
    if (c.assignment[r] == symbol)
      return apply_transition(a, a.transition_for(c.state, Label::reg(r)), c, symbol);
  }
  return apply_transition(a, a.transition_for(c.state, Label::star()), c, symbol);
}

RunRecord run_prefix(const Automaton& a, const Configuration& start,
                     std::span<const Name> word) {
  RunRecord rec;
  rec.final = start;
  rec.visited.reserve(word.size() + 1);
  rec.visited.push_back(start.state);
  for (const Name& symbol : word) {
    rec.final = step(a, rec.final, symbol);
    rec.visited.push_back(rec.final.state);
  }
  return rec;
}

Membership up_member(const Automaton& a, const UPWord& w) {
  if (w.period.empty()) throw std::invalid_argument("ultimately periodic word needs a nonempty period");

  Configuration c = initial_configuration(a);
  for (const Name& symbol : w.prefix) c = step(a, c, symbol);

  // Configurations at v-block boundaries repeat within a finite horizon;
  // the Inf set is everything visited inside the repeating block segment.
  std::map<Configuration, std::size_t> boundary;
  std::vector<StateSet> block_states;
  for (;;) {
    auto [it, inserted] = boundary.emplace(c, block_states.size());
    if (!inserted) {
      StateSet inf;
      for (std::size_t b = it->second; b < block_states.size(); ++b)
        inf.insert(block_states[b].begin(), block_states[b].end());
      return {a.accepting.accepts(inf), std::move(inf)};
    }
    StateSet visited;
    for (const Name& symbol : w.period) {
      c = step(a, c, symbol);
      visited.insert(c.state);
    }
    block_states.push_back(std::move(visited));
  }
}

}  // namespace nomega
