#include "nomega/automaton.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace nomega {

AcceptingCondition AcceptingCondition::explicit_sets(std::vector<StateSet> sets, bool negated) {
  AcceptingCondition c;
  c.sets_ = std::move(sets);
  c.negated_ = negated;
  return c;
}

AcceptingCondition AcceptingCondition::from_predicate(Predicate p) {
  AcceptingCondition c;
  c.predicate_ = std::move(p);
  return c;
}

AcceptingCondition AcceptingCondition::complemented() const {
  AcceptingCondition c = *this;
  c.negated_ = !c.negated_;
  return c;
}

bool AcceptingCondition::accepts(const StateSet& inf) const {
  bool base;
  if (predicate_) {
    base = predicate_(inf);
  } else {
    base = std::find(sets_.begin(), sets_.end(), inf) != sets_.end();
  }
  return base != negated_;
}

std::vector<StateSet> AcceptingCondition::materialize(std::size_t state_count,
                                                      std::size_t max_states) const {
  if (state_count > max_states)
    throw std::runtime_error("accepting condition over " + std::to_string(state_count) +
                             " states is too large to materialize");
  std::vector<StateSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << state_count); ++mask) {
    StateSet s;
    for (std::size_t q = 0; q < state_count; ++q)
      if (mask & (std::size_t{1} << q)) s.insert(q);
    if (accepts(s)) out.push_back(std::move(s));
  }
  return out;
}

std::size_t Automaton::transition_index(StateId q, const Label& l) const {
  return l.is_star() ? star_transition[q] : reg_transition[q][l.reg_index()];
}

const Transition& Automaton::transition_for(StateId q, const Label& l) const {
  return transitions[transition_index(q, l)];
}

std::optional<StateId> Automaton::state_by_name(std::string_view name) const {
  for (StateId q = 0; q < states.size(); ++q)
    if (states[q].name == name) return q;
  return std::nullopt;
}

namespace {

std::string label_text(const RawTransition& t) {
  return t.source + " -" + t.label + "-> " + t.target;
}

}  // namespace

ValidationResult validate(const RawAutomaton& raw) {
  ValidationResult result;
  auto flag = [&result](std::string rule, std::string detail) {
    result.violations.push_back({std::move(rule), std::move(detail)});
  };

  if (!is_valid_token(raw.name)) flag("token", "invalid automaton name '" + raw.name + "'");

  // States and their registers. Ids index into raw.states (first occurrence).
  std::map<std::string, StateId> state_ids;
  for (StateId id = 0; id < raw.states.size(); ++id) {
    const RawState& s = raw.states[id];
    if (!is_valid_token(s.name)) flag("token", "invalid state name '" + s.name + "'");
    if (state_ids.count(s.name)) {
      flag("duplicate-state", "state '" + s.name + "' declared twice");
      continue;
    }
    state_ids.emplace(s.name, id);
    std::unordered_set<std::string> seen;
    for (const std::string& r : s.registers) {
      if (!is_valid_token(r)) flag("token", "invalid register name '" + r + "' at " + s.name);
      if (!seen.insert(r).second)
        flag("duplicate-register", "register '" + r + "' declared twice at " + s.name);
    }
  }

  auto lookup_state = [&](const std::string& name) -> std::optional<StateId> {
    auto it = state_ids.find(name);
    if (it == state_ids.end()) return std::nullopt;
    return it->second;
  };
  auto lookup_reg = [&](StateId q, const std::string& token) -> std::optional<RegId> {
    const auto& regs = raw.states[q].registers;
    for (RegId r = 0; r < regs.size(); ++r)
      if (regs[r] == token) return r;
    return std::nullopt;
  };

  // Initial state and assignment.
  std::optional<StateId> initial = lookup_state(raw.initial_state);
  if (!initial) flag("unknown-state", "initial state '" + raw.initial_state + "' not declared");

  std::vector<Name> initial_assignment;
  if (initial) {
    const auto& regs = raw.states[*initial].registers;
    initial_assignment.assign(regs.size(), Name{});
    std::vector<bool> assigned(regs.size(), false);
    std::set<Name> used;
    for (const auto& [reg, name] : raw.initial_assignment) {
      auto r = lookup_reg(*initial, reg);
      if (!r) {
        flag("initial-assignment",
             "init assigns unknown register '" + reg + "' of " + raw.initial_state);
        continue;
      }
      if (assigned[*r]) {
        flag("initial-assignment", "init assigns register '" + reg + "' twice");
        continue;
      }
      if (!is_valid_token(name.token))
        flag("token", "invalid name '" + name.token + "' in init");
      if (!used.insert(name).second)
        flag("initial-assignment",
             "init is not injective: name '" + name.token + "' assigned twice");
      assigned[*r] = true;
      initial_assignment[*r] = name;
    }
    for (RegId r = 0; r < regs.size(); ++r)
      if (!assigned[r])
        flag("initial-assignment", "init leaves register '" + regs[r] + "' unassigned");
  }

  // Transitions.
  std::vector<Transition> transitions;
  // Per state, per label ("*" or register token): transition count.
  std::vector<std::map<std::string, int>> label_count(raw.states.size());
  for (const RawTransition& t : raw.transitions) {
    auto src = lookup_state(t.source);
    auto tgt = lookup_state(t.target);
    if (!src) flag("unknown-state", "transition source '" + t.source + "' not declared");
    if (!tgt) flag("unknown-state", "transition target '" + t.target + "' not declared");
    if (!src || !tgt) continue;

    Label label = Label::star();
    bool label_ok = true;
    if (t.label != "*") {
      auto r = lookup_reg(*src, t.label);
      if (!r) {
        flag("unknown-register",
             "label '" + t.label + "' is not a register of " + t.source);
        label_ok = false;
      } else {
        label = Label::reg(*r);
      }
    }
    if (label_ok) ++label_count[*src][t.label];

    const auto& target_regs = raw.states[*tgt].registers;
    History history(target_regs.size(), std::nullopt);
    std::vector<bool> mapped(target_regs.size(), false);
    std::set<std::string> used_sources;
    bool history_ok = true;
    for (const auto& [dst, srcreg] : t.history) {
      auto d = lookup_reg(*tgt, dst);
      if (!d) {
        flag("history-domain", "history of " + label_text(t) + " maps unknown register '" +
                                   dst + "' of " + t.target);
        history_ok = false;
        continue;
      }
      if (mapped[*d]) {
        flag("history-domain",
             "history of " + label_text(t) + " maps register '" + dst + "' twice");
        history_ok = false;
        continue;
      }
      mapped[*d] = true;
      if (!used_sources.insert(srcreg).second)
        flag("history-injective", "history of " + label_text(t) +
                                      " is not injective: '" + srcreg + "' used twice");
      if (srcreg == "*") {
        if (!label.is_star() || t.label != "*")
          flag("history-star", "history of " + label_text(t) +
                                   " uses '*' on a register-labelled transition");
        history[*d] = std::nullopt;
      } else {
        auto s = lookup_reg(*src, srcreg);
        if (!s) {
          flag("unknown-register", "history of " + label_text(t) +
                                       " reads unknown register '" + srcreg + "' of " + t.source);
          history_ok = false;
        } else {
          history[*d] = *s;
        }
      }
    }
    for (RegId d = 0; d < target_regs.size(); ++d)
      if (!mapped[d]) {
        flag("history-domain", "history of " + label_text(t) + " leaves register '" +
                                   target_regs[d] + "' of " + t.target + " unmapped");
        history_ok = false;
      }
    if (!history_ok) continue;
    transitions.push_back({*src, label, *tgt, std::move(history)});
  }

  // Determinism: exactly one transition per label in registers(q) ∪ {*}.
  for (const auto& [name, q] : state_ids) {
    std::vector<std::string> wanted = raw.states[q].registers;
    wanted.push_back("*");
    for (const std::string& l : wanted) {
      auto it = label_count[q].find(l);
      int n = it == label_count[q].end() ? 0 : it->second;
      if (n == 0)
        flag("determinism", "missing transition for label " + l + " at " + name);
      else if (n > 1)
        flag("determinism", "duplicate transition for label " + l + " at " + name);
    }
  }

  // Accepting sets refer to declared states.
  std::vector<StateSet> accepting_sets;
  for (const auto& set : raw.accepting_sets) {
    StateSet s;
    for (const std::string& q : set) {
      auto id = lookup_state(q);
      if (!id)
        flag("unknown-state", "accepting set mentions undeclared state '" + q + "'");
      else
        s.insert(*id);
    }
    accepting_sets.push_back(std::move(s));
  }

  if (!result.violations.empty()) return result;

  Automaton a;
  a.name = raw.name;
  for (const RawState& s : raw.states) a.states.push_back({s.name, s.registers});
  a.initial_state = *initial;
  a.initial_assignment = std::move(initial_assignment);
  a.transitions = std::move(transitions);
  a.accepting = AcceptingCondition::explicit_sets(std::move(accepting_sets), raw.accepting_negated);
  a.star_transition.assign(a.states.size(), 0);
  a.reg_transition.resize(a.states.size());
  for (StateId q = 0; q < a.states.size(); ++q)
    a.reg_transition[q].assign(a.states[q].registers.size(), 0);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    if (t.label.is_star())
      a.star_transition[t.source] = i;
    else
      a.reg_transition[t.source][t.label.reg_index()] = i;
  }
  result.automaton = std::move(a);
  return result;
}

Automaton validate_or_throw(const RawAutomaton& raw) {
  ValidationResult r = validate(raw);
  if (r.ok()) return std::move(*r.automaton);
  std::string msg = "invalid automaton '" + raw.name + "':";
  for (const Violation& v : r.violations) msg += "\n  [" + v.rule + "] " + v.detail;
  throw std::invalid_argument(msg);
}

ValidationResult complete_with_sink(const RawAutomaton& raw) {
  RawAutomaton completed = raw;

  // Labels already present, per declared state.
  std::map<std::string, std::set<std::string>> present;
  for (const RawTransition& t : completed.transitions) present[t.source].insert(t.label);

  std::vector<std::pair<std::string, std::string>> missing;  // (state, label)
  for (const RawState& s : completed.states) {
    std::vector<std::string> wanted = s.registers;
    wanted.push_back("*");
    for (const std::string& l : wanted)
      if (!present[s.name].count(l)) missing.emplace_back(s.name, l);
  }
  if (missing.empty()) return validate(completed);

  std::string sink = "sink";
  auto taken = [&completed](const std::string& n) {
    for (const RawState& s : completed.states)
      if (s.name == n) return true;
    return false;
  };
  for (int i = 1; taken(sink); ++i) sink = "sink_" + std::to_string(i);

  completed.states.push_back({sink, {}});
  for (const auto& [state, label] : missing)
    completed.transitions.push_back({state, label, sink, {}});
  completed.transitions.push_back({sink, "*", sink, {}});
  return validate(completed);
}

RawAutomaton to_raw(const Automaton& a) {
  RawAutomaton raw;
  raw.name = a.name;
  for (const State& s : a.states) raw.states.push_back({s.name, s.registers});
  raw.initial_state = a.states[a.initial_state].name;
  const auto& init_regs = a.states[a.initial_state].registers;
  for (RegId r = 0; r < init_regs.size(); ++r)
    raw.initial_assignment.emplace_back(init_regs[r], a.initial_assignment[r]);
  for (const Transition& t : a.transitions) {
    RawTransition rt;
    rt.source = a.states[t.source].name;
    rt.label = t.label.is_star() ? "*" : a.states[t.source].registers[t.label.reg_index()];
    rt.target = a.states[t.target].name;
    const auto& tgt_regs = a.states[t.target].registers;
    for (RegId d = 0; d < tgt_regs.size(); ++d)
      rt.history.emplace_back(tgt_regs[d],
                              t.history[d] ? a.states[t.source].registers[*t.history[d]]
                                           : std::string("*"));
    raw.transitions.push_back(std::move(rt));
  }
  std::vector<StateSet> sets = a.accepting.has_explicit_sets()
                                   ? a.accepting.sets()
                                   : a.accepting.materialize(a.states.size());
  raw.accepting_negated = a.accepting.has_explicit_sets() && a.accepting.negated();
  for (const StateSet& s : sets) {
    std::vector<std::string> names;
    for (StateId q : s) names.push_back(a.states[q].name);
    raw.accepting_sets.push_back(std::move(names));
  }
  return raw;
}

}  // namespace nomega
