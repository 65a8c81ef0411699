#include "nomega/loops.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nomega {

void check_loop(const Automaton& a, const Loop& l) {
  if (l.transitions.empty()) throw std::invalid_argument("loop must have at least one transition");
  for (std::size_t k = 0; k < l.transitions.size(); ++k) {
    if (l.transitions[k] >= a.transitions.size())
      throw std::invalid_argument("loop transition index out of range");
    const Transition& cur = a.transitions[l.transitions[k]];
    const Transition& next = a.transitions[l.transitions[(k + 1) % l.transitions.size()]];
    if (cur.target != next.source)
      throw std::invalid_argument("loop transitions do not chain");
  }
}

StateId loop_base(const Automaton& a, const Loop& l) {
  check_loop(a, l);
  return a.transitions[l.transitions.front()].source;
}

namespace {

const Transition& at(const Automaton& a, const Loop& l, std::size_t k) {
  return a.transitions[l.transitions[k % l.transitions.size()]];
}

}  // namespace

PartialRegMap survival_map(const Automaton& a, const Loop& l) {
  StateId p0 = loop_base(a, l);
  const std::size_t n = l.transitions.size();
  PartialRegMap out(a.register_count(p0));
  for (RegId x = 0; x < out.size(); ++x) {
    // Compose the histories backwards through the loop; a fresh entry kills
    // the chain.
    std::optional<RegId> cur = x;
    for (std::size_t k = n; k-- > 0;) {
      cur = at(a, l, k).history[*cur];
      if (!cur) break;
    }
    out[x] = cur;
  }
  return out;
}

namespace {

// Iterates the survival map k times; nullopt when any stage is undefined.
std::optional<RegId> iterate(const PartialRegMap& m, RegId x, std::size_t k) {
  std::optional<RegId> cur = x;
  while (k-- > 0) {
    cur = m[*cur];
    if (!cur) return std::nullopt;
  }
  return cur;
}

}  // namespace

Survivors survivors(const Automaton& a, const Loop& l) {
  PartialRegMap m = survival_map(a, l);
  Survivors out;
  for (RegId x = 0; x < m.size(); ++x) {
    // Over a finite register set an injective partial map keeps x in its
    // domain forever exactly when x lies on a cycle.
    if (iterate(m, x, m.size()))
      out.surviving.push_back(x);
    else
      out.transient.push_back(x);
  }
  return out;
}

unsigned restore_period(const Automaton& a, const Loop& l) {
  PartialRegMap m = survival_map(a, l);
  Survivors s = survivors(a, l);
  std::set<RegId> pending(s.surviving.begin(), s.surviving.end());
  unsigned period = 1;
  while (!pending.empty()) {
    RegId start = *pending.begin();
    unsigned len = 0;
    RegId cur = start;
    do {
      pending.erase(cur);
      cur = *m[cur];
      ++len;
    } while (cur != start);
    period = static_cast<unsigned>(std::lcm(period, len));
  }
  return period;
}

std::vector<RegId> forget_chain(const Automaton& a, const Loop& l, RegId x) {
  StateId p0 = loop_base(a, l);
  const std::size_t n = l.transitions.size();
  const std::size_t bound = n * a.register_count(p0) + n;

  std::vector<RegId> chain{x};
  RegId cur = x;
  for (std::size_t j = 0;; ++j) {
    if (j > bound)
      throw std::logic_error("forget chain exceeded its bound; register '" +
                             a.states[p0].registers[x] + "' survives the loop");
    // σ_j⁻¹: the target register inheriting cur's value, if any.
    const Transition& t = at(a, l, j);
    std::optional<RegId> next;
    for (RegId d = 0; d < t.history.size(); ++d) {
      if (t.history[d] && *t.history[d] == cur) {
        next = d;
        break;
      }
    }
    if (!next) return chain;
    cur = *next;
    chain.push_back(cur);
  }
}

unsigned forget_traversals(const Automaton& a, const Loop& l) {
  Survivors s = survivors(a, l);
  const std::size_t n = l.transitions.size();
  std::size_t longest = 0;  // max |J_x|; the +1 below covers the dropping step
  for (RegId x : s.transient)
    longest = std::max(longest, forget_chain(a, l, x).size());
  std::size_t steps = longest + 1;
  return static_cast<unsigned>((steps + n - 1) / n);
}

ReinitInfo reinit_tuples(const Automaton& a, const Loop& l) {
  StateId p0 = loop_base(a, l);
  Survivors s = survivors(a, l);
  const std::size_t n = l.transitions.size();
  const std::size_t bound = n * a.register_count(p0) + n;

  ReinitInfo out;
  for (RegId x : s.transient) {
    // Walk backwards from x at the end of a traversal until the value's
    // origin turns out to be a fresh consumption.
    RegId cur = x;
    std::optional<std::size_t> position;
    unsigned traversals = 0;
    for (std::size_t back = 1; back <= bound + 1; ++back) {
      std::size_t idx = (n - (back % n)) % n;
      const std::optional<RegId>& src = at(a, l, idx).history[cur];
      if (!src) {
        position = idx;
        traversals = static_cast<unsigned>((back + n - 1) / n);
        break;
      }
      cur = *src;
    }
    if (!position)
      throw std::logic_error("reinit walk exceeded its bound; register '" +
                             a.states[p0].registers[x] + "' survives the loop");
    out.tuples.push_back({x, *position, traversals});
  }
  out.traversals = 1;
  for (const ReinitTuple& t : out.tuples)
    out.traversals = std::max(out.traversals, t.traversals);
  return out;
}

LoopAnalysis analyze_loop(const Automaton& a, const Loop& l) {
  LoopAnalysis out;
  out.survival = survival_map(a, l);
  Survivors s = survivors(a, l);
  out.surviving = s.surviving;
  out.transient = s.transient;
  out.restore_period = restore_period(a, l);
  for (RegId x : s.transient) out.chain_lengths.emplace_back(x, forget_chain(a, l, x).size());
  out.forget_traversals = forget_traversals(a, l);
  ReinitInfo reinit = reinit_tuples(a, l);
  out.reinit = reinit.tuples;
  out.reinit_traversals = reinit.traversals;
  return out;
}

namespace {

std::set<Name> image(const Configuration& c) {
  return std::set<Name>(c.assignment.begin(), c.assignment.end());
}

}  // namespace

PhaseResult forget_phase(const Automaton& a, const Loop& l, const Configuration& start,
                         unsigned traversals, FreshNameGenerator& gen) {
  if (start.state != loop_base(a, l))
    throw std::invalid_argument("configuration is not at the loop's base state");
  const std::size_t n = l.transitions.size();
  PhaseResult out;
  out.end = start;
  for (unsigned g = 0; g < traversals; ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      const Transition& t = at(a, l, i);
      Name symbol;
      if (t.label.is_star()) {
        symbol = gen.next();
        if (image(out.end).count(symbol))
          throw std::logic_error("generated name is not fresh for the configuration");
      } else {
        symbol = out.end.assignment[t.label.reg_index()];
      }
      out.word.push_back(symbol);
      out.end = apply_transition(a, t, out.end, symbol);
    }
  }
  return out;
}

PhaseResult forget_phase(const Automaton& a, const Loop& l, const Configuration& start,
                         unsigned traversals) {
  FreshNameGenerator gen(image(start));
  return forget_phase(a, l, start, traversals, gen);
}

PhaseResult init_phase(const Automaton& a, const Loop& l, const Configuration& start,
                       const std::vector<Name>& target, FreshNameGenerator& gen) {
  StateId p0 = loop_base(a, l);
  if (start.state != p0)
    throw std::invalid_argument("configuration is not at the loop's base state");
  if (target.size() != a.register_count(p0))
    throw std::invalid_argument("target assignment does not cover the base registers");

  Survivors s = survivors(a, l);
  ReinitInfo reinit = reinit_tuples(a, l);
  const std::size_t n = l.transitions.size();
  const unsigned zeta = reinit.traversals;

  std::set<Name> start_image = image(start);
  for (RegId x : s.transient)
    if (start_image.count(target[x]))
      throw std::invalid_argument("start image intersects the target values of register '" +
                                  a.states[p0].registers[x] + "'");

  // Which fresh consumption, per (position, traversal), must carry a target
  // value. At most one register per slot.
  std::map<std::pair<std::size_t, unsigned>, RegId> slots;
  for (const ReinitTuple& t : reinit.tuples) {
    auto key = std::pair(t.position, zeta - t.traversals);
    if (!slots.emplace(key, t.reg).second)
      throw std::logic_error("two registers claim the same fresh consumption");
  }

  PhaseResult out;
  out.end = start;
  for (unsigned k = 0; k < zeta; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Transition& t = at(a, l, i);
      Name symbol;
      auto slot = slots.find(std::pair(i, k));
      if (slot != slots.end()) {
        if (!t.label.is_star())
          throw std::logic_error("reinit slot fell on a register-labelled transition");
        symbol = target[slot->second];
        if (image(out.end).count(symbol))
          throw std::logic_error("target value is not fresh when it must be consumed");
      } else if (!t.label.is_star()) {
        symbol = out.end.assignment[t.label.reg_index()];
      } else {
        symbol = gen.next();
        if (image(out.end).count(symbol))
          throw std::logic_error("generated name is not fresh for the configuration");
      }
      out.word.push_back(symbol);
      out.end = apply_transition(a, t, out.end, symbol);
    }
  }
  for (RegId x : s.transient)
    if (out.end.assignment[x] != target[x])
      throw std::logic_error("init phase failed to restore register '" +
                             a.states[p0].registers[x] + "'");
  return out;
}

PhaseResult init_phase(const Automaton& a, const Loop& l, const Configuration& start,
                       const std::vector<Name>& target) {
  std::set<Name> avoid = image(start);
  avoid.insert(target.begin(), target.end());
  FreshNameGenerator gen(std::move(avoid));
  return init_phase(a, l, start, target, gen);
}

Word realize_loop(const Automaton& a, const Loop& l, const std::vector<Name>& assignment,
                  const std::set<Name>& extra_avoid) {
  StateId p0 = loop_base(a, l);
  Configuration start{p0, assignment};

  unsigned theta = restore_period(a, l);
  unsigned epsilon = forget_traversals(a, l);
  unsigned zeta = reinit_tuples(a, l).traversals;
  unsigned gamma = epsilon;
  while ((gamma + zeta) % theta != 0) ++gamma;

  std::set<Name> avoid(assignment.begin(), assignment.end());
  avoid.insert(extra_avoid.begin(), extra_avoid.end());
  FreshNameGenerator gen(std::move(avoid));

  PhaseResult forget = forget_phase(a, l, start, gamma, gen);
  PhaseResult init = init_phase(a, l, forget.end, assignment, gen);

  Word word = std::move(forget.word);
  word.insert(word.end(), init.word.begin(), init.word.end());
  if (run_prefix(a, start, word).final != start)
    throw std::logic_error("realized loop word does not return to its start configuration");
  return word;
}

}  // namespace nomega
