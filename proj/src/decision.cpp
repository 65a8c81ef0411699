#include "nomega/decision.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "nomega/boolean.hpp"
#include "nomega/configuration.hpp"
#include "nomega/loops.hpp"

namespace nomega {

FiniteMuller to_finite_muller(const Automaton& a) {
  FiniteMuller m;
  m.initial = a.initial_state;
  m.state_count = a.states.size();
  m.transitions.resize(a.states.size());
  m.accepting = a.accepting;

  std::map<FiniteSymbol, std::size_t> symbol_ids;
  for (const Transition& t : a.transitions) {
    FiniteSymbol sym;
    sym.label = t.label.is_star() ? "*" : a.states[t.source].registers[t.label.reg_index()];
    const auto& tgt_regs = a.states[t.target].registers;
    for (RegId d = 0; d < tgt_regs.size(); ++d)
      sym.history.emplace_back(tgt_regs[d],
                               t.history[d] ? a.states[t.source].registers[*t.history[d]]
                                            : std::string("*"));
    std::sort(sym.history.begin(), sym.history.end());
    auto [it, inserted] = symbol_ids.emplace(std::move(sym), symbol_ids.size());
    m.transitions[t.source][it->second] = t.target;
  }
  m.alphabet.resize(symbol_ids.size());
  for (const auto& [sym, id] : symbol_ids) m.alphabet[id] = sym;
  return m;
}

namespace {

std::vector<std::vector<std::size_t>> outgoing_index(const Automaton& a) {
  std::vector<std::vector<std::size_t>> out(a.states.size());
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    out[a.transitions[i].source].push_back(i);
  return out;
}

std::vector<bool> reachable_states(const Automaton& a,
                                   const std::vector<std::vector<std::size_t>>& out_edges) {
  std::vector<bool> seen(a.states.size(), false);
  std::deque<StateId> queue{a.initial_state};
  seen[a.initial_state] = true;
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (std::size_t i : out_edges[q]) {
      StateId t = a.transitions[i].target;
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

// Strongly connected components of the reachable part, each sorted, the list
// ordered by smallest member (Kosaraju).
std::vector<std::vector<StateId>> reachable_sccs(const Automaton& a,
                                                 const std::vector<std::vector<std::size_t>>& out_edges,
                                                 const std::vector<bool>& reach) {
  const std::size_t n = a.states.size();
  std::vector<StateId> order;
  order.reserve(n);
  std::vector<bool> visited(n, false);
  for (StateId root = 0; root < n; ++root) {
    if (!reach[root] || visited[root]) continue;
    // Iterative DFS recording finish order.
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    visited[root] = true;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (next < out_edges[q].size()) {
        StateId t = a.transitions[out_edges[q][next++]].target;
        if (reach[t] && !visited[t]) {
          visited[t] = true;
          stack.emplace_back(t, 0);
        }
      } else {
        order.push_back(q);
        stack.pop_back();
      }
    }
  }

  std::vector<std::vector<StateId>> incoming(n);
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const Transition& t = a.transitions[i];
    if (reach[t.source] && reach[t.target]) incoming[t.target].push_back(t.source);
  }

  std::vector<std::vector<StateId>> sccs;
  std::vector<bool> assigned(n, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (assigned[*it]) continue;
    std::vector<StateId> component;
    std::deque<StateId> queue{*it};
    assigned[*it] = true;
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      component.push_back(q);
      for (StateId s : incoming[q]) {
        if (!assigned[s]) {
          assigned[s] = true;
          queue.push_back(s);
        }
      }
    }
    std::sort(component.begin(), component.end());
    sccs.push_back(std::move(component));
  }
  std::sort(sccs.begin(), sccs.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return sccs;
}

// Shortest transition path from `from` to `to` using only transitions
// accepted by `allowed`; empty when from == to.
std::optional<std::vector<std::size_t>> bfs_path(
    const Automaton& a, const std::vector<std::vector<std::size_t>>& out_edges, StateId from,
    StateId to, const std::function<bool(const Transition&)>& allowed) {
  if (from == to) return std::vector<std::size_t>{};
  std::vector<std::optional<std::size_t>> parent_edge(a.states.size());
  std::vector<bool> seen(a.states.size(), false);
  seen[from] = true;
  std::deque<StateId> queue{from};
  while (!queue.empty()) {
    StateId q = queue.front();
    queue.pop_front();
    for (std::size_t i : out_edges[q]) {
      const Transition& t = a.transitions[i];
      if (!allowed(t) || seen[t.target]) continue;
      seen[t.target] = true;
      parent_edge[t.target] = i;
      if (t.target == to) {
        std::vector<std::size_t> path;
        StateId cur = to;
        while (cur != from) {
          path.push_back(*parent_edge[cur]);
          cur = a.transitions[*parent_edge[cur]].source;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(t.target);
    }
  }
  return std::nullopt;
}

// Is the subgraph induced by S strongly connected, with at least one edge?
bool induced_strongly_connected(const Automaton& a,
                                const std::vector<std::vector<std::size_t>>& out_edges,
                                const StateSet& s) {
  bool any_edge = false;
  for (StateId q : s)
    for (std::size_t i : out_edges[q])
      if (s.count(a.transitions[i].target)) any_edge = true;
  if (!any_edge) return false;

  auto covers = [&](bool forward) {
    StateSet seen{*s.begin()};
    std::deque<StateId> queue{*s.begin()};
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      for (StateId cand : s) {
        if (seen.count(cand)) continue;
        bool edge = false;
        StateId src = forward ? q : cand;
        StateId dst = forward ? cand : q;
        for (std::size_t i : out_edges[src])
          if (a.transitions[i].target == dst) edge = true;
        if (edge) {
          seen.insert(cand);
          queue.push_back(cand);
        }
      }
    }
    return seen == s;
  };
  return covers(true) && covers(false);
}

std::optional<WitnessLoop> lasso_impl(const Automaton& a, std::optional<StateId> through) {
  auto out_edges = outgoing_index(a);
  auto reach = reachable_states(a, out_edges);
  if (through && !reach[*through]) return std::nullopt;

  for (const std::vector<StateId>& scc : reachable_sccs(a, out_edges, reach)) {
    if (through && std::find(scc.begin(), scc.end(), *through) == scc.end()) continue;
    const std::size_t m = scc.size();

    auto next_combination = [m](std::vector<std::size_t>& idx) {
      const std::size_t k = idx.size();
      for (std::size_t pos = k; pos-- > 0;) {
        if (idx[pos] != pos + m - k) {
          ++idx[pos];
          for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          return true;
        }
      }
      return false;
    };

    // Nonempty subsets in size order; any accepted set inducing a strongly
    // connected subgraph with an edge can be visited exactly, forever.
    for (std::size_t k = 1; k <= m; ++k) {
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      do {
        StateSet s;
        for (std::size_t i : idx) s.insert(scc[i]);
        if (through && !s.count(*through)) continue;
        if (!a.accepting.accepts(s)) continue;
        if (!induced_strongly_connected(a, out_edges, s)) continue;

        auto in_s = [&s](const Transition& t) {
          return s.count(t.source) && s.count(t.target);
        };

        WitnessLoop wl;
        wl.states = s;
        StateId start = through ? *through : *s.begin();
        if (s.size() == 1) {
          for (std::size_t i : out_edges[start]) {
            if (a.transitions[i].target == start) {
              wl.loop = {i};
              break;
            }
          }
        } else {
          std::vector<StateId> waypoints(s.begin(), s.end());
          std::rotate(waypoints.begin(),
                      std::find(waypoints.begin(), waypoints.end(), start), waypoints.end());
          StateId cur = start;
          for (std::size_t w = 1; w <= waypoints.size(); ++w) {
            StateId next = w < waypoints.size() ? waypoints[w] : start;
            auto leg = bfs_path(a, out_edges, cur, next, in_s);
            if (!leg) throw std::logic_error("strongly connected set has no inner path");
            wl.loop.insert(wl.loop.end(), leg->begin(), leg->end());
            cur = next;
          }
        }

        auto access = bfs_path(a, out_edges, a.initial_state, start,
                               [](const Transition&) { return true; });
        if (!access) throw std::logic_error("reachable state has no access path");
        wl.access = *access;
        return wl;
      } while (next_combination(idx));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<WitnessLoop> accepting_lasso(const Automaton& a) {
  return lasso_impl(a, std::nullopt);
}

std::optional<WitnessLoop> accepting_lasso_through(const Automaton& a, StateId through) {
  return lasso_impl(a, through);
}

bool is_empty(const Automaton& a) { return !accepting_lasso(a).has_value(); }

std::optional<UPWord> witness(const Automaton& a) {
  std::optional<WitnessLoop> wl = accepting_lasso(a);
  if (!wl) return std::nullopt;

  Configuration c = initial_configuration(a);
  FreshNameGenerator gen(std::set<Name>(c.assignment.begin(), c.assignment.end()));
  Word prefix;
  for (std::size_t i : wl->access) {
    const Transition& t = a.transitions[i];
    Name symbol =
        t.label.is_star() ? gen.next() : c.assignment[t.label.reg_index()];
    prefix.push_back(symbol);
    c = apply_transition(a, t, c, symbol);
  }

  UPWord w;
  w.prefix = std::move(prefix);
  w.period = realize_loop(a, Loop{wl->loop}, c.assignment, gen.avoided());
  if (!up_member(a, w).accepted)
    throw std::logic_error("synthesized witness fails its own membership check");
  return w;
}

EquivalenceResult equivalent(const Automaton& a1, const Automaton& a2) {
  std::optional<UPWord> w = witness(symmetric_difference(a1, a2));
  if (!w) return {true, std::nullopt};
  if (up_member(a1, *w).accepted == up_member(a2, *w).accepted)
    throw std::logic_error("counterexample is not accepted by exactly one automaton");
  return {false, std::move(w)};
}

InclusionResult included(const Automaton& a1, const Automaton& a2) {
  std::optional<UPWord> w = witness(intersect(a1, complement(a2)));
  if (!w) return {true, std::nullopt};
  if (!up_member(a1, *w).accepted || up_member(a2, *w).accepted)
    throw std::logic_error("counterexample is not in the first language only");
  return {false, std::move(w)};
}

}  // namespace nomega
