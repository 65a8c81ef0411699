#include "nomega/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "nomega/format.hpp"

namespace nomega {

namespace {

// Transition selection and assignment construction straight from the
// definitions, scanning the transition list; shares nothing with step().
Configuration definition_step(const Automaton& a, const Configuration& c, const Name& symbol) {
  std::optional<RegId> holder;
  for (RegId r = 0; r < c.assignment.size(); ++r)
    if (c.assignment[r] == symbol) holder = r;

  const Transition* chosen = nullptr;
  for (const Transition& t : a.transitions) {
    if (t.source != c.state) continue;
    bool enabled = holder ? (!t.label.is_star() && t.label.reg_index() == *holder)
                          : t.label.is_star();
    if (enabled) {
      chosen = &t;
      break;
    }
  }
  if (!chosen) throw std::logic_error("no enabled transition; automaton not deterministic");

  Configuration next;
  next.state = chosen->target;
  next.assignment.resize(a.register_count(chosen->target));
  // ρ2 = ρ1 ∘ σ, then the update [symbol / σ⁻¹(⋆)], void when ⋆ is not used.
  for (RegId d = 0; d < next.assignment.size(); ++d)
    if (chosen->history[d]) next.assignment[d] = c.assignment[*chosen->history[d]];
  for (RegId d = 0; d < next.assignment.size(); ++d)
    if (!chosen->history[d]) next.assignment[d] = symbol;
  return next;
}

std::set<Name> image(const Configuration& c) {
  return std::set<Name>(c.assignment.begin(), c.assignment.end());
}

}  // namespace

Membership oracle_up_member(const Automaton& a, const UPWord& w) {
  if (w.period.empty()) throw std::invalid_argument("ultimately periodic word needs a nonempty period");

  Configuration c{a.initial_state, a.initial_assignment};
  for (const Name& symbol : w.prefix) c = definition_step(a, c, symbol);

  // Step-level lasso over (period position, configuration) triples.
  std::vector<std::pair<std::size_t, Configuration>> timeline{{0, c}};
  std::map<std::pair<std::size_t, Configuration>, std::size_t> seen{{timeline[0], 0}};
  std::size_t pos = 0;
  for (;;) {
    c = definition_step(a, c, w.period[pos]);
    pos = (pos + 1) % w.period.size();
    auto key = std::pair(pos, c);
    auto it = seen.find(key);
    if (it != seen.end()) {
      StateSet inf;
      for (std::size_t k = it->second + 1; k < timeline.size(); ++k)
        inf.insert(timeline[k].second.state);
      inf.insert(c.state);
      return {a.accepting.accepts(inf), std::move(inf)};
    }
    seen.emplace(key, timeline.size());
    timeline.push_back(key);
  }
}

EdgeReport check_product_edges(const Automaton& a1, const Automaton& a2,
                               const ProductAutomaton& product, std::vector<Name> pool,
                               std::size_t depth) {
  EdgeReport report;

  std::size_t max_regs = 0;
  for (const State& s : a1.states) max_regs = std::max(max_regs, s.registers.size());
  for (const State& s : a2.states) max_regs = std::max(max_regs, s.registers.size());

  std::set<Name> known(pool.begin(), pool.end());
  known.insert(a1.initial_assignment.begin(), a1.initial_assignment.end());
  known.insert(a2.initial_assignment.begin(), a2.initial_assignment.end());
  FreshNameGenerator gen(known);
  while (pool.size() < max_regs + 2) {
    pool.push_back(gen.next());
    known.insert(pool.back());
  }

  std::vector<Name> expansion(known.begin(), known.end());
  std::vector<Name> checked = expansion;
  checked.push_back(gen.next());  // one out-of-pool fresh name

  // All product configurations reachable within `depth` steps over the pool.
  Configuration start = initial_configuration(product.automaton);
  std::set<Configuration> seen{start};
  std::deque<std::pair<Configuration, std::size_t>> queue{{start, 0}};
  std::vector<Configuration> explored;
  while (!queue.empty()) {
    auto [c, d] = queue.front();
    queue.pop_front();
    explored.push_back(c);
    if (d == depth) continue;
    for (const Name& symbol : expansion) {
      Configuration next = step(product.automaton, c, symbol);
      if (seen.insert(next).second) queue.emplace_back(next, d + 1);
    }
  }

  // Both directions of the edge correspondence collapse to one equation
  // because every configuration steps on every name, uniquely: projecting
  // the product step must equal stepping the projections.
  for (const Configuration& c : explored) {
    ++report.configurations;
    for (const Name& symbol : checked) {
      ++report.checks;
      Configuration stepped = step(product.automaton, c, symbol);
      for (int side = 1; side <= 2; ++side) {
        const Automaton& factor = side == 1 ? a1 : a2;
        Configuration expected = definition_step(factor, project(product, c, side), symbol);
        Configuration actual = project(product, stepped, side);
        if (expected != actual) {
          report.violations.push_back(
              "from " + format_configuration(product.automaton, c) + " on '" + symbol.token +
              "' side " + std::to_string(side) + ": product step projects to " +
              format_configuration(factor, actual) + " but the factor steps to " +
              format_configuration(factor, expected));
        }
      }
    }
  }
  return report;
}

EdgeReport oracle_edge_correspondence(const Automaton& a1, const Automaton& a2,
                                      std::vector<Name> pool, std::size_t depth) {
  ProductAutomaton product = build_product(a1, a2);
  return check_product_edges(a1, a2, product, std::move(pool), depth);
}

std::optional<Word> oracle_loop_search(const Automaton& a, const Loop& l,
                                       const std::vector<Name>& assignment,
                                       unsigned max_traversals) {
  if (max_traversals == 0) throw std::invalid_argument("need at least one traversal");
  StateId p0 = loop_base(a, l);
  const std::size_t n = l.transitions.size();
  Configuration start{p0, assignment};

  // Fresh choices branch over the start image plus |registers|+1 reserves;
  // any successful run can be permuted to draw from this pool.
  std::vector<Name> pool = assignment;
  FreshNameGenerator gen(std::set<Name>(assignment.begin(), assignment.end()));
  for (std::size_t i = 0; i <= a.register_count(p0); ++i) pool.push_back(gen.next());

  struct Node {
    Configuration config;
    std::size_t steps;
    std::ptrdiff_t parent;
    Name symbol;
  };
  std::vector<Node> nodes{{start, 0, -1, Name{}}};
  std::set<std::pair<std::size_t, Configuration>> visited{{0, start}};
  std::deque<std::size_t> queue{0};

  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    const std::size_t steps = nodes[id].steps;
    if (steps == static_cast<std::size_t>(max_traversals) * n) continue;

    const Transition& t = a.transitions[l.transitions[steps % n]];
    std::vector<Name> candidates;
    if (t.label.is_star()) {
      std::set<Name> im = image(nodes[id].config);
      for (const Name& cand : pool)
        if (!im.count(cand)) candidates.push_back(cand);
    } else {
      candidates.push_back(nodes[id].config.assignment[t.label.reg_index()]);
    }

    for (const Name& symbol : candidates) {
      Configuration next = apply_transition(a, t, nodes[id].config, symbol);
      std::size_t next_steps = steps + 1;
      if (next_steps % n == 0 && next == start) {
        Word word{symbol};
        for (std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(id); cur > 0;
             cur = nodes[cur].parent)
          word.push_back(nodes[cur].symbol);
        std::reverse(word.begin(), word.end());
        return word;
      }
      if (visited.insert({next_steps % n, next}).second) {
        nodes.push_back({std::move(next), next_steps, static_cast<std::ptrdiff_t>(id), symbol});
        queue.push_back(nodes.size() - 1);
      }
    }
  }
  return std::nullopt;
}

}  // namespace nomega
