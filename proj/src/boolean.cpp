#include "nomega/boolean.hpp"

#include <memory>
#include <utility>

#include "nomega/product.hpp"

namespace nomega {

namespace {

enum class Combiner { And, Or, Xor };

// Product structure whose condition tests the componentwise projections of
// the Inf set against the factor conditions.
Automaton combine(const Automaton& a1, const Automaton& a2, Combiner op) {
  ProductAutomaton product = build_product(a1, a2);

  auto pairs = std::make_shared<std::vector<std::pair<StateId, StateId>>>();
  pairs->reserve(product.info.size());
  for (const ProductStateInfo& info : product.info)
    pairs->emplace_back(info.key.left, info.key.right);

  AcceptingCondition c1 = a1.accepting;
  AcceptingCondition c2 = a2.accepting;
  Automaton out = std::move(product.automaton);
  out.accepting = AcceptingCondition::from_predicate(
      [pairs, c1, c2, op](const StateSet& inf) {
        StateSet left, right;
        for (StateId s : inf) {
          left.insert((*pairs)[s].first);
          right.insert((*pairs)[s].second);
        }
        bool in1 = c1.accepts(left);
        bool in2 = c2.accepts(right);
        switch (op) {
          case Combiner::And: return in1 && in2;
          case Combiner::Or: return in1 || in2;
          case Combiner::Xor: return in1 != in2;
        }
        return false;
      });
  return out;
}

}  // namespace

Automaton intersect(const Automaton& a1, const Automaton& a2) {
  return combine(a1, a2, Combiner::And);
}

Automaton unite(const Automaton& a1, const Automaton& a2) {
  return combine(a1, a2, Combiner::Or);
}

Automaton complement(const Automaton& a) {
  Automaton out = a;
  out.accepting = a.accepting.complemented();
  return out;
}

Automaton symmetric_difference(const Automaton& a1, const Automaton& a2) {
  return combine(a1, a2, Combiner::Xor);
}

}  // namespace nomega
