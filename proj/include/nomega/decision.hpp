#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/names.hpp"

namespace nomega {

/// One letter of the finite alphabet Σ = { (l, σ) } induced by an
/// automaton's transitions, identified by tokens.
struct FiniteSymbol {
  std::string label;  // register token or "*"
  std::vector<std::pair<std::string, std::string>> history;  // sorted target=source pairs

  auto operator<=>(const FiniteSymbol&) const = default;
};

/// The ordinary deterministic Muller automaton over Σ whose words are the
/// transition sequences of the source automaton. Transitions are partial;
/// the completing dummy sink is omitted since it can never lie on an
/// accepting loop.
struct FiniteMuller {
  std::vector<FiniteSymbol> alphabet;  // sorted, unique
  StateId initial = 0;
  std::size_t state_count = 0;
  std::vector<std::map<std::size_t, StateId>> transitions;  // per state: symbol index -> target
  AcceptingCondition accepting;
};

FiniteMuller to_finite_muller(const Automaton& a);

/// An accepting lasso: a reachable state set S accepted by the condition,
/// an access path from the initial state, and a cycle through exactly the
/// states of S starting and ending where the access path ends.
struct WitnessLoop {
  StateSet states;                  // S
  std::vector<std::size_t> access;  // transition indices, q0 to loop start
  std::vector<std::size_t> loop;    // transition indices, closed walk over S
};

/// Finds an accepting lasso, or nullopt when the language is empty.
/// Candidates are subsets of reachable strongly connected components whose
/// induced subgraph is strongly connected with at least one edge.
std::optional<WitnessLoop> accepting_lasso(const Automaton& a);

/// Like accepting_lasso, restricted to sets containing `through`; the loop
/// starts at `through`.
std::optional<WitnessLoop> accepting_lasso_through(const Automaton& a, StateId through);

bool is_empty(const Automaton& a);

/// A concrete ultimately periodic word accepted by the automaton, realized
/// from an accepting lasso, or nullopt when the language is empty. The
/// returned word always re-verifies under up_member.
std::optional<UPWord> witness(const Automaton& a);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<UPWord> counterexample;  // accepted by exactly one automaton
};

/// Emptiness of the symmetric difference.
EquivalenceResult equivalent(const Automaton& a1, const Automaton& a2);

struct InclusionResult {
  bool included = false;
  std::optional<UPWord> counterexample;  // in L1 but not in L2
};

/// Emptiness of L1 ∩ complement(L2).
InclusionResult included(const Automaton& a1, const Automaton& a2);

}  // namespace nomega
