#pragma once

#include <compare>
#include <span>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/names.hpp"

namespace nomega {

/// A state together with an injective assignment of names to its registers.
/// The configuration graph over these is the automaton's semantics.
struct Configuration {
  StateId state = 0;
  std::vector<Name> assignment;  // indexed by the state's registers

  auto operator<=>(const Configuration&) const = default;
};

Configuration initial_configuration(const Automaton& a);

/// True iff the assignment is total on the state's registers and injective.
bool is_valid_configuration(const Automaton& a, const Configuration& c);

/// The unique successor configuration on consuming name `a`: the transition
/// labelled by the register holding `a` when assigned, the ⋆-transition
/// otherwise. Total by determinism.
Configuration step(const Automaton& a, const Configuration& c, const Name& symbol);

/// Follows one specific transition. The caller guarantees the side
/// condition: symbol = ρ(l) for register labels, symbol fresh for ⋆.
Configuration apply_transition(const Automaton& a, const Transition& t,
                               const Configuration& c, const Name& symbol);

struct RunRecord {
  Configuration final;
  std::vector<StateId> visited;  // |word| + 1 entries, start and end included
};

RunRecord run_prefix(const Automaton& a, const Configuration& start, std::span<const Name> word);

struct Membership {
  bool accepted = false;
  StateSet inf;  // states visited infinitely often by the unique run
};

/// Decides acceptance of u·v^ω by simulating u and then whole v-blocks until
/// a block-boundary configuration repeats; the Inf set is the union of the
/// states inside the repeating segment. Terminates because reachable
/// assignments only draw names from the initial image and the word.
Membership up_member(const Automaton& a, const UPWord& w);

}  // namespace nomega
