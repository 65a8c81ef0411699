#pragma once

#include "nomega/automaton.hpp"

namespace nomega {

/// Product structure accepting Inf sets whose projections are accepted by
/// both factors.
Automaton intersect(const Automaton& a1, const Automaton& a2);

/// Product structure accepting Inf sets whose projections are accepted by at
/// least one factor.
Automaton unite(const Automaton& a1, const Automaton& a2);

/// Same transition structure, inverted membership predicate.
Automaton complement(const Automaton& a);

/// Product structure accepting Inf sets accepted by exactly one factor.
Automaton symmetric_difference(const Automaton& a1, const Automaton& a2);

}  // namespace nomega
