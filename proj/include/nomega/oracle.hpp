#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/configuration.hpp"
#include "nomega/loops.hpp"
#include "nomega/product.hpp"

namespace nomega {

// Independent brute-force reference implementations for differential
// testing. These deliberately re-derive everything from the definitions and
// share no code path with the main algorithms.

/// Step-level lasso membership: tracks (configuration, position within the
/// period) triples one symbol at a time and cuts the cycle at the first
/// repeated triple.
Membership oracle_up_member(const Automaton& a, const UPWord& w);

struct EdgeReport {
  std::size_t configurations = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Exhaustively checks, over every product configuration reachable from the
/// initial one within `depth` steps over the pool, that stepping the product
/// on each pool name (plus one out-of-pool fresh name) commutes with
/// stepping the projections. The pool is extended internally when smaller
/// than max register count + 2.
EdgeReport check_product_edges(const Automaton& a1, const Automaton& a2,
                               const ProductAutomaton& product, std::vector<Name> pool,
                               std::size_t depth = 8);

/// check_product_edges against the product built by build_product.
EdgeReport oracle_edge_correspondence(const Automaton& a1, const Automaton& a2,
                                      std::vector<Name> pool, std::size_t depth = 8);

/// Breadth-first search for a word of at most `max_traversals` loop
/// traversals returning to (p0, assignment). ⋆ positions branch over the
/// assignment's image plus |registers|+1 reserve names; by equivariance a
/// return word exists within the bound iff one exists over that pool.
std::optional<Word> oracle_loop_search(const Automaton& a, const Loop& l,
                                       const std::vector<Name>& assignment,
                                       unsigned max_traversals);

}  // namespace nomega
