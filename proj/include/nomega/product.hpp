#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/configuration.hpp"

namespace nomega {

/// Register-identification relation between the two factors of a product
/// state: a set of (left register, right register) pairs, functional and
/// injective, kept sorted.
using RegRelation = std::vector<std::pair<RegId, RegId>>;

bool is_valid_relation(const RegRelation& rel);

/// One register of a product state: an equivalence class of the relation,
/// holding at most one register per side and at least one overall.
struct QuotientClass {
  std::optional<RegId> left;
  std::optional<RegId> right;

  friend bool operator==(const QuotientClass&, const QuotientClass&) = default;
};

struct ProductStateKey {
  StateId left = 0;
  StateId right = 0;
  RegRelation rel;

  auto operator<=>(const ProductStateKey&) const = default;
};

/// The quotient registers of (q1, q2, R) in canonical order. The order
/// matches the register order of the flattened product state.
std::vector<QuotientClass> quotient_classes(const Automaton& a1, const Automaton& a2,
                                            const ProductStateKey& s);

struct InitialProduct {
  ProductStateKey state;
  std::vector<QuotientClass> classes;
  std::vector<Name> assignment;  // per class; injective
};

/// (q0¹, q0², R0) where R0 relates exactly the register pairs assigned equal
/// names by the two initial assignments, with the induced quotient
/// assignment.
InitialProduct initial_product_state(const Automaton& a1, const Automaton& a2);

struct ProductStep {
  ProductStateKey target;
  std::vector<QuotientClass> target_classes;
  History history;  // over class indices: target class -> source class | fresh
};

/// The unique product transition from `s` for the given label (a class index
/// of `s`, or nullopt for ⋆). A two-sided class fires both register
/// transitions; a singleton class fires one register transition and the
/// other side's ⋆-transition; ⋆ fires both ⋆-transitions.
ProductStep product_transition(const Automaton& a1, const Automaton& a2,
                               const ProductStateKey& s,
                               std::optional<std::size_t> label_class);

struct ProductStateInfo {
  ProductStateKey key;
  std::vector<QuotientClass> classes;
};

/// The synchronized product, flattened to a plain automaton over the
/// reachable product states. Quotient registers carry canonical names, so
/// serialization is deterministic. The accepting condition is left as the
/// empty family; combinators install the real one.
struct ProductAutomaton {
  Automaton automaton;
  std::vector<ProductStateInfo> info;  // parallel to automaton.states

  StateId left_component(StateId s) const { return info[s].key.left; }
  StateId right_component(StateId s) const { return info[s].key.right; }
};

ProductAutomaton build_product(const Automaton& a1, const Automaton& a2);

/// Projection of a product configuration to factor `side` (1 or 2):
/// ρ_i(x) = ρ([x]).
Configuration project(const ProductAutomaton& p, const Configuration& c, int side);

/// Componentwise projection of a set of product states.
StateSet project_states(const ProductAutomaton& p, const StateSet& states, int side);

}  // namespace nomega
