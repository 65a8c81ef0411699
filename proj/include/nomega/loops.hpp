#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nomega/automaton.hpp"
#include "nomega/configuration.hpp"

namespace nomega {

/// A transition loop p0 -> p1 -> ... -> p0, given as indices into the
/// automaton's transition list. Consecutive endpoints must chain and the
/// last target must equal the first source.
struct Loop {
  std::vector<std::size_t> transitions;
};

/// Throws std::invalid_argument if the indices do not form a loop.
void check_loop(const Automaton& a, const Loop& l);

StateId loop_base(const Automaton& a, const Loop& l);

/// Partial self-map on the base state's registers; entry x is the register
/// whose value flows into x over one traversal, absent when the chain passes
/// through a fresh consumption.
using PartialRegMap = std::vector<std::optional<RegId>>;

PartialRegMap survival_map(const Automaton& a, const Loop& l);

/// The base registers split into those whose values cycle forever under the
/// survival map (the map restricted to them is a permutation) and the rest,
/// whose values are eventually discarded.
struct Survivors {
  std::vector<RegId> surviving;  // I
  std::vector<RegId> transient;  // T
};

Survivors survivors(const Automaton& a, const Loop& l);

/// Order of the survival permutation on the surviving registers: the least
/// number of traversals after which their assignment is always restored.
/// 1 when no register survives.
unsigned restore_period(const Automaton& a, const Loop& l);

/// The forward chain of registers carrying a transient register's initial
/// value, one entry per step until the value is dropped. Throws
/// std::logic_error if the chain exceeds n·|registers| + n steps, which
/// would mean the register actually survives.
std::vector<RegId> forget_chain(const Automaton& a, const Loop& l, RegId x);

/// Least number of traversals guaranteed to flush every transient register's
/// initial value out of all registers: ceil((max chain length + 1) / n),
/// 1 when there are no transient registers.
unsigned forget_traversals(const Automaton& a, const Loop& l);

/// For a transient register x: the loop position whose fresh consumption
/// flows into x, and the number of traversals that flow takes.
struct ReinitTuple {
  RegId reg;              // x
  std::size_t position;   // transition index within the loop
  unsigned traversals;    // whole traversals until the value lands in x

  friend bool operator==(const ReinitTuple&, const ReinitTuple&) = default;
};

struct ReinitInfo {
  std::vector<ReinitTuple> tuples;  // one per transient register
  unsigned traversals = 1;          // max over tuples, 1 when none
};

ReinitInfo reinit_tuples(const Automaton& a, const Loop& l);

struct LoopAnalysis {
  PartialRegMap survival;
  std::vector<RegId> surviving;
  std::vector<RegId> transient;
  unsigned restore_period = 1;
  std::vector<std::pair<RegId, std::size_t>> chain_lengths;  // transient reg -> chain length
  unsigned forget_traversals = 1;
  std::vector<ReinitTuple> reinit;
  unsigned reinit_traversals = 1;
};

LoopAnalysis analyze_loop(const Automaton& a, const Loop& l);

struct PhaseResult {
  Word word;
  Configuration end;
};

/// `traversals` loop traversals that discard the transient registers'
/// starting values: register labels consume the current value, ⋆ labels
/// consume generated names avoiding the start image and everything emitted
/// before. With traversals >= forget_traversals the end image is disjoint
/// from the start's transient values.
PhaseResult forget_phase(const Automaton& a, const Loop& l, const Configuration& start,
                         unsigned traversals, FreshNameGenerator& gen);
PhaseResult forget_phase(const Automaton& a, const Loop& l, const Configuration& start,
                         unsigned traversals);

/// The dual phase: starting from a configuration whose image avoids
/// target(T), re-installs the target values on the transient registers by
/// feeding target(x) at exactly the fresh consumption that flows into x.
/// Throws std::invalid_argument when the disjointness precondition fails.
PhaseResult init_phase(const Automaton& a, const Loop& l, const Configuration& start,
                       const std::vector<Name>& target, FreshNameGenerator& gen);
PhaseResult init_phase(const Automaton& a, const Loop& l, const Configuration& start,
                       const std::vector<Name>& target);

/// A word whose run from (p0, assignment) returns exactly to
/// (p0, assignment): a forget phase of γ traversals followed by an init
/// phase, with γ the least value >= forget_traversals such that
/// restore_period divides γ + reinit_traversals. Verified internally.
Word realize_loop(const Automaton& a, const Loop& l, const std::vector<Name>& assignment,
                  const std::set<Name>& extra_avoid = {});

}  // namespace nomega
