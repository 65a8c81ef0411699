#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nomega/names.hpp"

namespace nomega {

using StateId = std::size_t;
using RegId = std::size_t;  // index into the owning state's register list
using StateSet = std::set<StateId>;

/// Transition label: a register of the source state, or the fresh-input
/// marker ⋆ (spelled "*" in the file format).
class Label {
 public:
  static Label star() { return Label(std::nullopt); }
  static Label reg(RegId r) { return Label(r); }

  bool is_star() const { return !reg_.has_value(); }
  RegId reg_index() const { return *reg_; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  explicit Label(std::optional<RegId> r) : reg_(r) {}
  std::optional<RegId> reg_;
};

/// History map of a transition, indexed by the registers of the target
/// state. Entry r tells where register r's value comes from: a register of
/// the source state, or (nullopt) the freshly consumed name. Total and
/// injective; the fresh marker may appear only on ⋆-labelled transitions.
using History = std::vector<std::optional<RegId>>;

struct Transition {
  StateId source = 0;
  Label label = Label::star();
  StateId target = 0;
  History history;
};

struct State {
  std::string name;
  std::vector<std::string> registers;  // tokens, unique within the state
};

/// Muller accepting condition as a total membership predicate on subsets of
/// the state set. Plain automata carry an explicit family of state sets,
/// possibly under a complement wrapper; product combinators install an
/// opaque predicate instead. The complement wrapper never materializes
/// 𝒫(Q) minus the family.
class AcceptingCondition {
 public:
  using Predicate = std::function<bool(const StateSet&)>;

  AcceptingCondition() = default;  // empty family: accepts nothing

  static AcceptingCondition explicit_sets(std::vector<StateSet> sets, bool negated = false);
  static AcceptingCondition from_predicate(Predicate p);

  /// The condition with inverted membership.
  AcceptingCondition complemented() const;

  bool accepts(const StateSet& inf) const;

  bool has_explicit_sets() const { return !predicate_; }
  const std::vector<StateSet>& sets() const { return sets_; }
  bool negated() const { return negated_; }

  /// Every accepted subset of {0, ..., state_count-1}. Exponential; used for
  /// serialization of predicate-backed conditions on small automata. Throws
  /// std::runtime_error when state_count exceeds max_states.
  std::vector<StateSet> materialize(std::size_t state_count, std::size_t max_states = 16) const;

 private:
  std::vector<StateSet> sets_;
  Predicate predicate_;  // empty unless built by from_predicate
  bool negated_ = false;
};

/// A validated history-dependent deterministic Muller automaton. Immutable
/// after validation; build one through validate() or complete_with_sink().
struct Automaton {
  std::string name;
  std::vector<State> states;
  StateId initial_state = 0;
  std::vector<Name> initial_assignment;  // indexed by the initial state's registers
  std::vector<Transition> transitions;
  AcceptingCondition accepting;

  // Label dispatch built by validate(): indices into `transitions`.
  std::vector<std::size_t> star_transition;             // per state
  std::vector<std::vector<std::size_t>> reg_transition; // per state, per register

  std::size_t register_count(StateId q) const { return states[q].registers.size(); }
  std::size_t transition_index(StateId q, const Label& l) const;
  const Transition& transition_for(StateId q, const Label& l) const;
  std::optional<StateId> state_by_name(std::string_view name) const;
};

/// Unvalidated description, as produced by the parser or by constructions
/// that still have to pass validation. All references are by token.
struct RawState {
  std::string name;
  std::vector<std::string> registers;
};

struct RawTransition {
  std::string source;
  std::string label;  // register token or "*"
  std::string target;
  std::vector<std::pair<std::string, std::string>> history;  // target reg = source reg | "*"
};

struct RawAutomaton {
  std::string name;
  std::vector<RawState> states;
  std::string initial_state;
  std::vector<std::pair<std::string, Name>> initial_assignment;
  std::vector<RawTransition> transitions;
  std::vector<std::vector<std::string>> accepting_sets;
  bool accepting_negated = false;
};

struct Violation {
  std::string rule;    // short invariant name
  std::string detail;  // offending state/transition and what went wrong
};

struct ValidationResult {
  std::optional<Automaton> automaton;
  std::vector<Violation> violations;

  bool ok() const { return automaton.has_value(); }
};

/// Checks every structural invariant of the model: determinism (exactly one
/// transition per label in ‖q‖ ∪ {⋆}), total injective histories with domain
/// ‖target‖, the fresh marker only on ⋆-labelled transitions, an injective
/// initial assignment on exactly ‖q0‖, and referential integrity of every
/// token. Returns either the automaton or the full list of violations.
ValidationResult validate(const RawAutomaton& raw);

/// validate() that throws std::invalid_argument listing all violations.
Automaton validate_or_throw(const RawAutomaton& raw);

/// Adds a fresh register-free sink state with a ⋆ self-loop and routes every
/// missing (state, label) pair to it with an empty history. A description
/// that is already deterministic is returned unchanged. The sink belongs to
/// no accepting set; its id avoids clashes by suffixing.
ValidationResult complete_with_sink(const RawAutomaton& raw);

/// The raw description of a validated automaton (for re-serialization and
/// sink completion round trips). Predicate-backed accepting conditions are
/// materialized, so this is limited to small automata in that case.
RawAutomaton to_raw(const Automaton& a);

}  // namespace nomega
