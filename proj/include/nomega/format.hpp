#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nomega/automaton.hpp"
#include "nomega/configuration.hpp"
#include "nomega/names.hpp"

namespace nomega {

struct ParsePosition {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParsePosition pos, const std::string& message);

  ParsePosition position;
};

/// Parses the line-oriented automaton format:
///
///   automaton IDENT
///   state IDENT [ IDENT* ]
///   init IDENT { reg=name, ... }           (exactly one)
///   accept [complement-of] { q, ... } ...  (repeated lines union their sets)
///   trans IDENT LABEL IDENT { reg=src, ... }
///
/// LABEL and src are a register token or "*"; tokens are nonempty strings
/// over [A-Za-z0-9_#]. Lines whose first character is '#' are comments;
/// blank lines are ignored. Errors carry line and column.
RawAutomaton parse_automaton(std::string_view text);

/// Canonical text form; parse ∘ serialize preserves all tokens. Conditions
/// without explicit sets are materialized, which limits this to small
/// automata in that case.
std::string serialize_automaton(const Automaton& a);

/// "u ; v": two whitespace-separated symbol lists around a single ';'.
/// u may be empty, v may not.
UPWord parse_upword(std::string_view text);
std::string format_upword(const UPWord& w);

/// "q0 {x=a, y=b}"
std::string format_configuration(const Automaton& a, const Configuration& c);

}  // namespace nomega
