#include "nomega/format.hpp"

#include <cctype>
#include <sstream>

namespace nomega {

ParseError::ParseError(ParsePosition pos, const std::string& message)
    : std::runtime_error("line " + std::to_string(pos.line) + ", col " +
                         std::to_string(pos.column) + ": " + message),
      position(pos) {}

namespace {

bool is_token_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '#';
}

struct Token {
  std::string text;
  ParsePosition pos;
};

// One line's tokens. Tokens are maximal runs of name characters; the
// punctuation [ ] { } = , * each forms its own token. A line whose first
// non-blank character is '#' is a comment (names may contain '#', so only
// whole-line comments are unambiguous).
std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i < line.size() && line[i] == '#') return out;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    ParsePosition pos{line_no, i + 1};
    if (is_token_char(c)) {
      std::size_t j = i;
      while (j < line.size() && is_token_char(line[j])) ++j;
      out.push_back({std::string(line.substr(i, j - i)), pos});
      i = j;
    } else if (c == '[' || c == ']' || c == '{' || c == '}' || c == '=' || c == ',' ||
               c == '*' || c == '-') {
      // '-' only appears inside the keyword complement-of, glued below.
      out.push_back({std::string(1, c), pos});
      ++i;
    } else {
      throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }
  // Re-glue complement-of, which the charset splits at '-'.
  for (std::size_t k = 0; k + 2 < out.size(); ++k) {
    if (out[k].text == "complement" && out[k + 1].text == "-" && out[k + 2].text == "of") {
      out[k].text = "complement-of";
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                out.begin() + static_cast<std::ptrdiff_t>(k) + 3);
    }
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line_no)
      : tokens_(std::move(tokens)), line_no_(line_no) {}

  bool done() const { return next_ >= tokens_.size(); }

  ParsePosition here() const {
    if (done()) {
      ParsePosition pos{line_no_, tokens_.empty() ? 1 : tokens_.back().pos.column + 1};
      return pos;
    }
    return tokens_[next_].pos;
  }

  const Token& peek() const {
    if (done()) throw ParseError(here(), "unexpected end of line");
    return tokens_[next_];
  }

  Token take() {
    Token t = peek();
    ++next_;
    return t;
  }

  Token expect(std::string_view text) {
    if (done() || peek().text != text)
      throw ParseError(here(), "expected '" + std::string(text) + "', got " + describe());
    return take();
  }

  Token expect_ident(std::string_view what) {
    if (done() || !is_valid_token(peek().text))
      throw ParseError(here(), "expected " + std::string(what) + ", got " + describe());
    return take();
  }

  // IDENT or "*"
  Token expect_ident_or_star(std::string_view what) {
    if (!done() && peek().text == "*") return take();
    return expect_ident(what);
  }

  void expect_end() {
    if (!done()) throw ParseError(here(), "unexpected token " + describe());
  }

  std::string describe() const {
    return done() ? "end of line" : "'" + tokens_[next_].text + "'";
  }

 private:
  std::vector<Token> tokens_;
  std::size_t line_no_;
  std::size_t next_ = 0;
};

// { key = value, ... }, both sides IDENT or "*" depending on the flags.
std::vector<std::pair<std::string, std::string>> parse_braced_pairs(LineParser& p,
                                                                    bool value_may_be_star) {
  std::vector<std::pair<std::string, std::string>> out;
  p.expect("{");
  if (!p.done() && p.peek().text == "}") {
    p.take();
    return out;
  }
  for (;;) {
    Token key = p.expect_ident("a register name");
    p.expect("=");
    Token value = value_may_be_star ? p.expect_ident_or_star("a register name or '*'")
                                    : p.expect_ident("a name");
    out.emplace_back(key.text, value.text);
    if (!p.done() && p.peek().text == ",") {
      p.take();
      continue;
    }
    p.expect("}");
    return out;
  }
}

std::vector<std::string> parse_braced_idents(LineParser& p) {
  std::vector<std::string> out;
  p.expect("{");
  if (!p.done() && p.peek().text == "}") {
    p.take();
    return out;
  }
  for (;;) {
    out.push_back(p.expect_ident("a state name").text);
    if (!p.done() && p.peek().text == ",") {
      p.take();
      continue;
    }
    p.expect("}");
    return out;
  }
}

}  // namespace

RawAutomaton parse_automaton(std::string_view text) {
  RawAutomaton raw;
  bool saw_header = false;
  int init_count = 0;
  int accept_plain = 0;
  int accept_negated = 0;
  ParsePosition header_pos{1, 1};

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;

    std::vector<Token> tokens = tokenize_line(line, line_no);
    if (end == std::string_view::npos)
      start = text.size() + 1;
    else
      start = end + 1;
    if (tokens.empty()) continue;

    LineParser p(std::move(tokens), line_no);
    Token head = p.take();

    if (!saw_header) {
      if (head.text != "automaton")
        throw ParseError(head.pos, "expected 'automaton' header, got '" + head.text + "'");
      raw.name = p.expect_ident("an automaton name").text;
      p.expect_end();
      saw_header = true;
      header_pos = head.pos;
      continue;
    }

    if (head.text == "automaton") {
      throw ParseError(head.pos, "duplicate 'automaton' header");
    } else if (head.text == "state") {
      RawState s;
      s.name = p.expect_ident("a state name").text;
      p.expect("[");
      while (!p.done() && p.peek().text != "]")
        s.registers.push_back(p.expect_ident("a register name").text);
      p.expect("]");
      p.expect_end();
      raw.states.push_back(std::move(s));
    } else if (head.text == "init") {
      ++init_count;
      if (init_count > 1) throw ParseError(head.pos, "expected exactly one init");
      raw.initial_state = p.expect_ident("a state name").text;
      for (auto& [reg, name] : parse_braced_pairs(p, /*value_may_be_star=*/false))
        raw.initial_assignment.emplace_back(reg, Name{name});
      p.expect_end();
    } else if (head.text == "accept") {
      bool negated = !p.done() && p.peek().text == "complement-of";
      if (negated) p.take();
      (negated ? accept_negated : accept_plain)++;
      if (accept_plain > 0 && accept_negated > 0)
        throw ParseError(head.pos, "cannot mix plain and complement-of accept lines");
      if (p.done()) throw ParseError(p.here(), "expected at least one accepting set");
      while (!p.done()) raw.accepting_sets.push_back(parse_braced_idents(p));
      raw.accepting_negated = negated;
    } else if (head.text == "trans") {
      RawTransition t;
      t.source = p.expect_ident("a state name").text;
      t.label = p.expect_ident_or_star("a register name or '*'").text;
      t.target = p.expect_ident("a state name").text;
      t.history = parse_braced_pairs(p, /*value_may_be_star=*/true);
      p.expect_end();
      raw.transitions.push_back(std::move(t));
    } else {
      throw ParseError(head.pos, "unknown declaration '" + head.text + "'");
    }
  }

  if (!saw_header) throw ParseError({1, 1}, "expected 'automaton' header");
  if (init_count == 0) throw ParseError(header_pos, "expected exactly one init");
  return raw;
}

namespace {

void write_sets(std::ostringstream& out, const std::vector<std::vector<std::string>>& sets) {
  for (const auto& set : sets) {
    out << " {";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out << ", ";
      out << set[i];
    }
    out << "}";
  }
}

}  // namespace

std::string serialize_automaton(const Automaton& a) {
  RawAutomaton raw = to_raw(a);
  std::ostringstream out;
  out << "automaton " << raw.name << "\n";
  for (const RawState& s : raw.states) {
    out << "state " << s.name << " [";
    for (std::size_t i = 0; i < s.registers.size(); ++i) {
      if (i) out << " ";
      out << s.registers[i];
    }
    out << "]\n";
  }
  out << "init " << raw.initial_state << " {";
  for (std::size_t i = 0; i < raw.initial_assignment.size(); ++i) {
    if (i) out << ", ";
    out << raw.initial_assignment[i].first << "=" << raw.initial_assignment[i].second.token;
  }
  out << "}\n";
  if (!raw.accepting_sets.empty()) {
    out << "accept";
    if (raw.accepting_negated) out << " complement-of";
    write_sets(out, raw.accepting_sets);
    out << "\n";
  } else if (raw.accepting_negated) {
    // The complement of the empty family. Inf sets are never empty, so the
    // family {∅} complemented accepts the same runs.
    out << "accept complement-of {}\n";
  }
  for (const RawTransition& t : raw.transitions) {
    out << "trans " << t.source << " " << t.label << " " << t.target << " {";
    for (std::size_t i = 0; i < t.history.size(); ++i) {
      if (i) out << ", ";
      out << t.history[i].first << "=" << t.history[i].second;
    }
    out << "}\n";
  }
  return out.str();
}

UPWord parse_upword(std::string_view text) {
  std::size_t sep = text.find(';');
  if (sep == std::string_view::npos)
    throw ParseError({1, 1}, "expected 'u ; v' with a single ';'");
  if (text.find(';', sep + 1) != std::string_view::npos)
    throw ParseError({1, sep + 2}, "expected a single ';'");

  auto split = [](std::string_view part, std::size_t offset) {
    Word w;
    std::size_t i = 0;
    while (i < part.size()) {
      if (std::isspace(static_cast<unsigned char>(part[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < part.size() && !std::isspace(static_cast<unsigned char>(part[j]))) ++j;
      std::string token(part.substr(i, j - i));
      if (!is_valid_token(token))
        throw ParseError({1, offset + i + 1}, "invalid name '" + token + "'");
      w.push_back(Name{std::move(token)});
      i = j;
    }
    return w;
  };

  UPWord w;
  w.prefix = split(text.substr(0, sep), 0);
  w.period = split(text.substr(sep + 1), sep + 1);
  if (w.period.empty()) throw ParseError({1, sep + 1}, "period must not be empty");
  return w;
}

std::string format_upword(const UPWord& w) {
  std::ostringstream out;
  for (const Name& a : w.prefix) out << a.token << " ";
  out << ";";
  for (const Name& a : w.period) out << " " << a.token;
  return out.str();
}

std::string format_configuration(const Automaton& a, const Configuration& c) {
  std::ostringstream out;
  out << a.states[c.state].name << " {";
  const auto& regs = a.states[c.state].registers;
  for (RegId r = 0; r < regs.size(); ++r) {
    if (r) out << ", ";
    out << regs[r] << "=" << c.assignment[r].token;
  }
  out << "}";
  return out.str();
}

}  // namespace nomega
