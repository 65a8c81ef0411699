#include "nomega/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nomega/boolean.hpp"
#include "nomega/decision.hpp"
#include "nomega/format.hpp"
#include "nomega/loops.hpp"
#include "nomega/product.hpp"

namespace nomega {

namespace {

// Parse or validation problems abort the invocation with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Automaton load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    RawAutomaton raw = parse_automaton(text.str());
    ValidationResult result = validate(raw);
    if (!result.ok()) {
      std::string msg = path + ": invalid automaton:";
      for (const Violation& v : result.violations) msg += "\n  [" + v.rule + "] " + v.detail;
      throw InputError(msg);
    }
    return std::move(*result.automaton);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save(const std::string& path, const Automaton& a) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << serialize_automaton(a);
}

UPWord word_arg(const std::string& text) {
  try {
    return parse_upword(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("bad word: ") + e.what());
  }
}

Word prefix_arg(const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string token;
  while (in >> token) {
    if (!is_valid_token(token)) throw InputError("bad prefix: invalid name '" + token + "'");
    w.push_back(Name{token});
  }
  return w;
}

std::string reg_set_text(const Automaton& a, StateId q, const std::vector<RegId>& regs) {
  std::string out = "{";
  for (std::size_t i = 0; i < regs.size(); ++i) {
    if (i) out += ", ";
    out += a.states[q].registers[regs[i]];
  }
  return out + "}";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"history-dependent Muller automata over an unbounded name alphabet"};
  app.require_subcommand(1);

  std::string file, file2, out_path, word_text, prefix_text, from_state;
  bool trace = false, want_witness = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a description against the model");
  validate_cmd->add_option("file", file)->required();

  CLI::App* member_cmd = app.add_subcommand("member", "decide membership of u ; v");
  member_cmd->add_option("file", file)->required();
  member_cmd->add_option("--word", word_text, "the word as \"u ; v\"")->required();

  CLI::App* run_cmd = app.add_subcommand("run", "run a finite prefix from the initial configuration");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--prefix", prefix_text, "whitespace-separated names")->required();
  run_cmd->add_flag("--trace", trace, "print every intermediate configuration");

  CLI::App* product_cmd = app.add_subcommand("product", "synchronized product, no accepting sets");
  product_cmd->add_option("file1", file)->required();
  product_cmd->add_option("file2", file2)->required();
  product_cmd->add_option("-o", out_path)->required();

  CLI::App* intersect_cmd = app.add_subcommand("intersect", "intersection");
  CLI::App* union_cmd = app.add_subcommand("union", "union");
  CLI::App* symdiff_cmd = app.add_subcommand("symdiff", "symmetric difference");
  for (CLI::App* cmd : {intersect_cmd, union_cmd, symdiff_cmd}) {
    cmd->add_option("file1", file)->required();
    cmd->add_option("file2", file2)->required();
    cmd->add_option("-o", out_path)->required();
  }

  CLI::App* complement_cmd = app.add_subcommand("complement", "complement");
  complement_cmd->add_option("file", file)->required();
  complement_cmd->add_option("-o", out_path)->required();

  CLI::App* empty_cmd = app.add_subcommand("empty", "decide emptiness");
  empty_cmd->add_option("file", file)->required();
  empty_cmd->add_flag("--witness", want_witness, "print an accepted word when nonempty");

  CLI::App* equiv_cmd = app.add_subcommand("equiv", "decide language equality");
  equiv_cmd->add_option("file1", file)->required();
  equiv_cmd->add_option("file2", file2)->required();

  CLI::App* included_cmd = app.add_subcommand("included", "decide language inclusion");
  included_cmd->add_option("file1", file)->required();
  included_cmd->add_option("file2", file2)->required();

  CLI::App* analyze_cmd = app.add_subcommand("analyze-loop", "loop analysis at a state");
  analyze_cmd->add_option("file", file)->required();
  analyze_cmd->add_option("--from", from_state, "base state of the loop")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      load(file);
      out << "VALID\n";
    } else if (app.got_subcommand(member_cmd)) {
      Automaton a = load(file);
      out << (up_member(a, word_arg(word_text)).accepted ? "ACCEPT" : "REJECT") << "\n";
    } else if (app.got_subcommand(run_cmd)) {
      Automaton a = load(file);
      Word prefix = prefix_arg(prefix_text);
      Configuration c = initial_configuration(a);
      if (trace) out << format_configuration(a, c) << "\n";
      for (const Name& symbol : prefix) {
        c = step(a, c, symbol);
        if (trace) out << format_configuration(a, c) << "\n";
      }
      if (!trace) out << format_configuration(a, c) << "\n";
    } else if (app.got_subcommand(product_cmd)) {
      save(out_path, build_product(load(file), load(file2)).automaton);
    } else if (app.got_subcommand(intersect_cmd)) {
      save(out_path, intersect(load(file), load(file2)));
    } else if (app.got_subcommand(union_cmd)) {
      save(out_path, unite(load(file), load(file2)));
    } else if (app.got_subcommand(symdiff_cmd)) {
      save(out_path, symmetric_difference(load(file), load(file2)));
    } else if (app.got_subcommand(complement_cmd)) {
      save(out_path, complement(load(file)));
    } else if (app.got_subcommand(empty_cmd)) {
      Automaton a = load(file);
      std::optional<UPWord> w = witness(a);
      out << (w ? "NONEMPTY" : "EMPTY") << "\n";
      if (w && want_witness) out << format_upword(*w) << "\n";
    } else if (app.got_subcommand(equiv_cmd)) {
      EquivalenceResult r = equivalent(load(file), load(file2));
      out << (r.equivalent ? "EQUIV" : "NOTEQUIV") << "\n";
      if (r.counterexample) out << format_upword(*r.counterexample) << "\n";
    } else if (app.got_subcommand(included_cmd)) {
      InclusionResult r = included(load(file), load(file2));
      out << (r.included ? "INCLUDED" : "NOTINCLUDED") << "\n";
      if (r.counterexample) out << format_upword(*r.counterexample) << "\n";
    } else if (app.got_subcommand(analyze_cmd)) {
      Automaton a = load(file);
      std::optional<StateId> q = a.state_by_name(from_state);
      if (!q) throw InputError("unknown state '" + from_state + "'");
      std::optional<WitnessLoop> wl = accepting_lasso_through(a, *q);
      if (!wl) {
        out << "NONE\n";
      } else {
        LoopAnalysis analysis = analyze_loop(a, Loop{wl->loop});
        out << "sigma_hat {";
        bool first = true;
        for (RegId x = 0; x < analysis.survival.size(); ++x) {
          if (!analysis.survival[x]) continue;
          if (!first) out << ", ";
          first = false;
          out << a.states[*q].registers[x] << "=" << a.states[*q].registers[*analysis.survival[x]];
        }
        out << "}\n";
        out << "I " << reg_set_text(a, *q, analysis.surviving) << "\n";
        out << "T " << reg_set_text(a, *q, analysis.transient) << "\n";
        out << "theta " << analysis.restore_period << "\n";
        out << "epsilon " << analysis.forget_traversals << "\n";
        out << "zeta " << analysis.reinit_traversals << "\n";
      }
    }
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace nomega
