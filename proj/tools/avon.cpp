// avon: check proof scripts, evaluate and classify expressions.
//
// Exit codes: 0 success, 1 rejected / not an expression / round-trip
// failure, 2 usage, I/O or parse error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avon/generate.hpp"
#include "avon/proofcheck.hpp"

using namespace avon;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int d = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{') ++d;
    if (c == ')' || c == '}') --d;
    if (c == ',' && d == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string syntax_message(const SyntaxError& e) {
  return std::string(code_name(e.code())) + " at offset " + std::to_string(e.offset()) + ": " +
         e.what();
}

Interpretation model_or_empty(const std::string& path) {
  if (path.empty()) return {};
  try {
    return load_model(path);
  } catch (const ModelError& e) {
    throw Usage("model " + path + ": " + e.what());
  } catch (const std::exception& e) {
    throw Usage(e.what());
  }
}

SymbolTable table_with(const Interpretation& I, const Context& k) {
  SymbolTable t = I.symbols();
  for (const auto& b : k) t.variables.insert(b.var);
  return t;
}

ExprPtr parse_cli(const std::string& text, const SymbolTable& t, const std::string& what) {
  try {
    return parse(text, t, {.unknown_as_var = true});
  } catch (const SyntaxError& e) {
    throw Usage(what + " rejected: " + syntax_message(e));
  }
}

Context parse_context(const std::string& text, const Interpretation& I) {
  Context k;
  if (trim(text).empty()) return k;
  for (const auto& part : split_top(text)) {
    auto c = part.find(':');
    if (c == std::string::npos) throw Usage("context entry '" + trim(part) + "' needs ':'");
    std::string var = trim(part.substr(0, c));
    if (var.empty()) throw Usage("context entry '" + trim(part) + "' has no variable");
    SymbolTable t = table_with(I, k);
    t.variables.insert(var);
    k.push_back({var, parse_cli(part.substr(c + 1), t, "domain of " + var)});
  }
  return k;
}

State parse_state(const std::string& text) {
  State s;
  if (trim(text).empty()) return s;
  for (const auto& part : split_top(text)) {
    auto e = part.find('=');
    if (e == std::string::npos) throw Usage("state entry '" + trim(part) + "' needs '='");
    try {
      s.emplace_back(trim(part.substr(0, e)), parse_value(part.substr(e + 1)));
    } catch (const std::invalid_argument& ex) {
      throw Usage("state entry '" + trim(part) + "': " + ex.what());
    }
  }
  return s;
}

nlohmann::json witness_json(const std::optional<State>& w) {
  if (!w) return nullptr;
  nlohmann::json o = nlohmann::json::object();
  for (const auto& [v, val] : *w) o[v] = val.str();
  return o;
}

int cmd_check(const std::string& path, const std::string& report, bool timing) {
  ProofScript script;
  try {
    script = load_script(path);
  } catch (const ScriptError& e) {
    std::cerr << path << ": " << code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }
  ProofVerdict v = check_proof(script);
  if (report == "json-lines") {
    for (const auto& s : v.steps) {
      nlohmann::json j = {{"type", "step"},
                          {"id", s.id},
                          {"line", s.line},
                          {"schema", s.schema},
                          {"verdict", s.verdict.code},
                          {"detail", s.verdict.detail},
                          {"witness", witness_json(s.verdict.witness)}};
      if (timing) j["ms"] = s.millis;
      std::cout << j.dump() << "\n";
    }
    nlohmann::json sum = {{"type", "summary"},
                          {"verified", v.verified},
                          {"total", v.steps.size()},
                          {"accepted", v.accepted},
                          {"post_check_failures", v.post_check_failures}};
    if (timing) sum["seconds"] = v.seconds;
    std::cout << sum.dump() << "\n";
  } else {
    for (const auto& s : v.steps) {
      std::cout << "step " << s.id << " [" << s.schema << "] ";
      if (s.verdict) {
        std::cout << "ok";
      } else {
        std::cout << s.verdict.code << " (line " << s.line << "): " << s.verdict.detail;
        if (s.verdict.witness) std::cout << "\n  witness: " << render_state(*s.verdict.witness);
      }
      if (timing) std::cout << "  " << s.millis << " ms";
      std::cout << "\n";
    }
    for (const auto& f : v.post_check_failures) std::cout << "post-check: " << f << "\n";
    std::cout << v.verified << "/" << v.steps.size() << " steps verified\n";
    if (v.accepted) {
      std::cout << "accepted: " << render(script.goal) << "\n";
    } else if (const auto* f = v.first_failure()) {
      std::cout << "rejected at step " << f->id << "\n";
    } else {
      std::cout << "rejected\n";
    }
    if (timing) std::cout << "time: " << v.seconds << " s\n";
  }
  return v.accepted ? 0 : 1;
}

int cmd_eval(const std::string& model, const std::string& ctx, const std::string& state,
             const std::string& text) {
  Interpretation I = model_or_empty(model);
  Context k = parse_context(ctx, I);
  if (auto c = check_context(k, I); !c) throw Usage("IllFormedContext: " + c.reason);
  State s = parse_state(state);
  if (s.size() != k.size()) throw Usage("state does not assign exactly the context variables");
  for (std::size_t j = 0; j < k.size(); ++j)
    if (s[j].first != k[j].var)
      throw Usage("state assigns '" + s[j].first + "' where the context has '" + k[j].var + "'");
  if (!in_states(k, s, I)) throw Usage("state is not in the state space of the context");
  ExprPtr e = parse_cli(text, table_with(I, k), "expression");
  if (auto c = check_expr(k, *e, I); !c) throw Usage("NotAnExpression: " + c.reason);
  std::cout << meaning(k, *e, s, I).str() << "\n";
  return 0;
}

int cmd_wf(const std::string& model, const std::string& ctx, const std::string& text) {
  Interpretation I = model_or_empty(model);
  Context k = parse_context(ctx, I);
  ExprPtr e = parse_cli(text, table_with(I, k), "expression");
  if (auto c = check_expr(k, *e, I); !c) {
    std::cout << "NotAnExpression: " << c.reason << "\n";
    if (c.witness) std::cout << "  witness: " << render_state(*c.witness) << "\n";
    return 1;
  }
  Classification cl = classify(k, e, I);
  bool sentence = is_sentence(k, e, I);
  std::cout << case_name(cl.which) << ", " << (sentence ? "sentence" : "not a sentence") << "\n";
  return 0;
}

int cmd_roundtrip(int count) {
  std::uint64_t seed = 1;
  if (const char* env = std::getenv("AVON_SEED")) seed = std::strtoull(env, nullptr, 10);
  Generator g(seed);
  SymbolTable t;
  t.variables = {"x", "y", "z", "u"};
  t.constants = {"A", "B", "a", "f", "*", "|"};
  int ok = 0;
  for (int n = 0; n < count; ++n) {
    ExprPtr e = g.syntax(t, g.uniform(0, 5));
    std::string s = render(e);
    try {
      if (equal(parse(s, t), e)) {
        ++ok;
        continue;
      }
      std::cout << "mismatch: " << s << "\n";
    } catch (const SyntaxError& ex) {
      std::cout << "unparseable: " << s << ": " << syntax_message(ex) << "\n";
    }
  }
  std::cout << ok << "/" << count << " round-trips ok (seed " << seed << ")\n";
  return ok == count ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"avon: proof checker for a language with set-builder binders"};
  app.require_subcommand(1);

  std::string script, report = "text";
  bool timing = false;
  auto* check = app.add_subcommand("check", "verify a proof script");
  check->add_option("script", script, "proof script")->required();
  check->add_option("--report", report, "text or json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));
  check->add_flag("--timing", timing, "print timings (makes output nondeterministic)");

  std::string model, ctx, state, expr;
  auto* eval = app.add_subcommand("eval", "evaluate an expression at a state");
  eval->add_option("--model", model, "model file");
  eval->add_option("--context", ctx, "x:dom, ...");
  eval->add_option("--state", state, "x=value, ...");
  eval->add_option("expr", expr, "expression")->required();

  std::vector<std::string> wf_args;
  auto* wf = app.add_subcommand("wf", "classify an expression and test sentencehood");
  wf->add_option("--model", model, "model file");
  wf->add_option("--context", ctx, "x:dom, ...");
  wf->add_option("args", wf_args, "[context] expression")->required()->expected(1, 2);

  int count = 1000;
  auto* rt = app.add_subcommand("roundtrip", "generate, render and reparse random syntax");
  rt->add_option("--count", count, "number of trees")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return cmd_check(script, report, timing);
    if (*eval) return cmd_eval(model, ctx, state, expr);
    if (*wf) {
      if (wf_args.size() == 2) ctx = wf_args[0];
      return cmd_wf(model, ctx, wf_args.back());
    }
    if (*rt) return cmd_roundtrip(count);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
