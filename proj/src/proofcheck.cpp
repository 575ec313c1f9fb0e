#include "avon/proofcheck.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace avon {

ScriptError::ScriptError(Code code, std::size_t line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), code_(code), line_(line) {}

std::string_view code_name(ScriptError::Code c) {
  switch (c) {
    case ScriptError::Code::ParseError: return "ParseError";
    case ScriptError::Code::DuplicateStepId: return "DuplicateStepId";
    case ScriptError::Code::ForwardReference: return "ForwardReference";
  }
  return "?";
}

const StepResult* ProofVerdict::first_failure() const {
  for (const auto& s : steps)
    if (!s.verdict) return &s;
  return nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool starts_with_word(std::string_view s, std::string_view w) {
  return s.substr(0, w.size()) == w &&
         (s.size() == w.size() || std::isspace(static_cast<unsigned char>(s[w.size()])));
}

std::optional<long> to_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Index of the ')' matching the '(' at `open`, or npos.
std::size_t matching(std::string_view s, std::size_t open) {
  int d = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++d;
    if (s[i] == ')' && --d == 0) return i;
  }
  return std::string_view::npos;
}

std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int d = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++d;
    if (s[i] == ')') --d;
    if (s[i] == ',' && d == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string base_dir) : text_(text), base_(std::move(base_dir)) {}

  ProofScript run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    std::optional<Step> pending;
    bool done = false;
    while (std::getline(in, raw)) {
      ++line_;
      std::string_view l = trim(strip_comment(raw));
      if (l.empty()) continue;
      if (done) fail("nothing may follow qed");
      if (starts_with_word(l, "by")) {
        if (!pending) fail("'by' without a preceding step");
        justify(*pending, trim(l.substr(2)));
        add(std::move(*pending));
        pending.reset();
        continue;
      }
      if (pending) {
        line_for_error_ = pending->line;
        fail("step " + std::to_string(pending->id) + " has no justification");
      }
      if (starts_with_word(l, "model")) {
        model(trim(l.substr(5)));
      } else if (starts_with_word(l, "vars")) {
        std::istringstream ws{std::string(l.substr(4))};
        std::string v;
        while (ws >> v) script_.vars.insert(v);
        table_dirty_ = true;
      } else if (l.substr(0, 4) == "step" && l.size() > 4 &&
                 std::isspace(static_cast<unsigned char>(l[4]))) {
        pending = step(trim(l.substr(4)));
      } else if (starts_with_word(l, "qed")) {
        auto n = to_long(l.substr(3));
        if (!n) fail("qed needs a step number");
        auto it = by_id_.find(*n);
        if (it == by_id_.end()) fail("qed names unknown step " + std::to_string(*n));
        script_.qed = *n;
        script_.goal = script_.steps[it->second].statement;
        done = true;
      } else {
        fail("unrecognised line");
      }
    }
    if (pending) {
      line_for_error_ = pending->line;
      fail("step " + std::to_string(pending->id) + " has no justification");
    }
    if (!done) fail("missing qed");
    return std::move(script_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg,
                         ScriptError::Code c = ScriptError::Code::ParseError) {
    std::size_t at = line_for_error_ ? line_for_error_ : line_;
    throw ScriptError(c, at, msg);
  }

  const SymbolTable& table() {
    if (!have_model_) fail("a model line must come before the first step");
    if (table_dirty_) {
      table_ = script_.model.symbols();
      for (const auto& v : script_.vars) table_.variables.insert(v);
      try {
        table_.validate();
      } catch (const SyntaxError& e) {
        fail(std::string("bad declarations: ") + e.what());
      }
      table_dirty_ = false;
    }
    return table_;
  }

  ExprPtr expr(std::string_view s, const std::string& what) {
    try {
      return parse(s, table());
    } catch (const SyntaxError& e) {
      fail(what + ": " + std::string(code_name(e.code())) + " at offset " +
           std::to_string(e.offset()) + ": " + e.what());
    }
  }

  void model(std::string_view rest) {
    if (have_model_) fail("second model line");
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"')
      fail("model path must be quoted");
    std::filesystem::path p(std::string(rest.substr(1, rest.size() - 2)));
    if (p.is_relative()) p = std::filesystem::path(base_) / p;
    script_.model_path = p.lexically_normal().string();
    try {
      script_.model = load_model(script_.model_path);
    } catch (const ModelError& e) {
      fail("model " + script_.model_path + ": " + e.what());
    } catch (const std::exception& e) {
      fail("model " + script_.model_path + ": " + e.what());
    }
    have_model_ = true;
    table_dirty_ = true;
  }

  Step step(std::string_view rest) {
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail("expected 'step <n>: <expr>'");
    auto id = to_long(rest.substr(0, colon));
    if (!id || *id < 1) fail("step number must be a positive integer");
    if (by_id_.count(*id))
      fail("step " + std::to_string(*id) + " defined twice", ScriptError::Code::DuplicateStepId);
    if (!script_.steps.empty() && *id < script_.steps.back().id)
      fail("step numbers must increase");
    Step s;
    s.id = *id;
    s.line = line_;
    s.statement = expr(trim(rest.substr(colon + 1)), "statement");
    return s;
  }

  void justify(Step& s, std::string_view rest) {
    std::size_t sp = 0;
    while (sp < rest.size() && !std::isspace(static_cast<unsigned char>(rest[sp]))) ++sp;
    std::string name(rest.substr(0, sp));
    auto schema = schema_from_name(name);
    if (!schema) fail("unknown schema '" + name + "'");
    s.just.schema = *schema;
    rest = trim(rest.substr(sp));
    bool seen_from = false, seen_binders = false;
    while (!rest.empty()) {
      if (starts_with_word(rest, "from")) {
        if (seen_from) fail("second 'from' clause");
        seen_from = true;
        rest = trim(rest.substr(4));
        while (true) {
          std::size_t e = 0;
          while (e < rest.size() && std::isdigit(static_cast<unsigned char>(rest[e]))) ++e;
          auto n = to_long(rest.substr(0, e));
          if (!n) fail("expected a step number after 'from'");
          if (*n >= s.id)
            fail("step " + std::to_string(s.id) + " cites step " + std::to_string(*n),
                 ScriptError::Code::ForwardReference);
          s.from.push_back(*n);
          rest = trim(rest.substr(e));
          if (rest.empty() || rest.front() != ',') break;
          rest = trim(rest.substr(1));
        }
        continue;
      }
      std::size_t e = 0;
      while (e < rest.size() &&
             (std::isalnum(static_cast<unsigned char>(rest[e])) || rest[e] == '_'))
        ++e;
      if (e == 0 || e >= rest.size() || rest[e] != '(')
        fail("expected 'from', 'binders(...)' or '<metavar>(...)'");
      std::string key(rest.substr(0, e));
      std::size_t close = matching(rest, e);
      if (close == std::string_view::npos) fail("unbalanced parentheses in '" + key + "(...)'");
      std::string_view inner = rest.substr(e + 1, close - e - 1);
      rest = trim(rest.substr(close + 1));
      if (key == "binders") {
        if (seen_binders) fail("second binders clause");
        seen_binders = true;
        for (auto part : split_top(inner)) {
          auto c = part.find(':');
          if (c == std::string_view::npos) fail("binder '" + std::string(part) + "' needs a domain");
          std::string var(trim(part.substr(0, c)));
          if (!table().variables.count(var)) fail("binder '" + var + "' is not a declared variable");
          s.just.binders.push_back({var, expr(trim(part.substr(c + 1)), "domain of " + var)});
        }
        continue;
      }
      if (s.just.metavars.count(key)) fail("metavariable '" + key + "' given twice");
      if (key == "i") {
        auto n = to_long(inner);
        if (!n) fail("i(...) needs an index");
        s.just.metavars[key] = *n;
      } else {
        s.just.metavars[key] = expr(trim(inner), key);
      }
    }
  }

  void add(Step s) {
    by_id_[s.id] = script_.steps.size();
    script_.steps.push_back(std::move(s));
  }

  std::string_view text_;
  std::string base_;
  ProofScript script_;
  SymbolTable table_;
  bool have_model_ = false;
  bool table_dirty_ = true;
  std::size_t line_ = 0;
  std::size_t line_for_error_ = 0;
  std::map<long, std::size_t> by_id_;
};

}  // namespace

ProofScript parse_script(std::string_view text, const std::string& base_dir) {
  return Parser(text, base_dir).run();
}

ProofScript load_script(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse_script(ss.str(), dir.empty() ? "." : dir);
}

ProofVerdict check_proof(const ProofScript& script) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const Interpretation& I = script.model;
  ProofVerdict out;
  std::map<long, const StepResult*> done;
  std::map<long, ExprPtr> stmt;
  out.steps.reserve(script.steps.size());

  for (const auto& s : script.steps) {
    const auto t0 = clock::now();
    StepResult r;
    r.id = s.id;
    r.line = s.line;
    r.schema = std::string(schema_name(s.just.schema));
    std::vector<ExprPtr> premises;
    for (long p : s.from) {
      auto it = done.find(p);
      if (it == done.end()) {
        r.verdict = {false, "MissingPremise", "cites step " + std::to_string(p) + ", which does not exist", {}};
        break;
      }
      if (!it->second->verdict) {
        r.verdict = {false, "MissingPremise", "cites step " + std::to_string(p) + ", which was not verified", {}};
        break;
      }
      premises.push_back(stmt[p]);
    }
    if (r.verdict) {
      if (auto c = check_sentence({}, *s.statement, I); !c)
        r.verdict = {false, "NotASentence", "statement is not a closed sentence: " + c.reason, c.witness};
      else
        r.verdict = check_instance(s.just, premises, s.statement, I);
    }
    r.millis = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    if (r.verdict) ++out.verified;
    out.steps.push_back(std::move(r));
    done[s.id] = &out.steps.back();
    stmt[s.id] = s.statement;
  }

  out.accepted = out.verified == script.steps.size() && !script.steps.empty();
  if (out.accepted) {
    if (!script.goal || !equal(script.goal, script.steps.back().statement))
      out.post_check_failures.push_back("qed " + std::to_string(script.qed) +
                                        " is not the statement of the last step");
    for (const auto& s : script.steps)
      if (!meaning(s.statement, I).is_true())
        out.post_check_failures.push_back("step " + std::to_string(s.id) +
                                          " was accepted but evaluates to false");
    for (const auto& a : script.steps)
      for (const auto& b : script.steps)
        if (b.statement->kind == Expr::Kind::OpApply && b.statement->op == Op::Not &&
            equal(b.statement->args[0], a.statement))
          out.post_check_failures.push_back("steps " + std::to_string(a.id) + " and " +
                                            std::to_string(b.id) + " contradict each other");
    if (!out.post_check_failures.empty()) out.accepted = false;
  }
  out.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return out;
}

}  // namespace avon
