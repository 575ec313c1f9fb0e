#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "avon/model.hpp"
#include "avon/syntax.hpp"
#include "avon/value.hpp"

namespace avon {

// A soop of (variable, domain expression); empty means epsilon.
using Context = std::vector<Binder>;
using State = std::vector<std::pair<std::string, Value>>;

std::string render_context(const Context& k);
std::string render_state(const State& s);
Context prefix(const Context& k, std::size_t n);

// Outcome of a decision procedure. On failure `reason` says what broke and
// `witness` is the state of the outer context where it broke, if any.
struct Check {
  bool ok = true;
  std::string reason;
  std::optional<State> witness;

  explicit operator bool() const { return ok; }
  static Check pass() { return {}; }
  static Check fail(std::string why, std::optional<State> at = std::nullopt) {
    return {false, std::move(why), std::move(at)};
  }
};

class SemanticError : public std::runtime_error {
 public:
  enum class Code {
    IllFormedContext,
    NotAnExpression,
    NotASentence,
    PreconditionViolated
  };
  SemanticError(Code code, const std::string& msg,
                std::optional<State> witness = std::nullopt)
      : std::runtime_error(msg), code_(code), witness_(std::move(witness)) {}
  Code code() const { return code_; }
  const std::optional<State>& witness() const { return witness_; }

 private:
  Code code_;
  std::optional<State> witness_;
};

std::set<std::string> free_vars(const Expr& t);
std::set<std::string> bound_vars(const Expr& t);
inline std::set<std::string> free_vars(const ExprPtr& t) { return free_vars(*t); }
inline std::set<std::string> bound_vars(const ExprPtr& t) { return bound_vars(*t); }

Check check_context(const Context& k, const Interpretation& I);

// Visits Xi(k) in canonical order; the visitor returns false to stop early.
// Throws SemanticError(IllFormedContext).
void for_each_state(const Context& k, const Interpretation& I,
                    const std::function<bool(const State&)>& visit);
std::vector<State> states(const Context& k, const Interpretation& I);
bool in_states(const Context& k, const State& s, const Interpretation& I);

// Level-free membership in E(k). Assumes nothing about k; an ill-formed
// context makes every expression fail.
Check check_expr(const Context& k, const Expr& t, const Interpretation& I);
inline bool is_expr(const Context& k, const ExprPtr& t, const Interpretation& I) {
  return check_expr(k, *t, I).ok;
}

// Sentence: an expression whose meaning is a truth value at every state.
Check check_sentence(const Context& k, const Expr& t, const Interpretation& I);
inline bool is_sentence(const Context& k, const ExprPtr& t,
                        const Interpretation& I) {
  return check_sentence(k, *t, I).ok;
}

// #(k, t, sigma). Throws SemanticError(PreconditionViolated) when t cannot be
// evaluated at sigma.
Value meaning(const Context& k, const Expr& t, const State& sigma,
              const Interpretation& I);
inline Value meaning(const Context& k, const ExprPtr& t, const State& sigma,
                     const Interpretation& I) {
  return meaning(k, *t, sigma, I);
}
// Meaning of a closed expression: #(eps, t, eps).
Value meaning(const ExprPtr& t, const Interpretation& I);

enum class Case {
  Constant,
  ContextVariable,
  Application,
  OperatorApplication,
  SetBuilder
};
std::string_view case_name(Case c);

struct Classification {
  Case which;
  // Head then arguments, operator arguments, or binder domains then body.
  std::vector<ExprPtr> parts;
  // For set-builders: k'_1 .. k'_m.
  std::vector<Context> extended;
};

// Throws SemanticError(NotAnExpression).
Classification classify(const Context& k, const ExprPtr& t,
                        const Interpretation& I);

}  // namespace avon
