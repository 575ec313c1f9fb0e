#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "avon/semantics.hpp"

namespace avon {

struct SubstRequest {
  Context k;
  std::size_t i = 1;  // 1-based index of the replaced variable x_i
  ExprPtr t;          // expression over k_{i-1}
  ExprPtr phi;        // target; null for a context-only request
};

class SubstError : public std::runtime_error {
 public:
  SubstError(std::string which, const std::string& msg,
             std::optional<State> witness = std::nullopt)
      : std::runtime_error(msg), which_(std::move(which)),
        witness_(std::move(witness)) {}
  // Short name of the violated condition.
  const std::string& which() const { return which_; }
  const std::optional<State>& witness() const { return witness_; }

 private:
  std::string which_;
  std::optional<State> witness_;
};

// Plain structural replacement of every occurrence of `var` by `t`.
ExprPtr replace_var(const ExprPtr& phi, const std::string& var, const ExprPtr& t);

// Checks the preconditions by enumeration; a failed Check names the
// condition and carries the state where it broke.
Check check_subst(const SubstRequest& req, const Interpretation& I);

// k{x_i/t}. Throws SubstError.
Context subst_context(const SubstRequest& req, const Interpretation& I);
// phi_k{x_i/t}. Throws SubstError.
ExprPtr subst_expr(const SubstRequest& req, const Interpretation& I);

struct SubstReport {
  std::size_t states_checked = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// Replays the meaning-preservation argument state by state.
SubstReport certify_subst(const SubstRequest& req, const Interpretation& I);

}  // namespace avon
