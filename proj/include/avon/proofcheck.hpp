#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "avon/calculus.hpp"

namespace avon {

struct Step {
  long id = 0;
  ExprPtr statement;
  std::size_t line = 0;
  Instantiation just;
  std::vector<long> from;
};

struct ProofScript {
  std::string model_path;  // as resolved against the script's directory
  Interpretation model;
  std::set<std::string> vars;
  std::vector<Step> steps;
  long qed = 0;
  ExprPtr goal;
};

class ScriptError : public std::runtime_error {
 public:
  enum class Code { ParseError, DuplicateStepId, ForwardReference };
  ScriptError(Code code, std::size_t line, const std::string& msg);
  Code code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  Code code_;
  std::size_t line_;
};

std::string_view code_name(ScriptError::Code c);

// `base_dir` resolves the relative model path. Throws ScriptError; model
// loading problems surface as ParseError on the model line.
ProofScript parse_script(std::string_view text, const std::string& base_dir);
ProofScript load_script(const std::string& path);

struct StepResult {
  long id = 0;
  std::size_t line = 0;
  std::string schema;
  Verdict verdict;
  double millis = 0;
};

struct ProofVerdict {
  bool accepted = false;
  std::vector<StepResult> steps;
  std::size_t verified = 0;
  // Problems found after every step verified: goal mismatch, a statement
  // that does not evaluate true, or a statement next to its own negation.
  std::vector<std::string> post_check_failures;
  double seconds = 0;

  const StepResult* first_failure() const;
};

ProofVerdict check_proof(const ProofScript& script);

}  // namespace avon
