#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "avon/semantics.hpp"

namespace avon {

enum class Schema {
  A5_2, A5_16, R3_7, R5_1, R5_3, R5_4, R5_5, R5_6, R5_7, R5_8, R5_9,
  R5_10, R5_11, R5_12, R5_13, R5_14, R5_15, R5_17, R5_18, R5_19, R5_20,
  R5_21, Semantic
};

// Script spelling: "A5.2", "R5.13", "semantic", ...
std::string_view schema_name(Schema s);
std::optional<Schema> schema_from_name(std::string_view name);
const std::vector<Schema>& all_schemas();
// Metavariables the schema needs, by script name (phi, psi, ..., i).
const std::vector<std::string>& required_metavars(Schema s);
std::size_t premise_count(Schema s);

// gamma[x1:phi1,...,xm:phim, phi] as nested (forall)({}(...)). With no
// binders it is phi itself.
ExprPtr gamma(const Context& binders, const ExprPtr& phi);
// As above but requires phi in S(binders). Throws SemanticError(NotASentence).
ExprPtr gamma_checked(const Context& binders, const ExprPtr& phi,
                      const Interpretation& I);

using MetaValue = std::variant<ExprPtr, long>;

struct Instantiation {
  Schema schema = Schema::Semantic;
  Context binders;
  std::map<std::string, MetaValue> metavars;
};

struct Verdict {
  bool ok = true;
  // "ok", "ShapeMismatch", "SideConditionViolated", "BadInstantiation",
  // "NotASentence", "EvaluatesFalse"
  std::string code = "ok";
  std::string detail;
  std::optional<State> witness;

  explicit operator bool() const { return ok; }
};

struct SchemaForm {
  std::vector<ExprPtr> premises;
  ExprPtr conclusion;
};

// Result of instantiating a schema: the verdict on binders, metavariables and
// side conditions, and on success the premise/conclusion shapes. A5.2 and
// R5.1 have two forms; semantic admission has none.
struct Expansion {
  Verdict verdict;
  std::vector<SchemaForm> forms;
};

Expansion expand_instance(const Instantiation& inst, const Interpretation& I);

Verdict check_instance(const Instantiation& inst,
                       const std::vector<ExprPtr>& premises,
                       const ExprPtr& conclusion, const Interpretation& I);

Verdict admit_semantic_axiom(const ExprPtr& phi, const Interpretation& I);

// #(gamma[binders, phi]) against the conjunction of #(k, phi, s) over Xi(k).
bool theorem_3_5_check(const Context& binders, const ExprPtr& phi,
                       const Interpretation& I);

}  // namespace avon
