#include "avon/calculus.hpp"

#include <algorithm>

#include "avon/substitution.hpp"

namespace avon {

namespace {

struct SchemaInfo {
  Schema schema;
  const char* name;
  std::vector<std::string> metavars;
  std::size_t premises;
};

const std::vector<SchemaInfo>& table() {
  static const std::vector<SchemaInfo> t = {
      {Schema::A5_2, "A5.2", {"phi", "psi"}, 0},
      {Schema::A5_16, "A5.16", {"i"}, 0},
      {Schema::R3_7, "R3.7", {"phi", "psi1", "psi2"}, 2},
      {Schema::R5_1, "R5.1", {"phi", "psi"}, 1},
      {Schema::R5_3, "R5.3", {"phi", "psi", "chi"}, 2},
      {Schema::R5_4, "R5.4", {"chi", "phi", "t", "tprime"}, 2},
      {Schema::R5_5, "R5.5", {"phi", "psi"}, 1},
      {Schema::R5_6, "R5.6", {"theta", "phi", "psi", "chi"}, 2},
      {Schema::R5_7, "R5.7", {"chi", "phi", "t"}, 1},
      {Schema::R5_8, "R5.8", {"phi", "psi", "chi"}, 2},
      {Schema::R5_9, "R5.9", {"phi", "psi", "chi"}, 1},
      {Schema::R5_10, "R5.10", {"psi", "phi"}, 1},
      {Schema::R5_11, "R5.11", {"chi", "psi", "phi"}, 1},
      {Schema::R5_12, "R5.12", {"psi", "phi"}, 1},
      {Schema::R5_13, "R5.13", {"phi", "psi", "chi"}, 2},
      {Schema::R5_14, "R5.14", {"chi", "phi", "t"}, 1},
      {Schema::R5_15, "R5.15", {"chi", "phi", "t"}, 2},
      {Schema::R5_17, "R5.17", {"phi", "psi"}, 1},
      {Schema::R5_18, "R5.18", {"phi", "psi"}, 1},
      {Schema::R5_19, "R5.19", {"phi"}, 1},
      {Schema::R5_20, "R5.20", {"psi", "phi"}, 1},
      {Schema::R5_21, "R5.21", {"phi", "psi", "chi"}, 1},
      {Schema::Semantic, "semantic", {}, 0},
  };
  return t;
}

const SchemaInfo& info(Schema s) {
  for (const auto& e : table())
    if (e.schema == s) return e;
  return table().back();
}

ExprPtr imp(ExprPtr a, ExprPtr b) { return mk_op(Op::Implies, {std::move(a), std::move(b)}); }
ExprPtr conj(ExprPtr a, ExprPtr b) { return mk_op(Op::And, {std::move(a), std::move(b)}); }
ExprPtr iff(ExprPtr a, ExprPtr b) { return mk_op(Op::Iff, {std::move(a), std::move(b)}); }
ExprPtr eq(ExprPtr a, ExprPtr b) { return mk_op(Op::Eq, {std::move(a), std::move(b)}); }
ExprPtr in(ExprPtr a, ExprPtr b) { return mk_op(Op::In, {std::move(a), std::move(b)}); }
ExprPtr neg(ExprPtr a) { return mk_op(Op::Not, {std::move(a)}); }
ExprPtr all(const Binder& b, ExprPtr body) {
  return mk_op(Op::Forall, {mk_set({b}, std::move(body))});
}
ExprPtr some(const Binder& b, ExprPtr body) {
  return mk_op(Op::Exists, {mk_set({b}, std::move(body))});
}

struct Reject {
  std::string code;
  std::string detail;
  std::optional<State> witness;
};

using Form = SchemaForm;

class Run {
 public:
  Run(const Instantiation& inst, const Interpretation& I) : inst_(inst), I_(I) {}

  ExprPtr get(const std::string& name) const {
    auto it = inst_.metavars.find(name);
    if (it == inst_.metavars.end())
      throw Reject{"BadInstantiation", "missing metavariable " + name, {}};
    if (!std::holds_alternative<ExprPtr>(it->second))
      throw Reject{"BadInstantiation", "metavariable " + name + " needs an expression", {}};
    return std::get<ExprPtr>(it->second);
  }

  bool has(const std::string& name) const { return inst_.metavars.count(name) > 0; }

  long index(const std::string& name) const {
    auto it = inst_.metavars.find(name);
    if (it == inst_.metavars.end())
      throw Reject{"BadInstantiation", "missing metavariable " + name, {}};
    if (!std::holds_alternative<long>(it->second))
      throw Reject{"BadInstantiation", "metavariable " + name + " needs an index", {}};
    return std::get<long>(it->second);
  }

  void sentence(const Context& k, const ExprPtr& e, const std::string& what,
                const std::string& where) const {
    if (auto c = check_sentence(k, *e, I_); !c)
      throw Reject{"SideConditionViolated",
                   what + " = " + render(e) + " is not a sentence in " + where + ": " + c.reason,
                   c.witness};
  }

  void expression(const Context& k, const ExprPtr& e, const std::string& what,
                  const std::string& where) const {
    if (auto c = check_expr(k, *e, I_); !c)
      throw Reject{"SideConditionViolated",
                   what + " = " + render(e) + " is not an expression in " + where + ": " +
                       c.reason,
                   c.witness};
  }

  void set_valued(const Context& h, const ExprPtr& e, const std::string& what) const {
    expression(h, e, what, "h");
    for_each_state(h, I_, [&](const State& s) {
      Value v = meaning(h, *e, s, I_);
      if (!v.is_set())
        throw Reject{"SideConditionViolated",
                     what + " denotes " + v.str() + ", not a set", s};
      return true;
    });
  }

  void member(const Context& h, const ExprPtr& t, const ExprPtr& dom,
              const std::string& what) const {
    expression(h, t, what, "h");
    for_each_state(h, I_, [&](const State& s) {
      Value tv = meaning(h, *t, s, I_);
      Value dv = meaning(h, *dom, s, I_);
      if (!dv.contains(tv))
        throw Reject{"SideConditionViolated",
                     "meaning " + tv.str() + " of " + what + " is not in " + dv.str(), s};
      return true;
    });
  }

  void no_bound(const std::string& var, const ExprPtr& e, const std::string& what) const {
    if (bound_vars(*e).count(var))
      throw Reject{"SideConditionViolated", var + " is bound in " + what, {}};
  }

  void disjoint_bound(const ExprPtr& a, const ExprPtr& b, const std::string& what) const {
    auto vb = bound_vars(*b);
    for (const auto& v : bound_vars(*a))
      if (vb.count(v))
        throw Reject{"SideConditionViolated", what + " both bind " + v, {}};
  }

  ExprPtr subst(const Context& k, const ExprPtr& phi, const ExprPtr& t) const {
    try {
      return subst_expr(SubstRequest{k, k.size(), t, phi}, I_);
    } catch (const SubstError& e) {
      throw Reject{"SideConditionViolated", std::string("substitution: ") + e.what(),
                   e.witness()};
    }
  }

 private:
  const Instantiation& inst_;
  const Interpretation& I_;
};

void match_forms(const std::vector<Form>& forms, const std::vector<ExprPtr>& premises,
                  const ExprPtr& conclusion) {
  std::string first_problem;
  for (const auto& f : forms) {
    std::string problem;
    if (f.premises.size() != premises.size()) {
      problem = "expected " + std::to_string(f.premises.size()) + " premise(s), got " +
                std::to_string(premises.size());
    } else {
      for (std::size_t j = 0; j < premises.size() && problem.empty(); ++j)
        if (!equal(f.premises[j], premises[j]))
          problem = "premise " + std::to_string(j + 1) + " should be " +
                    render(f.premises[j]) + " but is " + render(premises[j]);
      if (problem.empty() && !equal(f.conclusion, conclusion))
        problem = "conclusion should be " + render(f.conclusion) + " but is " +
                  render(conclusion);
    }
    if (problem.empty()) return;
    if (first_problem.empty()) first_problem = problem;
  }
  throw Reject{"ShapeMismatch", first_problem, {}};
}

void check_metavars(const Instantiation& inst) {
  const auto& need = info(inst.schema).metavars;
  for (const auto& n : need)
    if (!inst.metavars.count(n))
      throw Reject{"BadInstantiation", "missing metavariable " + n, {}};
  for (const auto& [n, _] : inst.metavars) {
    bool optional_chi = inst.schema == Schema::R5_19 && n == "chi";
    if (!optional_chi && std::find(need.begin(), need.end(), n) == need.end())
      throw Reject{"BadInstantiation",
                   "metavariable " + n + " is not used by " +
                       std::string(schema_name(inst.schema)),
                   {}};
  }
}

enum class Arity { None, Full, Split, One };

Arity binder_shape(Schema s) {
  switch (s) {
    case Schema::Semantic:
    case Schema::R5_21:
      return Arity::None;
    case Schema::R5_20:
      return Arity::One;
    case Schema::R5_4:
    case Schema::R5_7:
    case Schema::R5_10:
    case Schema::R5_11:
    case Schema::R5_12:
    case Schema::R5_14:
    case Schema::R5_15:
    case Schema::R5_19:
      return Arity::Split;
    default:
      return Arity::Full;
  }
}

std::vector<Form> run_schema(const Instantiation& inst, const Interpretation& I) {
  Run r(inst, I);
  std::vector<Form> forms;
  auto emit = [&](std::vector<Form> f) { forms = std::move(f); };
  const Context& k = inst.binders;
  const std::size_t n = k.size();
  switch (binder_shape(inst.schema)) {
    case Arity::None:
      if (n != 0) throw Reject{"BadInstantiation", "this schema takes no binders", {}};
      break;
    case Arity::One:
      if (n != 1) throw Reject{"BadInstantiation", "this schema takes exactly one binder", {}};
      break;
    case Arity::Full:
      if (n < 1) throw Reject{"BadInstantiation", "this schema needs at least one binder", {}};
      break;
    case Arity::Split:
      if (n < 2)
        throw Reject{"BadInstantiation",
                     "this schema needs binders x1..x(m+1) with m >= 1", {}};
      break;
  }
  if (auto c = check_context(k, I); !c)
    throw Reject{"SideConditionViolated", "binders do not form a context: " + c.reason,
                 c.witness};

  const Context h = n ? prefix(k, n - 1) : Context{};
  const Binder last = n ? k.back() : Binder{};
  auto G = [&](ExprPtr e) { return gamma(k, std::move(e)); };
  auto H = [&](ExprPtr e) { return gamma(h, std::move(e)); };

  switch (inst.schema) {
    case Schema::A5_2: {
      auto phi = r.get("phi"), psi = r.get("psi");
      emit({{{}, G(imp(conj(phi, psi), phi))}, {{}, G(imp(conj(phi, psi), psi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      return forms;
    }
    case Schema::A5_16: {
      long i = r.index("i");
      if (i < 1 || i > static_cast<long>(n))
        throw Reject{"BadInstantiation", "i must lie in 1.." + std::to_string(n), {}};
      const Binder& b = k[i - 1];
      emit({{{}, G(in(mk_var(b.var), b.dom))}});
      for (std::size_t j = i; j <= n; ++j)
        r.no_bound(k[j - 1].var, b.dom, "the domain of " + b.var);
      return forms;
    }
    case Schema::R3_7: {
      auto phi = r.get("phi"), p1 = r.get("psi1"), p2 = r.get("psi2");
      emit({{{G(imp(phi, p1)), G(imp(phi, p2))}, G(imp(phi, conj(p1, p2)))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, p1, "psi1", "k");
      r.sentence(k, p2, "psi2", "k");
      return forms;
    }
    case Schema::R5_1: {
      auto phi = r.get("phi"), psi = r.get("psi");
      emit({{{G(iff(phi, psi))}, G(imp(phi, psi))}, {{G(iff(phi, psi))}, G(imp(psi, phi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      return forms;
    }
    case Schema::R5_3:
    case Schema::R5_8: {
      auto phi = r.get("phi"), psi = r.get("psi"), chi = r.get("chi");
      emit({{{G(imp(phi, psi)), G(imp(psi, chi))}, G(imp(phi, chi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, chi, "chi", "k");
      return forms;
    }
    case Schema::R5_4: {
      auto chi = r.get("chi"), phi = r.get("phi"), t = r.get("t"), t2 = r.get("tprime");
      r.sentence(h, chi, "chi", "h");
      r.sentence(k, phi, "phi", "k");
      r.member(h, t, last.dom, "t");
      r.member(h, t2, last.dom, "tprime");
      r.disjoint_bound(t, phi, "t and phi");
      r.disjoint_bound(t2, phi, "tprime and phi");
      auto at = r.subst(k, phi, t), at2 = r.subst(k, phi, t2);
      emit({{{H(imp(chi, at)), H(imp(chi, eq(t, t2)))}, H(imp(chi, at2))}});
      return forms;
    }
    case Schema::R5_5: {
      auto phi = r.get("phi"), psi = r.get("psi");
      emit({{{G(phi)}, G(imp(psi, phi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      return forms;
    }
    case Schema::R5_6: {
      auto th = r.get("theta"), phi = r.get("phi"), psi = r.get("psi"), chi = r.get("chi");
      emit({{{G(imp(th, eq(phi, psi))), G(imp(th, eq(psi, chi)))}, G(imp(th, eq(phi, chi)))}});
      r.expression(k, phi, "phi", "k");
      r.expression(k, psi, "psi", "k");
      r.expression(k, chi, "chi", "k");
      r.sentence(k, th, "theta", "k");
      return forms;
    }
    case Schema::R5_7: {
      auto chi = r.get("chi"), phi = r.get("phi"), t = r.get("t");
      r.sentence(h, chi, "chi", "h");
      r.sentence(k, phi, "phi", "k");
      r.member(h, t, last.dom, "t");
      r.disjoint_bound(t, phi, "t and phi");
      auto at = r.subst(k, phi, t);
      emit({{{H(imp(chi, at))}, H(imp(chi, some(last, phi)))}});
      return forms;
    }
    case Schema::R5_9: {
      auto phi = r.get("phi"), psi = r.get("psi"), chi = r.get("chi");
      emit({{{G(imp(conj(phi, psi), chi))}, G(imp(phi, imp(psi, chi)))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, chi, "chi", "k");
      return forms;
    }
    case Schema::R5_10: {
      auto psi = r.get("psi"), phi = r.get("phi");
      emit({{{H(all(last, imp(psi, phi)))}, H(imp(psi, all(last, phi)))}});
      r.sentence(k, psi, "psi", "k");
      r.sentence(h, psi, "psi", "h");
      r.sentence(k, phi, "phi", "k");
      return forms;
    }
    case Schema::R5_11: {
      auto chi = r.get("chi"), psi = r.get("psi"), phi = r.get("phi");
      emit({{{H(imp(chi, all(last, imp(psi, phi))))},
                   H(imp(chi, imp(some(last, psi), phi)))}});
      r.sentence(h, chi, "chi", "h");
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, phi, "phi", "k");
      r.sentence(h, phi, "phi", "h");
      return forms;
    }
    case Schema::R5_12: {
      auto psi = r.get("psi"), phi = r.get("phi");
      emit({{{H(all(last, imp(psi, phi)))}, H(imp(some(last, psi), phi))}});
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, phi, "phi", "k");
      r.sentence(h, phi, "phi", "h");
      return forms;
    }
    case Schema::R5_13: {
      auto phi = r.get("phi"), psi = r.get("psi"), chi = r.get("chi");
      emit({{{G(imp(phi, psi)), G(imp(phi, imp(psi, chi)))}, G(imp(phi, chi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, chi, "chi", "k");
      return forms;
    }
    case Schema::R5_14: {
      auto chi = r.get("chi"), phi = r.get("phi"), t = r.get("t");
      r.sentence(h, chi, "chi", "h");
      r.sentence(k, phi, "phi", "k");
      r.member(h, t, last.dom, "t");
      r.disjoint_bound(t, phi, "t and phi");
      auto at = r.subst(k, phi, t);
      emit({{{H(imp(chi, all(last, phi)))}, H(imp(chi, at))}});
      return forms;
    }
    case Schema::R5_15: {
      auto chi = r.get("chi"), phi = r.get("phi"), t = r.get("t");
      emit({{{H(imp(chi, all(last, in(mk_var(last.var), phi)))),
                    H(imp(chi, in(t, last.dom)))},
                   H(imp(chi, in(t, phi)))}});
      r.sentence(h, chi, "chi", "h");
      r.expression(h, t, "t", "h");
      r.set_valued(h, phi, "phi");
      r.no_bound(last.var, phi, "phi");
      return forms;
    }
    case Schema::R5_17: {
      auto phi = r.get("phi"), psi = r.get("psi");
      emit({{{G(imp(phi, conj(psi, neg(psi))))}, G(neg(phi))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      return forms;
    }
    case Schema::R5_18: {
      auto phi = r.get("phi"), psi = r.get("psi");
      emit({{{G(neg(conj(phi, psi)))}, G(imp(phi, neg(psi)))}});
      r.sentence(k, phi, "phi", "k");
      r.sentence(k, psi, "psi", "k");
      return forms;
    }
    case Schema::R5_19: {
      auto phi = r.get("phi");
      ExprPtr before = neg(all(last, phi)), after = some(last, neg(phi));
      if (r.has("chi")) {
        // Guarded form, as used under an implication in the Bocardo proof.
        auto chi = r.get("chi");
        emit({{{H(imp(chi, before))}, H(imp(chi, after))}});
        r.sentence(h, chi, "chi", "h");
      } else {
        emit({{{H(before)}, H(after)}});
      }
      r.sentence(k, phi, "phi", "k");
      return forms;
    }
    case Schema::R5_20: {
      auto psi = r.get("psi"), phi = r.get("phi");
      emit({{{G(imp(psi, phi))}, imp(some(k[0], psi), phi)}});
      r.sentence(k, psi, "psi", "k");
      r.sentence(k, phi, "phi", "k");
      r.sentence({}, phi, "phi", "the empty context");
      return forms;
    }
    case Schema::R5_21: {
      auto phi = r.get("phi"), psi = r.get("psi"), chi = r.get("chi");
      emit({{{imp(phi, imp(psi, chi))}, imp(conj(phi, psi), chi)}});
      r.sentence({}, phi, "phi", "the empty context");
      r.sentence({}, psi, "psi", "the empty context");
      r.sentence({}, chi, "chi", "the empty context");
      return forms;
    }
    case Schema::Semantic:
      return forms;
  }
  return forms;
}

}  // namespace

std::string_view schema_name(Schema s) { return info(s).name; }

std::optional<Schema> schema_from_name(std::string_view name) {
  for (const auto& e : table())
    if (name == e.name) return e.schema;
  if (name == "SEMANTIC") return Schema::Semantic;
  return std::nullopt;
}

const std::vector<Schema>& all_schemas() {
  static const std::vector<Schema> v = [] {
    std::vector<Schema> out;
    for (const auto& e : table()) out.push_back(e.schema);
    return out;
  }();
  return v;
}

const std::vector<std::string>& required_metavars(Schema s) { return info(s).metavars; }

std::size_t premise_count(Schema s) { return info(s).premises; }

ExprPtr gamma(const Context& binders, const ExprPtr& phi) {
  ExprPtr out = phi;
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) out = all(*it, out);
  return out;
}

ExprPtr gamma_checked(const Context& binders, const ExprPtr& phi, const Interpretation& I) {
  if (auto c = check_sentence(binders, *phi, I); !c)
    throw SemanticError(SemanticError::Code::NotASentence,
                        render(phi) + " is not a sentence over the binders: " + c.reason,
                        c.witness);
  return gamma(binders, phi);
}

Expansion expand_instance(const Instantiation& inst, const Interpretation& I) {
  Expansion out;
  if (inst.schema == Schema::Semantic) {
    if (!inst.binders.empty() || !inst.metavars.empty())
      out.verdict = {false, "BadInstantiation", "semantic admission takes no parameters", {}};
    return out;
  }
  try {
    check_metavars(inst);
    out.forms = run_schema(inst, I);
  } catch (const Reject& r) {
    out.verdict = {false, r.code, r.detail, r.witness};
  } catch (const SemanticError& e) {
    out.verdict = {false, "SideConditionViolated", e.what(), e.witness()};
  }
  return out;
}

Verdict check_instance(const Instantiation& inst, const std::vector<ExprPtr>& premises,
                       const ExprPtr& conclusion, const Interpretation& I) {
  if (inst.schema == Schema::Semantic) {
    if (!premises.empty())
      return {false, "BadInstantiation", "semantic admission takes no premises", {}};
    Expansion e = expand_instance(inst, I);
    if (!e.verdict) return e.verdict;
    return admit_semantic_axiom(conclusion, I);
  }
  if (premises.size() != premise_count(inst.schema))
    return {false, "ShapeMismatch",
            std::string(schema_name(inst.schema)) + " takes " +
                std::to_string(premise_count(inst.schema)) + " premise(s), got " +
                std::to_string(premises.size()),
            {}};
  Expansion e = expand_instance(inst, I);
  if (!e.verdict) return e.verdict;
  try {
    match_forms(e.forms, premises, conclusion);
  } catch (const Reject& r) {
    return {false, r.code, r.detail, r.witness};
  }
  return {};
}

Verdict admit_semantic_axiom(const ExprPtr& phi, const Interpretation& I) {
  if (auto c = check_sentence({}, *phi, I); !c)
    return {false, "NotASentence", c.reason, c.witness};
  if (!meaning(phi, I).is_true())
    return {false, "EvaluatesFalse", render(phi) + " evaluates to false", {}};
  return {};
}

bool theorem_3_5_check(const Context& binders, const ExprPtr& phi, const Interpretation& I) {
  Value closed = meaning(gamma(binders, phi), I);
  bool all_true = true;
  for_each_state(binders, I, [&](const State& s) {
    if (!meaning(binders, *phi, s, I).is_true()) all_true = false;
    return all_true;
  });
  return closed == Value::truth(all_true);
}

}  // namespace avon
