#pragma once

// Random inputs shared by the unit tests and the acceptance binary.

#include <optional>

#include "avon/generate.hpp"
#include "avon/substitution.hpp"
#include "oracles.hpp"

namespace fuzz {

using namespace avon;

struct SubstCase {
  Interpretation I;
  SubstRequest req;
};

// A request that satisfies every precondition, or nullopt after `tries`.
inline std::optional<SubstCase> subst_case(Generator& g, int tries = 200) {
  for (int n = 0; n < tries; ++n) {
    SubstCase c;
    c.I = g.model(g.uniform(1, 4));
    c.req.k = g.context({"x", "y", "z"}, g.uniform(1, 3));
    if (!check_context(c.req.k, c.I)) continue;
    c.req.i = static_cast<std::size_t>(g.uniform(1, static_cast<int>(c.req.k.size())));
    Context before = prefix(c.req.k, c.req.i - 1);
    c.req.t = g.element(before, 2);
    switch (g.uniform(0, 2)) {
      case 0: c.req.phi = g.sentence(c.req.k, 3); break;
      case 1: c.req.phi = g.set(c.req.k, 3); break;
      default: c.req.phi = g.element(c.req.k, 3); break;
    }
    if (!is_expr(c.req.k, c.req.phi, c.I)) continue;
    if (!check_subst(c.req, c.I)) continue;
    return c;
  }
  return std::nullopt;
}

// Independent restatement of the substitution property: for each state rho
// of k{x_i/t}, the state sigma obtained by inserting x_i = #(t) is a state of
// k, and phi at sigma means what phi{x_i/t} means at rho.
inline bool subst_oracle(const SubstCase& c, const Context& k2, const ExprPtr& phi2,
                         std::string* why = nullptr) {
  const auto& k = c.req.k;
  auto rhos = oracle::states(k2, c.I);
  auto sigmas = oracle::states(k, c.I);
  if (!rhos || !sigmas) {
    if (why) *why = "state space failed to evaluate";
    return false;
  }
  for (const auto& rho : *rhos) {
    auto tv = oracle::eval(*c.req.t, c.I, rho);
    if (!tv) {
      if (why) *why = "t does not evaluate";
      return false;
    }
    oracle::Env sigma = rho;
    sigma[k[c.req.i - 1].var] = *tv;
    if (std::find(sigmas->begin(), sigmas->end(), sigma) == sigmas->end()) {
      if (why) *why = "rebuilt state is not a state of k";
      return false;
    }
    auto lhs = oracle::eval(*c.req.phi, c.I, sigma);
    auto rhs = oracle::eval(*phi2, c.I, rho);
    if (!lhs || !rhs || *lhs != *rhs) {
      if (why) *why = "meanings differ";
      return false;
    }
  }
  return true;
}

}  // namespace fuzz

#include <map>

#include "avon/calculus.hpp"

namespace fuzz {

struct SoundnessStats {
  int derivations = 0;        // derivations with at least one rule step
  int rule_steps = 0;         // accepted rule instances
  int axiom_steps = 0;        // accepted A5.2 / A5.16 / semantic admissions
  int chained_premises = 0;   // premises that were conclusions of earlier rule steps
  int rejected_false_premise = 0;
  std::map<Schema, int> accepted;
  std::vector<std::string> failures;
};

class Deriver {
 public:
  Deriver(Generator& g, SoundnessStats& st) : g_(g), st_(st) {}

  // One derivation over a fresh model. Returns the accepted statements.
  std::vector<ExprPtr> run(int attempts = 40, int max_rules = 6) {
    I_ = g_.model(g_.uniform(1, 3));
    full_ = g_.context({"x", "y", "z"}, 3);
    pool_.clear();
    derived_.clear();
    vocab_.assign(4, {});
    if (!check_context(full_, I_)) return {};
    for (int j = 0; j <= 3; ++j)
      for (int n = 0; n < 3; ++n) vocab_[j].push_back(g_.sentence(prefix(full_, j), 2));
    int rules = 0;
    for (int a = 0; a < attempts && rules < max_rules; ++a)
      if (!derived_.empty() && g_.chance(0.6) ? chain() : attempt()) ++rules;
    if (rules > 0) ++st_.derivations;
    // Consistency guard: no statement next to its own negation.
    for (const auto& p : pool_)
      for (const auto& q : pool_)
        if (q->kind == Expr::Kind::OpApply && q->op == Op::Not && equal(q->args[0], p))
          st_.failures.push_back("both " + render(p) + " and its negation accepted");
    return pool_;
  }

 private:
  bool in_pool(const ExprPtr& e) const {
    for (const auto& p : pool_)
      if (equal(p, e)) return true;
    return false;
  }
  bool derived(const ExprPtr& e) const {
    for (const auto& p : derived_)
      if (equal(p, e)) return true;
    return false;
  }

  void accept(const ExprPtr& e, bool rule) {
    if (!meaning(e, I_).is_true())
      st_.failures.push_back("accepted statement evaluates false: " + render(e));
    if (!in_pool(e)) pool_.push_back(e);
    if (rule && !derived(e)) derived_.push_back(e);
  }

  ExprPtr sentence(int level) {
    int j = g_.uniform(0, level);
    switch (g_.uniform(0, 5)) {
      case 0: return mk_op(Op::Not, {g_.pick(vocab_[j])});
      case 1: return mk_op(Op::And, {g_.pick(vocab_[j]), g_.pick(vocab_[g_.uniform(0, level)])});
      case 2: return g_.sentence(prefix(full_, level), 2);
      default: return g_.pick(vocab_[j]);
    }
  }

  ExprPtr element(int level) {
    if (level > 0 && g_.chance(0.6))
      return mk_var(full_[static_cast<std::size_t>(g_.uniform(0, level - 1))].var);
    return g_.element(prefix(full_, level), 1);
  }

  static bool is_op(const ExprPtr& e, Op op) {
    return e->kind == Expr::Kind::OpApply && e->op == op;
  }
  // (forall)({}(v:D, body)) with a single binder.
  static bool is_all1(const ExprPtr& e) {
    return is_op(e, Op::Forall) && e->args[0]->kind == Expr::Kind::SetBuilder &&
           e->args[0]->binders.size() == 1;
  }

  // Use an earlier conclusion as the first premise of a new instance.
  bool chain() {
    ExprPtr stmt = g_.pick(derived_);
    Context k;
    ExprPtr body = stmt;
    int peel = g_.uniform(0, 3);
    while (peel-- > 0 && is_all1(body)) {
      k.push_back(body->args[0]->binders[0]);
      body = body->args[0]->body;
    }
    const int n = static_cast<int>(k.size());
    auto fresh = [&](const Context& c) { return g_.sentence(c, 2); };
    std::vector<Instantiation> options;
    auto add = [&](Schema s, Context b, std::map<std::string, MetaValue> m) {
      options.push_back(Instantiation{s, std::move(b), std::move(m)});
    };
    if (n >= 1) add(Schema::R5_5, k, {{"phi", body}, {"psi", fresh(k)}});
    if (is_op(body, Op::Implies)) {
      auto a = body->args[0], b = body->args[1];
      if (n >= 1) {
        add(Schema::R5_3, k, {{"phi", a}, {"psi", b}, {"chi", fresh(k)}});
        add(Schema::R3_7, k, {{"phi", a}, {"psi1", b}, {"psi2", fresh(k)}});
        add(Schema::R5_13, k, {{"phi", a}, {"psi", b}, {"chi", fresh(k)}});
        if (is_op(a, Op::And))
          add(Schema::R5_9, k, {{"phi", a->args[0]}, {"psi", a->args[1]}, {"chi", b}});
        if (is_op(b, Op::And) && is_op(b->args[1], Op::Not) && equal(b->args[0], b->args[1]->args[0]))
          add(Schema::R5_17, k, {{"phi", a}, {"psi", b->args[0]}});
      }
      if (n == 1) add(Schema::R5_20, k, {{"psi", a}, {"phi", b}});
      if (n >= 1 && is_all1(b)) {
        Context k2 = k;
        k2.push_back(b->args[0]->binders[0]);
        add(Schema::R5_14, k2, {{"chi", a}, {"phi", b->args[0]->body}, {"t", element_over(k)}});
      }
      if (n == 0 && is_op(b, Op::Implies))
        add(Schema::R5_21, {}, {{"phi", a}, {"psi", b->args[0]}, {"chi", b->args[1]}});
    }
    if (n >= 1 && is_op(body, Op::Iff))
      add(Schema::R5_1, k, {{"phi", body->args[0]}, {"psi", body->args[1]}});
    if (n >= 1 && is_op(body, Op::Not) && is_op(body->args[0], Op::And))
      add(Schema::R5_18, k, {{"phi", body->args[0]->args[0]}, {"psi", body->args[0]->args[1]}});
    if (n >= 1 && is_op(body, Op::Not) && is_all1(body->args[0])) {
      Context k2 = k;
      k2.push_back(body->args[0]->args[0]->binders[0]);
      add(Schema::R5_19, k2, {{"phi", body->args[0]->args[0]->body}});
    }
    if (n >= 1 && is_all1(body) && is_op(body->args[0]->body, Op::Implies)) {
      Context k2 = k;
      k2.push_back(body->args[0]->binders[0]);
      auto in = body->args[0]->body;
      add(Schema::R5_10, k2, {{"psi", in->args[0]}, {"phi", in->args[1]}});
      add(Schema::R5_12, k2, {{"psi", in->args[0]}, {"phi", in->args[1]}});
    }
    if (options.empty()) return false;
    return apply(g_.pick(options), 0);
  }

  ExprPtr element_over(const Context& k) {
    if (!k.empty() && g_.chance(0.6)) return mk_var(g_.pick(k).var);
    return g_.element(k, 1);
  }

  bool attempt() {
    static const std::vector<Schema> schemas = [] {
      std::vector<Schema> v;
      for (Schema s : all_schemas())
        if (s != Schema::Semantic) v.push_back(s);
      return v;
    }();
    Schema s = g_.pick(schemas);
    int n = 0;
    switch (s) {
      case Schema::R5_4: case Schema::R5_7: case Schema::R5_10: case Schema::R5_11:
      case Schema::R5_12: case Schema::R5_14: case Schema::R5_15: case Schema::R5_19:
        n = g_.uniform(2, 3);
        break;
      case Schema::R5_20: n = 1; break;
      case Schema::R5_21: n = 0; break;
      default: n = g_.uniform(1, 3);
    }
    const int K = n, H = n > 0 ? n - 1 : 0;
    Instantiation inst;
    inst.schema = s;
    inst.binders = prefix(full_, static_cast<std::size_t>(n));
    auto& m = inst.metavars;
    switch (s) {
      case Schema::A5_2: case Schema::R3_7: case Schema::R5_1: case Schema::R5_3:
      case Schema::R5_5: case Schema::R5_8: case Schema::R5_9: case Schema::R5_13:
      case Schema::R5_17: case Schema::R5_18:
        for (const auto& name : required_metavars(s)) m[name] = sentence(K);
        break;
      case Schema::A5_16: m["i"] = static_cast<long>(g_.uniform(1, n)); break;
      case Schema::R5_4: {
        m["chi"] = sentence(H);
        ExprPtr t = element(H);
        m["t"] = t;
        m["tprime"] = g_.chance(0.6) ? t : element(H);
        m["phi"] = g_.chance(0.5) ? mk_op(Op::Eq, {mk_var(full_[H].var), element(K)}) : sentence(K);
        break;
      }
      case Schema::R5_6: {
        m["theta"] = sentence(K);
        ExprPtr a = element(K);
        m["phi"] = a;
        m["psi"] = g_.chance(0.5) ? a : element(K);
        m["chi"] = g_.chance(0.5) ? a : element(K);
        break;
      }
      case Schema::R5_7: case Schema::R5_14:
        m["chi"] = sentence(H);
        m["phi"] = sentence(K);
        m["t"] = element(H);
        break;
      case Schema::R5_10: m["psi"] = sentence(H); m["phi"] = sentence(K); break;
      case Schema::R5_11: m["chi"] = sentence(H); m["psi"] = sentence(K); m["phi"] = sentence(H); break;
      case Schema::R5_12: m["psi"] = sentence(K); m["phi"] = sentence(H); break;
      case Schema::R5_15:
        m["chi"] = sentence(H);
        m["phi"] = g_.set(prefix(full_, H), 1);
        m["t"] = element(H);
        break;
      case Schema::R5_19:
        m["phi"] = sentence(K);
        if (g_.chance(0.5)) m["chi"] = sentence(H);
        break;
      case Schema::R5_20: m["psi"] = sentence(1); m["phi"] = sentence(0); break;
      case Schema::R5_21: m["phi"] = sentence(0); m["psi"] = sentence(0); m["chi"] = sentence(0); break;
      case Schema::Semantic: return false;
    }
    return apply(inst, -1);
  }

  // Expands `inst`, supplies missing premises by semantic admission and
  // checks the step. `form` picks among several forms; -1 for random.
  bool apply(const Instantiation& inst, int form_index) {
    const Schema s = inst.schema;
    Expansion ex = expand_instance(inst, I_);
    if (!ex.verdict) return false;
    if (form_index < 0) form_index = g_.uniform(0, static_cast<int>(ex.forms.size()) - 1);
    const SchemaForm& form = ex.forms[static_cast<std::size_t>(form_index)];
    // Premises: earlier statements, or true sentences admitted as axioms.
    int chained = 0;
    for (const auto& p : form.premises) {
      if (in_pool(p)) {
        if (derived(p)) ++chained;
        continue;
      }
      if (!admit_semantic_axiom(p, I_)) {
        ++st_.rejected_false_premise;
        return false;
      }
    }
    for (const auto& p : form.premises)
      if (!in_pool(p)) {
        accept(p, false);
        ++st_.axiom_steps;
      }
    Verdict v = check_instance(inst, form.premises, form.conclusion, I_);
    if (!v) {
      st_.failures.push_back(std::string(schema_name(s)) + " rejected its own expansion: " + v.detail);
      return false;
    }
    accept(form.conclusion, !form.premises.empty());
    ++st_.accepted[s];
    st_.chained_premises += chained;
    if (form.premises.empty()) {
      ++st_.axiom_steps;
      return false;
    }
    ++st_.rule_steps;
    return true;
  }

  Generator& g_;
  SoundnessStats& st_;
  Interpretation I_;
  Context full_;
  std::vector<std::vector<ExprPtr>> vocab_;
  std::vector<ExprPtr> pool_, derived_;
};

}  // namespace fuzz
