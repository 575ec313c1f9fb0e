#include "avon/substitution.hpp"

namespace avon {

ExprPtr replace_var(const ExprPtr& phi, const std::string& var, const ExprPtr& t) {
  switch (phi->kind) {
    case Expr::Kind::Const:
      return phi;
    case Expr::Kind::Var:
      return phi->name == var ? t : phi;
    case Expr::Kind::Apply: {
      std::vector<ExprPtr> args;
      for (const auto& a : phi->args) args.push_back(replace_var(a, var, t));
      return mk_apply(replace_var(phi->head, var, t), std::move(args));
    }
    case Expr::Kind::OpApply: {
      std::vector<ExprPtr> args;
      for (const auto& a : phi->args) args.push_back(replace_var(a, var, t));
      return mk_op(phi->op, std::move(args));
    }
    case Expr::Kind::SetBuilder: {
      // A binder never equals var: var is in the context and binders are
      // fresh for it. Callers have checked that.
      std::vector<Binder> bs;
      for (const auto& b : phi->binders)
        bs.push_back({b.var, replace_var(b.dom, var, t)});
      return mk_set(std::move(bs), replace_var(phi->body, var, t));
    }
  }
  return phi;
}

namespace {

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += ',';
    out += v;
  }
  return out;
}

std::set<std::string> intersect(const std::set<std::string>& a,
                                const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const auto& v : a)
    if (b.count(v)) out.insert(v);
  return out;
}

}  // namespace

Check check_subst(const SubstRequest& req, const Interpretation& I) {
  const Context& k = req.k;
  const std::size_t p = k.size();
  if (req.i < 1 || req.i > p)
    return Check::fail("index " + std::to_string(req.i) + " outside 1.." +
                       std::to_string(p));
  if (!req.t) return Check::fail("no replacement expression");
  if (auto c = check_context(k, I); !c)
    return Check::fail("ill-formed context: " + c.reason, c.witness);

  const std::size_t i = req.i;
  Context before = prefix(k, i - 1);
  if (auto c = check_expr(before, *req.t, I); !c)
    return Check::fail("replacement is not an expression over the prefix "
                       "context: " + c.reason,
                       c.witness);

  Check member = Check::pass();
  for_each_state(before, I, [&](const State& rho) {
    Value tv = meaning(before, *req.t, rho, I);
    Value dom = meaning(before, *k[i - 1].dom, rho, I);
    if (!dom.contains(tv)) {
      member = Check::fail("meaning " + tv.str() + " of the replacement is not in " +
                               dom.str() + ", the domain of '" + k[i - 1].var + "'",
                           rho);
      return false;
    }
    return true;
  });
  if (!member) return member;

  auto vb_t = bound_vars(*req.t);
  for (std::size_t j = 1; j <= p; ++j)
    if (j != i && vb_t.count(k[j - 1].var))
      return Check::fail("context variable '" + k[j - 1].var +
                         "' is bound in the replacement");
  for (std::size_t j = i + 1; j <= p; ++j) {
    auto clash = intersect(vb_t, bound_vars(*k[j - 1].dom));
    if (!clash.empty())
      return Check::fail("replacement and the domain of '" + k[j - 1].var +
                         "' both bind " + join(clash));
  }
  if (req.phi) {
    auto clash = intersect(vb_t, bound_vars(*req.phi));
    if (!clash.empty())
      return Check::fail("replacement and target both bind " + join(clash));
  }
  return Check::pass();
}

namespace {

void require(const SubstRequest& req, const Interpretation& I) {
  if (auto c = check_subst(req, I); !c)
    throw SubstError("SideConditionViolated", c.reason, c.witness);
}

}  // namespace

Context subst_context(const SubstRequest& req, const Interpretation& I) {
  require(req, I);
  const Context& k = req.k;
  const std::string& xi = k[req.i - 1].var;
  Context out = prefix(k, req.i - 1);
  for (std::size_t j = req.i; j < k.size(); ++j)
    out.push_back({k[j].var, replace_var(k[j].dom, xi, req.t)});
  return out;
}

ExprPtr subst_expr(const SubstRequest& req, const Interpretation& I) {
  if (!req.phi) throw SubstError("NotAnExpression", "no target expression");
  require(req, I);
  if (auto c = check_expr(req.k, *req.phi, I); !c)
    throw SubstError("NotAnExpression",
                     "target is not an expression over the context: " + c.reason,
                     c.witness);
  return replace_var(req.phi, req.k[req.i - 1].var, req.t);
}

SubstReport certify_subst(const SubstRequest& req, const Interpretation& I) {
  SubstReport rep;
  Context k2;
  ExprPtr phi2;
  try {
    k2 = subst_context(req, I);
    if (req.phi) phi2 = subst_expr(req, I);
  } catch (const SubstError& e) {
    rep.counterexamples.push_back(std::string("precondition: ") + e.what());
    return rep;
  }
  const Context& k = req.k;
  const std::size_t i = req.i;
  if (auto c = check_context(k2, I); !c) {
    rep.counterexamples.push_back("k{x_i/t} is not a context: " + c.reason);
    return rep;
  }
  if (phi2) {
    if (auto c = check_expr(k2, *phi2, I); !c) {
      rep.counterexamples.push_back("result is not an expression over k{x_i/t}: " +
                                    c.reason);
      return rep;
    }
    auto allowed = bound_vars(*req.phi);
    auto vb_t = bound_vars(*req.t);
    allowed.insert(vb_t.begin(), vb_t.end());
    for (const auto& v : bound_vars(*phi2))
      if (!allowed.count(v))
        rep.counterexamples.push_back("result binds '" + v +
                                      "', which neither phi nor t binds");
  }
  Context before = prefix(k, i - 1);
  for_each_state(k2, I, [&](const State& rho) {
    ++rep.states_checked;
    State rho_before(rho.begin(), rho.begin() + (i - 1));
    Value ri = meaning(before, *req.t, rho_before, I);
    State sigma = rho_before;
    sigma.emplace_back(k[i - 1].var, ri);
    sigma.insert(sigma.end(), rho.begin() + (i - 1), rho.end());
    if (!in_states(k, sigma, I)) {
      rep.counterexamples.push_back("rebuilt state " + render_state(sigma) +
                                    " is not a state of k (from " +
                                    render_state(rho) + ")");
      return true;
    }
    if (phi2) {
      Value lhs = meaning(k, *req.phi, sigma, I);
      Value rhs = meaning(k2, *phi2, rho, I);
      if (lhs != rhs)
        rep.counterexamples.push_back("at " + render_state(rho) + ": " +
                                      lhs.str() + " before, " + rhs.str() +
                                      " after");
    }
    return true;
  });
  return rep;
}

}  // namespace avon
