#include "avon/semantics.hpp"

#include <algorithm>

namespace avon {

std::string render_context(const Context& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ',';
    s += k[i].var + ":" + render(k[i].dom);
  }
  return s;
}

std::string render_state(const State& st) {
  std::string s = "[";
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (i) s += ',';
    s += st[i].first + "=" + st[i].second.str();
  }
  return s + "]";
}

Context prefix(const Context& k, std::size_t n) {
  return Context(k.begin(), k.begin() + std::min(n, k.size()));
}

std::set<std::string> free_vars(const Expr& t) {
  std::set<std::string> out;
  auto merge = [&](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
  switch (t.kind) {
    case Expr::Kind::Const:
      break;
    case Expr::Kind::Var:
      out.insert(t.name);
      break;
    case Expr::Kind::Apply:
      merge(free_vars(*t.head));
      [[fallthrough]];
    case Expr::Kind::OpApply:
      for (const auto& a : t.args) merge(free_vars(*a));
      break;
    case Expr::Kind::SetBuilder: {
      std::set<std::string> bound;
      for (const auto& b : t.binders) {
        for (const auto& v : free_vars(*b.dom))
          if (!bound.count(v)) out.insert(v);
        bound.insert(b.var);
      }
      for (const auto& v : free_vars(*t.body))
        if (!bound.count(v)) out.insert(v);
      break;
    }
  }
  return out;
}

std::set<std::string> bound_vars(const Expr& t) {
  std::set<std::string> out;
  auto merge = [&](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
  switch (t.kind) {
    case Expr::Kind::Const:
    case Expr::Kind::Var:
      break;
    case Expr::Kind::Apply:
      merge(bound_vars(*t.head));
      [[fallthrough]];
    case Expr::Kind::OpApply:
      for (const auto& a : t.args) merge(bound_vars(*a));
      break;
    case Expr::Kind::SetBuilder:
      for (const auto& b : t.binders) {
        out.insert(b.var);
        merge(bound_vars(*b.dom));
      }
      merge(bound_vars(*t.body));
      break;
  }
  return out;
}

namespace {

// Syntactic half of E(k): every variable occurrence is in scope, every
// binder is fresh for its scope, every constant is interpreted.
Check scope_check(std::vector<std::string_view>& scope, const Expr& t,
                  const Interpretation& I) {
  auto in_scope = [&](std::string_view v) {
    return std::find(scope.begin(), scope.end(), v) != scope.end();
  };
  switch (t.kind) {
    case Expr::Kind::Const:
      if (!I.lookup(t.name))
        return Check::fail("constant '" + t.name + "' has no meaning in the model");
      return Check::pass();
    case Expr::Kind::Var:
      if (!in_scope(t.name))
        return Check::fail("variable '" + t.name +
                           "' is not in the domain of the context");
      return Check::pass();
    case Expr::Kind::Apply:
      if (auto c = scope_check(scope, *t.head, I); !c) return c;
      [[fallthrough]];
    case Expr::Kind::OpApply:
      if (t.args.empty()) return Check::fail("empty argument list");
      for (const auto& a : t.args)
        if (auto c = scope_check(scope, *a, I); !c) return c;
      return Check::pass();
    case Expr::Kind::SetBuilder: {
      if (t.binders.empty()) return Check::fail("set-builder without binders");
      std::size_t mark = scope.size();
      Check result = Check::pass();
      for (const auto& b : t.binders) {
        if (auto c = scope_check(scope, *b.dom, I); !c) {
          result = c;
          break;
        }
        if (in_scope(b.var)) {
          result = Check::fail("bound variable '" + b.var +
                               "' is already in the context");
          break;
        }
        scope.push_back(b.var);
      }
      if (result.ok) result = scope_check(scope, *t.body, I);
      scope.resize(mark);
      return result;
    }
  }
  return Check::pass();
}

Check scope_check(const Context& k, std::size_t upto, const Expr& t,
                  const Interpretation& I) {
  std::vector<std::string_view> scope;
  for (std::size_t i = 0; i < upto; ++i) scope.push_back(k[i].var);
  return scope_check(scope, t, I);
}

const char* arg_ordinal(std::size_t i) {
  static const char* names[] = {"first", "second", "third", "fourth"};
  return i < 4 ? names[i] : "an";
}

// Checked evaluation. Variables resolve against binder extensions first,
// then against the base state.
class Evaluator {
 public:
  Evaluator(const Interpretation& I, const State& base) : I_(I), base_(base) {}

  std::string error;

  bool eval(const Expr& t, Value& out) {
    switch (t.kind) {
      case Expr::Kind::Const: {
        const Value* v = I_.lookup(t.name);
        if (!v) return fail(t, "constant has no meaning");
        out = *v;
        return true;
      }
      case Expr::Kind::Var: {
        for (auto it = local_.rbegin(); it != local_.rend(); ++it)
          if (it->first == t.name) {
            out = it->second;
            return true;
          }
        for (auto it = base_.rbegin(); it != base_.rend(); ++it)
          if (it->first == t.name) {
            out = it->second;
            return true;
          }
        return fail(t, "unbound variable");
      }
      case Expr::Kind::Apply: {
        Value head;
        if (!eval(*t.head, head)) return false;
        Value::Tuple args(t.args.size());
        for (std::size_t i = 0; i < t.args.size(); ++i)
          if (!eval(*t.args[i], args[i])) return false;
        if (!head.is_func())
          return fail(t, "head denotes " + head.str() + ", not a function");
        if (head.arity() != static_cast<int>(args.size()))
          return fail(t, "function of arity " + std::to_string(head.arity()) +
                             " applied to " + std::to_string(args.size()) +
                             " arguments");
        const Value* r = head.apply(args);
        if (!r) return fail(t, "argument tuple outside the function's domain");
        out = *r;
        return true;
      }
      case Expr::Kind::OpApply: {
        std::vector<Value> args(t.args.size());
        for (std::size_t i = 0; i < t.args.size(); ++i)
          if (!eval(*t.args[i], args[i])) return false;
        return apply_op(t, args, out);
      }
      case Expr::Kind::SetBuilder: {
        std::vector<Value> elems;
        if (!extend(t, 0, elems)) return false;
        out = Value::set(std::move(elems));
        return true;
      }
    }
    return false;
  }

 private:
  const Interpretation& I_;
  const State& base_;
  std::vector<std::pair<std::string_view, Value>> local_;

  bool fail(const Expr& t, const std::string& why) {
    std::string where;
    if (!local_.empty()) {
      where = " with bound ";
      for (std::size_t i = 0; i < local_.size(); ++i) {
        if (i) where += ',';
        where += std::string(local_[i].first) + "=" + local_[i].second.str();
      }
    }
    error = render(t) + ": " + why + where;
    return false;
  }

  bool extend(const Expr& t, std::size_t i, std::vector<Value>& elems) {
    if (i == t.binders.size()) {
      Value v;
      if (!eval(*t.body, v)) return false;
      elems.push_back(std::move(v));
      return true;
    }
    const Binder& b = t.binders[i];
    Value dom;
    if (!eval(*b.dom, dom)) return false;
    if (!dom.is_set())
      return fail(*b.dom, "domain of '" + b.var + "' denotes " + dom.str() +
                              ", not a set");
    for (const Value& s : dom.elems()) {
      local_.emplace_back(b.var, s);
      bool ok = extend(t, i + 1, elems);
      local_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool apply_op(const Expr& t, const std::vector<Value>& a, Value& out) {
    const std::size_t n = a.size();
    auto need_arity = [&](std::size_t want) {
      if (n == want) return true;
      return fail(t, std::string(op_symbol(t.op)) + " takes " +
                         std::to_string(want) + " argument(s), given " +
                         std::to_string(n));
    };
    auto need_truth = [&](std::size_t i) {
      if (a[i].is_truth()) return true;
      return fail(t, std::string("the ") + arg_ordinal(i) + " argument is " +
                         a[i].str() + ", not true or false");
    };
    auto need_truth_set = [&](std::size_t i) {
      if (!a[i].is_set())
        return fail(t, std::string("the argument is ") + a[i].str() +
                           ", not a set");
      for (const Value& e : a[i].elems())
        if (!e.is_truth())
          return fail(t, "the set contains " + e.str() +
                             ", which is not true or false");
      return true;
    };
    switch (t.op) {
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff: {
        if (!need_arity(2) || !need_truth(0) || !need_truth(1)) return false;
        bool x = a[0].as_bool(), y = a[1].as_bool();
        bool r = t.op == Op::And       ? (x && y)
                 : t.op == Op::Or      ? (x || y)
                 : t.op == Op::Implies ? (!x || y)
                                       : ((!x || y) && (!y || x));
        out = Value::truth(r);
        return true;
      }
      case Op::Not:
        if (!need_arity(1)) return false;
        out = Value::truth(a[0] == Value::truth(false));
        return true;
      case Op::Forall:
      case Op::Exists: {
        if (!need_arity(1) || !need_truth_set(0)) return false;
        const auto& e = a[0].elems();
        bool r = t.op == Op::Forall
                     ? std::all_of(e.begin(), e.end(), [](const Value& v) { return v.is_true(); })
                     : std::any_of(e.begin(), e.end(), [](const Value& v) { return v.is_true(); });
        out = Value::truth(r);
        return true;
      }
      case Op::In:
        if (!need_arity(2)) return false;
        if (!a[1].is_set())
          return fail(t, "the second argument is " + a[1].str() + ", not a set");
        out = Value::truth(a[1].contains(a[0]));
        return true;
      case Op::Eq:
        if (!need_arity(2)) return false;
        out = Value::truth(a[0] == a[1]);
        return true;
    }
    return false;
  }
};

Check context_syntax(const Context& k, const Interpretation& I) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (k[j].var == k[i].var)
        return Check::fail("variable '" + k[i].var + "' occurs twice in the context");
    if (!k[i].dom)
      return Check::fail("variable '" + k[i].var + "' has no domain");
    if (auto c = scope_check(k, i, *k[i].dom, I); !c)
      return Check::fail("domain of '" + k[i].var + "': " + c.reason);
  }
  return Check::pass();
}

// Depth-first walk over Xi(k). Returns a failed Check for an ill-formed
// context; `stopped` is set when the visitor asked to stop.
Check walk_states(const Context& k, const Interpretation& I,
                  const std::function<bool(const State&)>& visit) {
  if (auto c = context_syntax(k, I); !c) return c;
  State s;
  bool stopped = false;
  Check bad = Check::pass();
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (stopped || !bad.ok) return;
    if (i == k.size()) {
      if (!visit(s)) stopped = true;
      return;
    }
    Evaluator ev(I, s);
    Value dom;
    if (!ev.eval(*k[i].dom, dom)) {
      bad = Check::fail("domain of '" + k[i].var + "' is not an expression: " +
                            ev.error,
                        s);
      return;
    }
    if (!dom.is_set()) {
      bad = Check::fail("domain of '" + k[i].var + "' denotes " + dom.str() +
                            ", not a set",
                        s);
      return;
    }
    for (const Value& v : dom.elems()) {
      s.emplace_back(k[i].var, v);
      dfs(i + 1);
      s.pop_back();
      if (stopped || !bad.ok) return;
    }
  };
  dfs(0);
  return bad;
}

}  // namespace

Check check_context(const Context& k, const Interpretation& I) {
  return walk_states(k, I, [](const State&) { return true; });
}

void for_each_state(const Context& k, const Interpretation& I,
                    const std::function<bool(const State&)>& visit) {
  if (auto c = walk_states(k, I, visit); !c)
    throw SemanticError(SemanticError::Code::IllFormedContext,
                        "ill-formed context: " + c.reason, c.witness);
}

std::vector<State> states(const Context& k, const Interpretation& I) {
  std::vector<State> out;
  for_each_state(k, I, [&](const State& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

bool in_states(const Context& k, const State& s, const Interpretation& I) {
  if (s.size() != k.size()) return false;
  if (!context_syntax(k, I)) return false;
  State prefix_state;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (s[i].first != k[i].var) return false;
    Evaluator ev(I, prefix_state);
    Value dom;
    if (!ev.eval(*k[i].dom, dom) || !dom.is_set() || !dom.contains(s[i].second))
      return false;
    prefix_state.push_back(s[i]);
  }
  return true;
}

namespace {

Check check_over_states(const Context& k, const Expr& t, const Interpretation& I,
                        bool want_truth) {
  if (auto c = scope_check(k, k.size(), t, I); !c) return c;
  Check result = Check::pass();
  Check ctx = walk_states(k, I, [&](const State& s) {
    Evaluator ev(I, s);
    Value v;
    if (!ev.eval(t, v)) {
      result = Check::fail(ev.error, s);
      return false;
    }
    if (want_truth && !v.is_truth()) {
      result = Check::fail(render(t) + " denotes " + v.str() +
                               ", not true or false",
                           s);
      return false;
    }
    return true;
  });
  if (!ctx) return Check::fail("ill-formed context: " + ctx.reason, ctx.witness);
  return result;
}

}  // namespace

Check check_expr(const Context& k, const Expr& t, const Interpretation& I) {
  return check_over_states(k, t, I, false);
}

Check check_sentence(const Context& k, const Expr& t, const Interpretation& I) {
  return check_over_states(k, t, I, true);
}

Value meaning(const Context& k, const Expr& t, const State& sigma,
              const Interpretation& I) {
  if (sigma.size() != k.size())
    throw SemanticError(SemanticError::Code::PreconditionViolated,
                        "state does not match the context", sigma);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (sigma[i].first != k[i].var)
      throw SemanticError(SemanticError::Code::PreconditionViolated,
                          "state does not match the context", sigma);
  if (auto c = scope_check(k, k.size(), t, I); !c)
    throw SemanticError(SemanticError::Code::PreconditionViolated, c.reason,
                        sigma);
  Evaluator ev(I, sigma);
  Value v;
  if (!ev.eval(t, v))
    throw SemanticError(SemanticError::Code::PreconditionViolated, ev.error,
                        sigma);
  return v;
}

Value meaning(const ExprPtr& t, const Interpretation& I) {
  return meaning(Context{}, *t, State{}, I);
}

std::string_view case_name(Case c) {
  switch (c) {
    case Case::Constant: return "constant";
    case Case::ContextVariable: return "context-variable";
    case Case::Application: return "application";
    case Case::OperatorApplication: return "operator-application";
    case Case::SetBuilder: return "set-builder";
  }
  return "?";
}

Classification classify(const Context& k, const ExprPtr& t,
                        const Interpretation& I) {
  if (auto c = check_expr(k, *t, I); !c)
    throw SemanticError(SemanticError::Code::NotAnExpression,
                        "not an expression: " + c.reason, c.witness);
  Classification out;
  switch (t->kind) {
    case Expr::Kind::Const:
      out.which = Case::Constant;
      break;
    case Expr::Kind::Var:
      out.which = Case::ContextVariable;
      break;
    case Expr::Kind::Apply:
      out.which = Case::Application;
      out.parts.push_back(t->head);
      out.parts.insert(out.parts.end(), t->args.begin(), t->args.end());
      break;
    case Expr::Kind::OpApply:
      out.which = Case::OperatorApplication;
      out.parts = t->args;
      break;
    case Expr::Kind::SetBuilder: {
      out.which = Case::SetBuilder;
      Context ext = k;
      for (const auto& b : t->binders) {
        out.parts.push_back(b.dom);
        ext.push_back(b);
        out.extended.push_back(ext);
      }
      out.parts.push_back(t->body);
      break;
    }
  }
  return out;
}

}  // namespace avon
