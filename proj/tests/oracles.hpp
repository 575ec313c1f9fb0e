#pragma once

// Brute-force reference implementations used as test oracles. They share
// only the data types with the library: evaluation and state enumeration are
// written out again here, directly from the definitions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avon/semantics.hpp"

namespace oracle {

using avon::Expr;
using avon::Interpretation;
using avon::Op;
using avon::Value;
using Env = std::map<std::string, Value>;

inline std::optional<Value> eval(const Expr& e, const Interpretation& I, const Env& env);

inline void builder_rec(const Expr& e, const Interpretation& I, Env env, std::size_t j,
                        std::vector<Value>& out, bool& ok) {
  if (!ok) return;
  if (j == e.binders.size()) {
    auto v = eval(*e.body, I, env);
    if (!v) ok = false;
    else out.push_back(*v);
    return;
  }
  auto dom = eval(*e.binders[j].dom, I, env);
  if (!dom || !dom->is_set()) {
    ok = false;
    return;
  }
  for (const auto& x : dom->elems()) {
    env[e.binders[j].var] = x;
    builder_rec(e, I, env, j + 1, out, ok);
  }
}

inline std::optional<Value> eval(const Expr& e, const Interpretation& I, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::Const: {
      const Value* v = I.lookup(e.name);
      if (!v) return std::nullopt;
      return *v;
    }
    case Expr::Kind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case Expr::Kind::Apply: {
      auto h = eval(*e.head, I, env);
      if (!h || !h->is_func() || h->arity() != static_cast<int>(e.args.size())) return std::nullopt;
      std::vector<Value> args;
      for (const auto& a : e.args) {
        auto v = eval(*a, I, env);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      const Value* r = h->apply(args);
      if (!r) return std::nullopt;
      return *r;
    }
    case Expr::Kind::OpApply: {
      std::vector<Value> a;
      for (const auto& x : e.args) {
        auto v = eval(*x, I, env);
        if (!v) return std::nullopt;
        a.push_back(*v);
      }
      auto truth = [](const Value& v) { return v.is_truth(); };
      switch (e.op) {
        case Op::And:
        case Op::Or:
        case Op::Implies:
        case Op::Iff: {
          if (a.size() != 2 || !truth(a[0]) || !truth(a[1])) return std::nullopt;
          bool p = a[0].is_true(), q = a[1].is_true();
          bool r = e.op == Op::And ? (p && q) : e.op == Op::Or ? (p || q)
                 : e.op == Op::Implies ? (!p || q) : (p == q);
          return Value::truth(r);
        }
        case Op::Not:
          if (a.size() != 1) return std::nullopt;
          return Value::truth(a[0] == Value::truth(false));
        case Op::Forall:
        case Op::Exists: {
          if (a.size() != 1 || !a[0].is_set()) return std::nullopt;
          bool all = true, any = false;
          for (const auto& x : a[0].elems()) {
            if (!truth(x)) return std::nullopt;
            all = all && x.is_true();
            any = any || x.is_true();
          }
          return Value::truth(e.op == Op::Forall ? all : any);
        }
        case Op::In:
          if (a.size() != 2 || !a[1].is_set()) return std::nullopt;
          return Value::truth(a[1].contains(a[0]));
        case Op::Eq:
          if (a.size() != 2) return std::nullopt;
          return Value::truth(a[0] == a[1]);
      }
      return std::nullopt;
    }
    case Expr::Kind::SetBuilder: {
      std::vector<Value> out;
      bool ok = true;
      builder_rec(e, I, env, 0, out, ok);
      if (!ok) return std::nullopt;
      return Value::set(out);
    }
  }
  return std::nullopt;
}

// Every state of k, in no particular order. nullopt when some domain fails
// to evaluate to a set.
inline std::optional<std::vector<Env>> states(const avon::Context& k, const Interpretation& I) {
  std::vector<Env> cur = {Env{}};
  for (const auto& b : k) {
    std::vector<Env> next;
    for (const auto& env : cur) {
      auto dom = eval(*b.dom, I, env);
      if (!dom || !dom->is_set()) return std::nullopt;
      for (const auto& x : dom->elems()) {
        Env e = env;
        e[b.var] = x;
        next.push_back(std::move(e));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline Env to_env(const avon::State& s) { return Env(s.begin(), s.end()); }

// The depth conditions on a rendered string: the last character is not '(',
// depth at the end is 1 after ')' and 0 otherwise, and every ':' ',' ')'
// sits at depth >= 1.
inline bool depth_conditions(const std::string& s) {
  std::u32string u = avon::decode_utf8(s);
  const std::size_t n = u.size();
  if (n == 0 || u[n - 1] == U'(') return false;
  long last = avon::depth(s, n);
  if (u[n - 1] == U')' ? last != 1 : last != 0) return false;
  for (std::size_t a = 1; a <= n; ++a)
    if ((u[a - 1] == U':' || u[a - 1] == U',' || u[a - 1] == U')') && avon::depth(s, a) < 1)
      return false;
  return true;
}

// a | b in Z/n: b = a*e mod n for some e.
inline bool divides_mod(int a, int b, int n) {
  for (int e = 0; e < n; ++e)
    if ((a * e) % n == b) return true;
  return false;
}

}  // namespace oracle
