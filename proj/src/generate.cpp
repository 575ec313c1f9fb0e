#include "avon/generate.hpp"

#include <algorithm>

namespace avon {

int Generator::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

ExprPtr Generator::syntax(const SymbolTable& table, int depth) {
  std::vector<std::string> vars(table.variables.begin(), table.variables.end());
  std::vector<std::string> consts(table.constants.begin(), table.constants.end());
  auto leaf = [&]() -> ExprPtr {
    if (!vars.empty() && (consts.empty() || chance(0.5))) return mk_var(pick(vars));
    return mk_const(pick(consts));
  };
  if (depth <= 0 || chance(0.2)) return leaf();
  auto args = [&]() {
    std::vector<ExprPtr> out;
    int n = uniform(1, 3);
    for (int j = 0; j < n; ++j) out.push_back(syntax(table, depth - 1));
    return out;
  };
  switch (uniform(0, 2)) {
    case 0: {
      ExprPtr head = chance(0.7) ? leaf() : syntax(table, depth - 1);
      return mk_apply(head, args());
    }
    case 1:
      return mk_op(pick(all_ops()), args());
    default: {
      if (vars.empty()) return mk_op(pick(all_ops()), args());
      std::vector<std::string> names = vars;
      std::shuffle(names.begin(), names.end(), rng_);
      int n = uniform(1, std::min<int>(2, static_cast<int>(names.size())));
      std::vector<Binder> bs;
      for (int j = 0; j < n; ++j) bs.push_back({names[j], syntax(table, depth - 1)});
      return mk_set(std::move(bs), syntax(table, depth - 1));
    }
  }
}

Interpretation Generator::model(int universe) {
  Interpretation I;
  std::vector<Value> atoms;
  for (int j = 0; j < universe; ++j) atoms.push_back(Value::atom(j));
  auto subset = [&]() {
    std::vector<Value> s;
    for (const auto& a : atoms)
      if (chance(0.5)) s.push_back(a);
    return Value::set(s);
  };
  I.consts.emplace("a", pick(atoms));
  I.consts.emplace("b", pick(atoms));
  I.consts.emplace("A", subset());
  I.consts.emplace("B", subset());
  I.consts.emplace("C", subset());
  I.consts.emplace("U", Value::set(atoms));
  Value::Graph f, p;
  for (const auto& x : atoms) {
    f.emplace_back(Value::Tuple{x}, pick(atoms));
    p.emplace_back(Value::Tuple{x}, Value::truth(chance(0.5)));
  }
  I.consts.emplace("f", Value::func(1, f));
  I.consts.emplace("p", Value::func(1, p));
  I.consts.emplace("T", Value::truth(true));
  I.consts.emplace("F", Value::truth(false));
  return I;
}

std::vector<std::string> Generator::scope_of(const Context& k) const {
  std::vector<std::string> out;
  for (const auto& b : k) out.push_back(b.var);
  return out;
}

Context Generator::context(const std::vector<std::string>& names, int n) {
  Context k;
  for (int j = 0; j < n && j < static_cast<int>(names.size()); ++j) {
    auto scope = scope_of(k);
    k.push_back({names[j], set_in(scope, 1)});
  }
  return k;
}

ExprPtr Generator::sentence(const Context& k, int depth) {
  auto scope = scope_of(k);
  return sentence_in(scope, depth);
}

ExprPtr Generator::element(const Context& k, int depth) {
  auto scope = scope_of(k);
  return element_in(scope, depth);
}

ExprPtr Generator::set(const Context& k, int depth) {
  auto scope = scope_of(k);
  return set_in(scope, depth);
}

template <class Body>
ExprPtr Generator::builder(std::vector<std::string>& scope, int depth, Body body) {
  std::vector<std::string> fresh;
  for (const auto& v : pool)
    if (std::find(scope.begin(), scope.end(), v) == scope.end()) fresh.push_back(v);
  if (fresh.empty()) return nullptr;
  std::shuffle(fresh.begin(), fresh.end(), rng_);
  int n = fresh.size() > 1 && chance(0.25) ? 2 : 1;
  std::vector<Binder> bs;
  const std::size_t mark = scope.size();
  for (int j = 0; j < n; ++j) {
    bs.push_back({fresh[j], set_in(scope, depth - 1)});
    scope.push_back(fresh[j]);
  }
  ExprPtr b = body(scope, depth - 1);
  scope.resize(mark);
  return mk_set(std::move(bs), b);
}

ExprPtr Generator::element_in(std::vector<std::string>& scope, int depth) {
  int roll = uniform(0, 9);
  if (depth > 0 && roll < 2) return mk_apply(mk_const("f"), {element_in(scope, depth - 1)});
  if (!scope.empty() && roll < 7) return mk_var(pick(scope));
  return mk_const(chance(0.5) ? "a" : "b");
}

ExprPtr Generator::set_in(std::vector<std::string>& scope, int depth) {
  if (depth > 0 && chance(0.3)) {
    auto e = builder(scope, depth, [&](std::vector<std::string>& s, int d) {
      return element_in(s, d);
    });
    if (e) return e;
  }
  static const std::vector<std::string> sets = {"A", "B", "C", "U"};
  return mk_const(pick(sets));
}

ExprPtr Generator::sentence_in(std::vector<std::string>& scope, int depth) {
  if (depth <= 0) {
    switch (uniform(0, 3)) {
      case 0: return mk_op(Op::In, {element_in(scope, 0), set_in(scope, 0)});
      case 1: return mk_op(Op::Eq, {element_in(scope, 0), element_in(scope, 0)});
      case 2: return mk_apply(mk_const("p"), {element_in(scope, 0)});
      default: return mk_const(chance(0.5) ? "T" : "F");
    }
  }
  switch (uniform(0, 7)) {
    case 0:
      return mk_op(Op::Not, {sentence_in(scope, depth - 1)});
    case 1:
    case 2: {
      static const std::vector<Op> bin = {Op::And, Op::Or, Op::Implies, Op::Iff};
      Op o = pick(bin);
      auto l = sentence_in(scope, depth - 1);
      return mk_op(o, {l, sentence_in(scope, depth - 1)});
    }
    case 3:
    case 4: {
      auto e = builder(scope, depth, [&](std::vector<std::string>& s, int d) {
        return sentence_in(s, d);
      });
      if (e) return mk_op(chance(0.5) ? Op::Forall : Op::Exists, {e});
      return sentence_in(scope, 0);
    }
    case 5:
      return mk_op(Op::In, {element_in(scope, depth - 1), set_in(scope, depth - 1)});
    case 6:
      return mk_op(Op::Eq, {chance(0.5) ? element_in(scope, depth - 1) : set_in(scope, depth - 1),
                            chance(0.5) ? element_in(scope, depth - 1) : set_in(scope, depth - 1)});
    default:
      return sentence_in(scope, 0);
  }
}

}  // namespace avon
