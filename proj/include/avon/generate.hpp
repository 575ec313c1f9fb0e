#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "avon/semantics.hpp"

namespace avon {

// Random syntax, models and well-formed expressions for property tests and
// the `roundtrip` command. Deterministic for a given seed.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  int uniform(int lo, int hi);  // inclusive
  bool chance(double p);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  // Any tree the grammar allows, over the table's names. Set-builder binders
  // come from table.variables and are distinct within one builder.
  ExprPtr syntax(const SymbolTable& table, int depth);

  // Atoms #0..#(n-1); constants a, b (atoms), A, B, C (random subsets),
  // U (everything), f (unary, atom to atom), p (unary predicate),
  // T and F (truth values).
  Interpretation model(int universe);

  // Binders named from `names`, each domain a set term over the earlier ones.
  Context context(const std::vector<std::string>& names, int n);

  // Typed generation over the model() signature. Bound variables are drawn
  // from `pool` and are always fresh for the enclosing scope.
  ExprPtr sentence(const Context& k, int depth);
  ExprPtr element(const Context& k, int depth);
  ExprPtr set(const Context& k, int depth);

  std::vector<std::string> pool = {"u", "v", "w", "s"};

 private:
  ExprPtr sentence_in(std::vector<std::string>& scope, int depth);
  ExprPtr element_in(std::vector<std::string>& scope, int depth);
  ExprPtr set_in(std::vector<std::string>& scope, int depth);
  // Builds {}(v1:S1,...,body) with fresh binders; `body` is called with the
  // binders in scope.
  template <class Body>
  ExprPtr builder(std::vector<std::string>& scope, int depth, Body body);
  std::vector<std::string> scope_of(const Context& k) const;

  std::mt19937_64 rng_;
};

}  // namespace avon
