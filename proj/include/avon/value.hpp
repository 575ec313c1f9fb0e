#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace avon {

// Hereditarily finite value. Sets keep their elements sorted and
// deduplicated, so structural comparison is extensional equality.
class Value {
 public:
  enum class Kind : std::uint8_t { Truth, Atom, Set, Func };
  using Tuple = std::vector<Value>;
  using Graph = std::vector<std::pair<Tuple, Value>>;

  Value() = default;
  static Value truth(bool b);
  static Value atom(std::int64_t id);
  static Value set(std::vector<Value> elems);
  // Throws std::invalid_argument on arity mismatch or a repeated tuple.
  static Value func(int arity, Graph graph);

  Kind kind() const { return kind_; }
  bool is_truth() const { return kind_ == Kind::Truth; }
  bool is_set() const { return kind_ == Kind::Set; }
  bool is_func() const { return kind_ == Kind::Func; }
  bool is_true() const { return kind_ == Kind::Truth && b_; }
  bool is_false() const { return kind_ == Kind::Truth && !b_; }
  bool as_bool() const { return b_; }
  std::int64_t atom_id() const { return atom_; }

  const std::vector<Value>& elems() const;
  bool contains(const Value& v) const;
  int arity() const;
  const Graph& graph() const;
  // nullptr when the tuple is outside the domain.
  const Value* apply(const Tuple& args) const;

  // Model-file literal syntax.
  std::string str() const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) {
    return (a <=> b) == 0;
  }

 private:
  struct FuncRep {
    int arity;
    Graph graph;
  };
  Kind kind_ = Kind::Truth;
  bool b_ = false;
  std::int64_t atom_ = 0;
  std::shared_ptr<const std::vector<Value>> set_;
  std::shared_ptr<const FuncRep> fn_;
};

}  // namespace avon
