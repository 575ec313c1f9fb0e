#include "avon/value.hpp"

#include <algorithm>

namespace avon {

namespace {

std::string tuple_str(const Value::Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += t[i].str();
  }
  return s + ")";
}

}  // namespace

Value Value::truth(bool b) {
  Value v;
  v.kind_ = Kind::Truth;
  v.b_ = b;
  return v;
}

Value Value::atom(std::int64_t id) {
  Value v;
  v.kind_ = Kind::Atom;
  v.atom_ = id;
  return v;
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Value v;
  v.kind_ = Kind::Set;
  v.set_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return v;
}

Value Value::func(int arity, Graph graph) {
  if (arity < 1) throw std::invalid_argument("function arity must be >= 1");
  for (const auto& [args, _] : graph)
    if (static_cast<int>(args.size()) != arity)
      throw std::invalid_argument("tuple of length " +
                                  std::to_string(args.size()) +
                                  " in a function of arity " +
                                  std::to_string(arity));
  std::sort(graph.begin(), graph.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < graph.size(); ++i)
    if (graph[i - 1].first == graph[i].first)
      throw std::invalid_argument("duplicate domain tuple " +
                                  tuple_str(graph[i].first));
  Value v;
  v.kind_ = Kind::Func;
  v.fn_ = std::make_shared<const FuncRep>(FuncRep{arity, std::move(graph)});
  return v;
}

const std::vector<Value>& Value::elems() const {
  static const std::vector<Value> empty;
  return set_ ? *set_ : empty;
}

bool Value::contains(const Value& v) const {
  const auto& e = elems();
  return std::binary_search(e.begin(), e.end(), v);
}

int Value::arity() const { return fn_ ? fn_->arity : 0; }

const Value::Graph& Value::graph() const {
  static const Graph empty;
  return fn_ ? fn_->graph : empty;
}

const Value* Value::apply(const Tuple& args) const {
  if (!fn_) return nullptr;
  const auto& g = fn_->graph;
  auto it = std::lower_bound(
      g.begin(), g.end(), args,
      [](const auto& entry, const Tuple& key) { return entry.first < key; });
  if (it == g.end() || it->first != args) return nullptr;
  return &it->second;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::Truth:
      return a.b_ <=> b.b_;
    case Value::Kind::Atom:
      return a.atom_ <=> b.atom_;
    case Value::Kind::Set: {
      if (a.set_ == b.set_) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(
          a.elems().begin(), a.elems().end(), b.elems().begin(),
          b.elems().end());
    }
    case Value::Kind::Func: {
      if (a.fn_ == b.fn_) return std::strong_ordering::equal;
      if (auto c = a.fn_->arity <=> b.fn_->arity; c != 0) return c;
      const auto& ga = a.fn_->graph;
      const auto& gb = b.fn_->graph;
      for (std::size_t i = 0; i < ga.size() && i < gb.size(); ++i) {
        auto c = std::lexicographical_compare_three_way(
            ga[i].first.begin(), ga[i].first.end(), gb[i].first.begin(),
            gb[i].first.end());
        if (c != 0) return c;
        if (auto d = ga[i].second <=> gb[i].second; d != 0) return d;
      }
      return ga.size() <=> gb.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Truth:
      return b_ ? "true" : "false";
    case Kind::Atom:
      return "#" + std::to_string(atom_);
    case Kind::Set: {
      std::string s = "{";
      for (std::size_t i = 0; i < elems().size(); ++i) {
        if (i) s += ',';
        s += elems()[i].str();
      }
      return s + "}";
    }
    case Kind::Func: {
      std::string s = "fun(" + std::to_string(fn_->arity) + "){";
      for (std::size_t i = 0; i < fn_->graph.size(); ++i) {
        if (i) s += ';';
        s += tuple_str(fn_->graph[i].first) + "->" +
             fn_->graph[i].second.str();
      }
      return s + "}";
    }
  }
  return "?";
}

}  // namespace avon
