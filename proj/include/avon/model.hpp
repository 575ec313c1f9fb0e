#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "avon/syntax.hpp"
#include "avon/value.hpp"

namespace avon {

// Meanings of the constants. The operator table is fixed and lives in the
// evaluator.
struct Interpretation {
  std::map<std::string, Value> consts;

  const Value* lookup(const std::string& name) const {
    auto it = consts.find(name);
    return it == consts.end() ? nullptr : &it->second;
  }
  SymbolTable symbols() const;
};

class ModelError : public std::runtime_error {
 public:
  ModelError(std::size_t line, const std::string& msg)
      : std::runtime_error(msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// value ::= true | false | #n | {v,...} | fun(n){ (v,...)->v ; ... }
Value parse_value(std::string_view text);
Interpretation parse_model(std::string_view text);
Interpretation load_model(const std::string& path);

}  // namespace avon
