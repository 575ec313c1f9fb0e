#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace avon {

enum class Op { And, Or, Implies, Not, Forall, Exists, In, Eq, Iff };

std::string_view op_symbol(Op op);
// Accepts the Unicode symbol or one of the ASCII aliases.
std::optional<Op> op_from_symbol(std::string_view s);
const std::vector<Op>& all_ops();
// Every spelling (Unicode and ASCII) that denotes an operator.
const std::vector<std::string>& op_spellings();

// Character offsets into the source, half-open.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binder {
  std::string var;
  ExprPtr dom;
};

struct Expr {
  enum class Kind { Const, Var, Apply, OpApply, SetBuilder };

  Kind kind = Kind::Const;
  std::string name;             // Const, Var
  Op op = Op::And;              // OpApply
  ExprPtr head;                 // Apply
  std::vector<ExprPtr> args;    // Apply, OpApply
  std::vector<Binder> binders;  // SetBuilder
  ExprPtr body;                 // SetBuilder
  SourceSpan span;              // not part of equality
};

ExprPtr mk_const(std::string name);
ExprPtr mk_var(std::string name);
ExprPtr mk_apply(ExprPtr head, std::vector<ExprPtr> args);
ExprPtr mk_op(Op op, std::vector<ExprPtr> args);
ExprPtr mk_set(std::vector<Binder> binders, ExprPtr body);

bool equal(const Expr& a, const Expr& b);
inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }
std::size_t expr_size(const Expr& e);

struct SymbolTable {
  std::set<std::string> variables;
  std::set<std::string> constants;

  // Throws SyntaxError(BadTable) when the name sets overlap each other,
  // an operator spelling, or contain punctuation/whitespace.
  void validate() const;
};

class SyntaxError : public std::runtime_error {
 public:
  enum class Code {
    UnknownSymbol,
    Unbalanced,
    UnexpectedToken,
    EmptyArgumentList,
    DuplicateBinder,
    OutOfRange,
    BadTable
  };
  SyntaxError(Code code, std::size_t offset, const std::string& msg);
  Code code() const { return code_; }
  std::size_t offset() const { return offset_; }

 private:
  Code code_;
  std::size_t offset_;
};

std::string_view code_name(SyntaxError::Code c);

struct Token {
  enum class Kind { LParen, RParen, Comma, Colon, SetBuilder, Var, Const, Op };
  Kind kind;
  std::string text;
  Op op = Op::And;
  SourceSpan span;
};

struct TokenizeOptions {
  // Chunks that match nothing in the table become variables instead of
  // raising UnknownSymbol. Used by the command line front end.
  bool unknown_as_var = false;
};

std::vector<Token> tokenize(std::string_view text, const SymbolTable& table,
                            TokenizeOptions opts = {});
ExprPtr parse(const std::vector<Token>& tokens);
ExprPtr parse(std::string_view text, const SymbolTable& table,
              TokenizeOptions opts = {});
std::string render(const Expr& e);
inline std::string render(const ExprPtr& e) { return render(*e); }

// d(t, alpha): '(' minus ')' strictly before the 1-based character position.
long depth(std::string_view text, std::size_t alpha);
std::size_t char_length(std::string_view text);
std::u32string decode_utf8(std::string_view text);

}  // namespace avon
