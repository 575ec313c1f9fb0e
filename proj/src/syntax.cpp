#include "avon/syntax.hpp"

#include <algorithm>
#include <unordered_set>

namespace avon {

namespace {

struct OpInfo {
  Op op;
  const char* symbol;
  const char* ascii;
};

const OpInfo kOps[] = {
    {Op::And, "∧", "/\\"},     {Op::Or, "∨", "\\/"},
    {Op::Implies, "→", "->"},  {Op::Not, "¬", "not"},
    {Op::Forall, "∀", "forall"}, {Op::Exists, "∃", "exists"},
    {Op::In, "∈", "in"},       {Op::Eq, "=", "="},
    {Op::Iff, "↔", "<->"},
};

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v';
}

bool is_punct(char32_t c) {
  return c == U'(' || c == U')' || c == U',' || c == U':' || c == U'{' ||
         c == U'}';
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

}  // namespace

std::string_view op_symbol(Op op) {
  for (const auto& o : kOps)
    if (o.op == op) return o.symbol;
  return "?";
}

std::optional<Op> op_from_symbol(std::string_view s) {
  for (const auto& o : kOps)
    if (s == o.symbol || s == o.ascii) return o.op;
  return std::nullopt;
}

const std::vector<Op>& all_ops() {
  static const std::vector<Op> ops = [] {
    std::vector<Op> v;
    for (const auto& o : kOps) v.push_back(o.op);
    return v;
  }();
  return ops;
}

const std::vector<std::string>& op_spellings() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& o : kOps) {
      v.emplace_back(o.symbol);
      if (std::string_view(o.ascii) != o.symbol) v.emplace_back(o.ascii);
    }
    return v;
  }();
  return names;
}

ExprPtr mk_const(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Const;
  e->name = std::move(name);
  return e;
}

ExprPtr mk_var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr mk_apply(ExprPtr head, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Apply;
  e->head = std::move(head);
  e->args = std::move(args);
  return e;
}

ExprPtr mk_op(Op op, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::OpApply;
  e->op = op;
  e->args = std::move(args);
  return e;
}

ExprPtr mk_set(std::vector<Binder> binders, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::SetBuilder;
  e->binders = std::move(binders);
  e->body = std::move(body);
  return e;
}

bool equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Const:
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Apply:
      if (!equal(*a.head, *b.head)) return false;
      [[fallthrough]];
    case Expr::Kind::OpApply:
      if (a.kind == Expr::Kind::OpApply && a.op != b.op) return false;
      if (a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(*a.args[i], *b.args[i])) return false;
      return true;
    case Expr::Kind::SetBuilder:
      if (a.binders.size() != b.binders.size()) return false;
      for (std::size_t i = 0; i < a.binders.size(); ++i)
        if (a.binders[i].var != b.binders[i].var ||
            !equal(*a.binders[i].dom, *b.binders[i].dom))
          return false;
      return equal(*a.body, *b.body);
  }
  return false;
}

std::size_t expr_size(const Expr& e) {
  std::size_t n = 1;
  if (e.head) n += expr_size(*e.head);
  for (const auto& a : e.args) n += expr_size(*a);
  for (const auto& b : e.binders) n += expr_size(*b.dom);
  if (e.body) n += expr_size(*e.body);
  return n;
}

SyntaxError::SyntaxError(Code code, std::size_t offset, const std::string& msg)
    : std::runtime_error(msg), code_(code), offset_(offset) {}

std::string_view code_name(SyntaxError::Code c) {
  switch (c) {
    case SyntaxError::Code::UnknownSymbol: return "UnknownSymbol";
    case SyntaxError::Code::Unbalanced: return "Unbalanced";
    case SyntaxError::Code::UnexpectedToken: return "UnexpectedToken";
    case SyntaxError::Code::EmptyArgumentList: return "EmptyArgumentList";
    case SyntaxError::Code::DuplicateBinder: return "DuplicateBinder";
    case SyntaxError::Code::OutOfRange: return "OutOfRange";
    case SyntaxError::Code::BadTable: return "BadTable";
  }
  return "?";
}

void SymbolTable::validate() const {
  auto check_name = [](const std::string& n) {
    if (n.empty())
      throw SyntaxError(SyntaxError::Code::BadTable, 0, "empty symbol name");
    for (char32_t c : decode_utf8(n))
      if (is_space(c) || is_punct(c))
        throw SyntaxError(SyntaxError::Code::BadTable, 0,
                          "symbol '" + n + "' contains a reserved character");
    if (op_from_symbol(n))
      throw SyntaxError(SyntaxError::Code::BadTable, 0,
                        "symbol '" + n + "' is an operator spelling");
  };
  for (const auto& v : variables) {
    check_name(v);
    if (constants.count(v))
      throw SyntaxError(SyntaxError::Code::BadTable, 0,
                        "'" + v + "' declared both as variable and constant");
  }
  for (const auto& c : constants) check_name(c);
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp;
    std::size_t len;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      len = 4;
    } else {
      // Stray continuation byte: keep it as a single character.
      out += static_cast<char32_t>(c);
      ++i;
      continue;
    }
    if (i + len > s.size()) len = s.size() - i;
    for (std::size_t k = 1; k < len; ++k)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out += cp;
    i += len;
  }
  return out;
}

std::size_t char_length(std::string_view text) {
  return decode_utf8(text).size();
}

long depth(std::string_view text, std::size_t alpha) {
  std::u32string t = decode_utf8(text);
  if (alpha < 1 || alpha > t.size())
    throw SyntaxError(SyntaxError::Code::OutOfRange, alpha,
                      "position " + std::to_string(alpha) + " outside 1.." +
                          std::to_string(t.size()));
  long d = 0;
  for (std::size_t i = 0; i + 1 < alpha; ++i) {
    if (t[i] == U'(') ++d;
    if (t[i] == U')') --d;
  }
  return d;
}

std::vector<Token> tokenize(std::string_view text, const SymbolTable& table,
                            TokenizeOptions opts) {
  struct Cand {
    std::u32string spelling;
    Token::Kind kind;
    std::string name;
    Op op;
  };
  std::vector<Cand> cands;
  for (const auto& v : table.variables)
    cands.push_back({decode_utf8(v), Token::Kind::Var, v, Op::And});
  for (const auto& c : table.constants)
    cands.push_back({decode_utf8(c), Token::Kind::Const, c, Op::And});
  for (const auto& s : op_spellings())
    cands.push_back({decode_utf8(s), Token::Kind::Op, s, *op_from_symbol(s)});

  std::u32string t = decode_utf8(text);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < t.size()) {
    char32_t c = t[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == U'(' || c == U')' || c == U',' || c == U':') {
      Token tok;
      tok.kind = c == U'('   ? Token::Kind::LParen
                 : c == U')' ? Token::Kind::RParen
                 : c == U',' ? Token::Kind::Comma
                             : Token::Kind::Colon;
      tok.text = encode_utf8(std::u32string(1, c));
      tok.span = {i, i + 1};
      out.push_back(tok);
      ++i;
      continue;
    }
    if (c == U'{') {
      std::size_t j = i + 1;
      while (j < t.size() && is_space(t[j])) ++j;
      if (j < t.size() && t[j] == U'}') {
        Token tok;
        tok.kind = Token::Kind::SetBuilder;
        tok.text = "{}";
        tok.span = {i, j + 1};
        out.push_back(tok);
        i = j + 1;
        continue;
      }
      throw SyntaxError(SyntaxError::Code::UnknownSymbol, i,
                        "'{' must be followed by '}' at offset " +
                            std::to_string(i));
    }
    if (c == U'}')
      throw SyntaxError(SyntaxError::Code::UnknownSymbol, i,
                        "stray '}' at offset " + std::to_string(i));

    std::size_t end = i;
    while (end < t.size() && !is_space(t[end]) && !is_punct(t[end])) ++end;
    // Longest match against the declared symbols, repeated over the chunk.
    while (i < end) {
      const Cand* best = nullptr;
      for (const auto& cand : cands) {
        std::size_t n = cand.spelling.size();
        if (n <= end - i && t.compare(i, n, cand.spelling) == 0 &&
            (!best || n > best->spelling.size()))
          best = &cand;
      }
      Token tok;
      if (best) {
        tok.kind = best->kind;
        tok.text = best->kind == Token::Kind::Op
                       ? std::string(op_symbol(best->op))
                       : best->name;
        tok.op = best->op;
        tok.span = {i, i + best->spelling.size()};
        i += best->spelling.size();
      } else if (opts.unknown_as_var) {
        tok.kind = Token::Kind::Var;
        tok.text = encode_utf8(t.substr(i, end - i));
        tok.span = {i, end};
        i = end;
      } else {
        throw SyntaxError(SyntaxError::Code::UnknownSymbol, i,
                          "unknown symbol '" +
                              encode_utf8(t.substr(i, end - i)) +
                              "' at offset " + std::to_string(i));
      }
      out.push_back(std::move(tok));
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    if (pos_ < toks_.size()) {
      const Token& t = toks_[pos_];
      if (t.kind == Token::Kind::RParen)
        throw SyntaxError(SyntaxError::Code::Unbalanced, t.span.start,
                          "unmatched ')' at offset " +
                              std::to_string(t.span.start));
      throw unexpected(t, "end of input");
    }
    return e;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  int open_ = 0;

  std::size_t end_offset() const {
    return toks_.empty() ? 0 : toks_.back().span.end;
  }

  static std::string describe(const Token& t) { return "'" + t.text + "'"; }

  SyntaxError unexpected(const Token& t, const std::string& wanted) const {
    return SyntaxError(SyntaxError::Code::UnexpectedToken, t.span.start,
                       "expected " + wanted + " but found " + describe(t) +
                           " at offset " + std::to_string(t.span.start));
  }

  SyntaxError at_end(const std::string& wanted) const {
    if (open_ > 0)
      return SyntaxError(SyntaxError::Code::Unbalanced, end_offset(),
                         "input ends with " + std::to_string(open_) +
                             " unclosed '('");
    return SyntaxError(SyntaxError::Code::UnexpectedToken, end_offset(),
                       "expected " + wanted + " but input ended");
  }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }

  const Token& expect(Token::Kind k, const std::string& wanted) {
    const Token* t = peek();
    if (!t) throw at_end(wanted);
    if (t->kind != k) throw unexpected(*t, wanted);
    if (k == Token::Kind::LParen) ++open_;
    if (k == Token::Kind::RParen) --open_;
    ++pos_;
    return *t;
  }

  std::vector<ExprPtr> parse_args(std::size_t& close) {
    const Token& lp = expect(Token::Kind::LParen, "'(' opening arguments");
    const Token* t = peek();
    if (t && t->kind == Token::Kind::RParen)
      throw SyntaxError(SyntaxError::Code::EmptyArgumentList, lp.span.start,
                        "empty argument list at offset " +
                            std::to_string(lp.span.start));
    std::vector<ExprPtr> args;
    args.push_back(parse_expr());
    while (peek() && peek()->kind == Token::Kind::Comma) {
      ++pos_;
      args.push_back(parse_expr());
    }
    close = expect(Token::Kind::RParen, "',' or ')'").span.end;
    return args;
  }

  ExprPtr parse_expr() {
    const Token* t = peek();
    if (!t) throw at_end("an expression");
    std::size_t start = t->span.start;
    switch (t->kind) {
      case Token::Kind::Var:
      case Token::Kind::Const: {
        ++pos_;
        auto e = std::make_shared<Expr>();
        e->kind = t->kind == Token::Kind::Var ? Expr::Kind::Var
                                              : Expr::Kind::Const;
        e->name = t->text;
        e->span = t->span;
        return e;
      }
      case Token::Kind::SetBuilder:
        return parse_set_builder();
      case Token::Kind::LParen: {
        const Token* n1 = peek(1);
        const Token* n2 = peek(2);
        if (n1 && n1->kind == Token::Kind::Op && n2 &&
            n2->kind == Token::Kind::RParen) {
          pos_ += 3;
          Op op = n1->op;
          std::size_t close = 0;
          auto args = parse_args(close);
          auto e = std::make_shared<Expr>();
          e->kind = Expr::Kind::OpApply;
          e->op = op;
          e->args = std::move(args);
          e->span = {start, close};
          return e;
        }
        expect(Token::Kind::LParen, "'('");
        ExprPtr head = parse_expr();
        expect(Token::Kind::RParen, "')' closing the applied expression");
        std::size_t close = 0;
        auto args = parse_args(close);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Apply;
        e->head = head;
        e->args = std::move(args);
        e->span = {start, close};
        return e;
      }
      default:
        throw unexpected(*t, "an expression");
    }
  }

  ExprPtr parse_set_builder() {
    std::size_t start = peek()->span.start;
    ++pos_;
    expect(Token::Kind::LParen, "'(' after {}");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::SetBuilder;
    std::set<std::string> seen;
    while (true) {
      const Token* v = peek();
      if (!v) throw at_end("a bound variable");
      if (v->kind != Token::Kind::Var)
        throw unexpected(*v,
                         "a bound variable followed by ':' (every variable "
                         "of a set-builder needs a domain)");
      if (!seen.insert(v->text).second)
        throw SyntaxError(SyntaxError::Code::DuplicateBinder, v->span.start,
                          "variable '" + v->text + "' bound twice at offset " +
                              std::to_string(v->span.start));
      ++pos_;
      expect(Token::Kind::Colon, "':' after bound variable");
      ExprPtr dom = parse_expr();
      e->binders.push_back({v->text, dom});
      expect(Token::Kind::Comma, "',' after a binder domain");
      const Token* a = peek();
      const Token* b = peek(1);
      if (a && a->kind == Token::Kind::Var && b &&
          b->kind == Token::Kind::Colon)
        continue;
      break;
    }
    e->body = parse_expr();
    std::size_t close = expect(Token::Kind::RParen, "')' closing {}").span.end;
    e->span = {start, close};
    return e;
  }
};

void render_into(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Const:
    case Expr::Kind::Var:
      out += e.name;
      return;
    case Expr::Kind::Apply:
    case Expr::Kind::OpApply:
      out += '(';
      if (e.kind == Expr::Kind::Apply)
        render_into(*e.head, out);
      else
        out += op_symbol(e.op);
      out += ")(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ',';
        render_into(*e.args[i], out);
      }
      out += ')';
      return;
    case Expr::Kind::SetBuilder:
      out += "{}(";
      for (const auto& b : e.binders) {
        out += b.var;
        out += ':';
        render_into(*b.dom, out);
        out += ',';
      }
      render_into(*e.body, out);
      out += ')';
      return;
  }
}

}  // namespace

ExprPtr parse(const std::vector<Token>& tokens) {
  return Parser(tokens).parse_all();
}

ExprPtr parse(std::string_view text, const SymbolTable& table,
              TokenizeOptions opts) {
  return parse(tokenize(text, table, opts));
}

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

}  // namespace avon
