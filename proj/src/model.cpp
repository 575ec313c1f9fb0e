#include "avon/model.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace avon {

SymbolTable Interpretation::symbols() const {
  SymbolTable t;
  for (const auto& [name, _] : consts) t.constants.insert(name);
  return t;
}

namespace {

class ValueReader {
 public:
  explicit ValueReader(std::string_view s) : s_(s) {}

  Value read_all() {
    Value v = read();
    skip();
    if (i_ != s_.size()) fail("trailing text '" + std::string(s_.substr(i_)) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " (column " + std::to_string(i_ + 1) + ")");
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  bool peek_is(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  void want(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) != w) return false;
    std::size_t j = i_ + w.size();
    if (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j])))
      return false;
    i_ = j;
    return true;
  }

  long read_int() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
      ++i_;
    if (start == i_) fail("expected a non-negative integer");
    return std::stol(std::string(s_.substr(start, i_ - start)));
  }

  Value read() {
    skip();
    if (eat_word("true")) return Value::truth(true);
    if (eat_word("false")) return Value::truth(false);
    if (eat('#')) return Value::atom(read_int());
    if (eat('{')) {
      std::vector<Value> elems;
      if (!eat('}')) {
        do elems.push_back(read());
        while (eat(','));
        want('}');
      }
      return Value::set(std::move(elems));
    }
    if (eat_word("fun")) {
      want('(');
      long arity = read_int();
      want(')');
      want('{');
      Value::Graph graph;
      if (!eat('}')) {
        // A ';' may also end the last entry.
        do {
          if (peek_is('}')) break;
          want('(');
          Value::Tuple args;
          do args.push_back(read());
          while (eat(','));
          want(')');
          want('-');
          want('>');
          Value out = read();
          graph.emplace_back(std::move(args), std::move(out));
        } while (eat(';'));
        want('}');
      }
      return Value::func(static_cast<int>(arity), std::move(graph));
    }
    fail("expected a value");
  }
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

Value parse_value(std::string_view text) { return ValueReader(text).read_all(); }

Interpretation parse_model(std::string_view text) {
  Interpretation I;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  // A definition may continue over following lines until the next `const`.
  std::string pending;
  std::size_t pending_line = 0;
  auto flush = [&]() {
    if (pending.empty()) return;
    std::string body = trim(std::string_view(pending).substr(5));
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ModelError(pending_line, "line " + std::to_string(pending_line) +
                                         ": expected 'const <name> = <value>'");
    std::string name = trim(std::string_view(body).substr(0, eq));
    if (name.empty())
      throw ModelError(pending_line, "line " + std::to_string(pending_line) +
                                         ": missing constant name");
    if (I.consts.count(name))
      throw ModelError(pending_line, "line " + std::to_string(pending_line) +
                                         ": duplicate constant '" + name + "'");
    try {
      I.consts.emplace(name, parse_value(std::string_view(body).substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ModelError(pending_line, "line " + std::to_string(pending_line) +
                                         ": constant '" + name + "': " + e.what());
    }
    pending.clear();
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    // '#' starts a comment only when it is not an atom literal.
    while (hash != std::string::npos && hash + 1 < raw.size() &&
           std::isdigit(static_cast<unsigned char>(raw[hash + 1])))
      hash = raw.find('#', hash + 1);
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.rfind("const", 0) == 0 &&
        (line.size() == 5 || std::isspace(static_cast<unsigned char>(line[5])))) {
      flush();
      pending = line;
      pending_line = lineno;
    } else if (!pending.empty()) {
      pending += ' ';
      pending += line;
    } else {
      throw ModelError(lineno, "line " + std::to_string(lineno) +
                                   ": expected 'const <name> = <value>'");
    }
  }
  flush();
  try {
    I.symbols().validate();
  } catch (const SyntaxError& e) {
    throw ModelError(0, std::string("bad constant name: ") + e.what());
  }
  return I;
}

Interpretation load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ModelError(0, "cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_model(ss.str());
}

}  // namespace avon
