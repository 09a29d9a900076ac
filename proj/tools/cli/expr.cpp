#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace fracinv::cli {
namespace {

struct Node {
  enum Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin } kind;
  double value = 0.0;
  int exponent = 0;
  std::unique_ptr<Node> a, b;

  double eval(double v) const {
    switch (kind) {
      case Const: return value;
      case Var: return v;
      case Add: return a->eval(v) + b->eval(v);
      case Sub: return a->eval(v) - b->eval(v);
      case Mul: return a->eval(v) * b->eval(v);
      case Div: return a->eval(v) / b->eval(v);
      case Neg: return -a->eval(v);
      case Pow: {
        const double base = a->eval(v);
        double r = 1.0;
        for (int i = 0; i < exponent; ++i) r *= base;
        return r;
      }
      case Sin: return std::sin(a->eval(v));
    }
    return 0.0;
  }
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, const std::string& var) : s_(s), var_(var) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + s_ + "', position " + std::to_string(pos_ + 1) +
                     ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Node::Add, std::move(n), term());
      else if (accept('-')) n = make(Node::Sub, std::move(n), term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = factor();
    for (;;) {
      if (accept('*')) n = make(Node::Mul, std::move(n), factor());
      else if (accept('/')) n = make(Node::Div, std::move(n), factor());
      else return n;
    }
  }

  NodePtr factor() {
    if (accept('-')) return make(Node::Neg, factor());
    if (accept('+')) return factor();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (!accept('^')) return base;
    skip_ws();
    int e = 0;
    const char* first = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), e);
    if (ec != std::errc() || e < 0 || e > 64) fail("exponent must be an integer in [0, 64]");
    pos_ += static_cast<std::size_t>(ptr - first);
    NodePtr n = make(Node::Pow, std::move(base));
    n->exponent = e;
    return n;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - first);
      NodePtr n = make(Node::Const);
      n->value = v;
      return n;
    }
    if (accept('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    std::string word;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
    if (word == "pi") {
      NodePtr n = make(Node::Const);
      n->value = M_PI;
      return n;
    }
    if (word == var_) return make(Node::Var);
    if (word == "sin") {
      expect('(');
      NodePtr n = make(Node::Sin, expr());
      expect(')');
      return n;
    }
    if (word.empty()) fail("unexpected '" + std::string(1, c) + "'");
    fail("unknown name '" + word + "'");
  }

  const std::string& s_;
  std::string var_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text,
                                               const std::string& var) {
  std::shared_ptr<const Node> root = Parser(text, var).parse();
  return [root](double v) { return root->eval(v); };
}

}  // namespace fracinv::cli
