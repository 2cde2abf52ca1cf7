#include "eikograph/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "eikograph/errors.hpp"

namespace eikograph {

struct Expression::Node {
  enum class Kind { number, variable, unary_minus, binary, call1, call2 } kind = Kind::number;
  double number = 0.0;
  std::size_t slot = 0;
  char op = 0;
  std::string fn;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(const std::vector<double>& v) const {
    switch (kind) {
      case Kind::number:
        return number;
      case Kind::variable:
        return v.at(slot);
      case Kind::unary_minus:
        return -lhs->eval(v);
      case Kind::binary: {
        const double a = lhs->eval(v);
        const double b = rhs->eval(v);
        switch (op) {
          case '+':
            return a + b;
          case '-':
            return a - b;
          case '*':
            return a * b;
          case '/':
            return a / b;
          default:
            return std::pow(a, b);
        }
      }
      case Kind::call1: {
        const double a = lhs->eval(v);
        if (fn == "abs") return std::abs(a);
        if (fn == "sqrt") return std::sqrt(a);
        if (fn == "exp") return std::exp(a);
        if (fn == "log") return std::log(a);
        if (fn == "sin") return std::sin(a);
        return std::cos(a);
      }
      case Kind::call2: {
        const double a = lhs->eval(v);
        const double b = rhs->eval(v);
        return fn == "min" ? std::min(a, b) : std::max(a, b);
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression '" + s_ + "': " + what + " at column " +
                     std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr sum() {
    NodePtr n = product();
    for (;;) {
      if (accept('+')) {
        n = binary('+', n, product());
      } else if (accept('-')) {
        n = binary('-', n, product());
      } else {
        return n;
      }
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = binary('*', n, unary());
      } else if (accept('/')) {
        n = binary('/', n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::unary_minus;
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->number = value;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') return call(name);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::variable;
      n->slot = static_cast<std::size_t>(it - vars_.begin());
      return n;
    }
    fail("unexpected character");
  }

  NodePtr call(const std::string& name) {
    static const std::vector<std::string> one{"abs", "sqrt", "exp", "log", "sin", "cos"};
    static const std::vector<std::string> two{"min", "max"};
    const bool unary_fn = std::find(one.begin(), one.end(), name) != one.end();
    const bool binary_fn = std::find(two.begin(), two.end(), name) != two.end();
    if (!unary_fn && !binary_fn) fail("unknown function '" + name + "'");
    expect('(');
    auto n = std::make_shared<Node>();
    n->fn = name;
    n->lhs = sum();
    if (binary_fn) {
      expect(',');
      n->rhs = sum();
      n->kind = Node::Kind::call2;
    } else {
      n->kind = Node::Kind::call1;
    }
    expect(')');
    return n;
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& text, std::vector<std::string> variables)
    : text_(text), variables_(std::move(variables)) {
  root_ = Parser(text_, variables_).parse();
}

double Expression::evaluate(const std::vector<double>& values) const { return root_->eval(values); }

}  // namespace eikograph
