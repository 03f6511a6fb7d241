#include "epclass/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "epclass/errors.hpp"

namespace epclass {

struct Expression::Node {
  enum class Kind { Constant, Parameter, Add, Sub, Mul, Div, Neg, Exp } kind = Kind::Constant;
  cplx value{};
  std::size_t index = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  NodePtr parse() {
    NodePtr root = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("amplitude \"" + text_ + "\": " + what, 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Kind::Add, lhs, product());
      } else if (accept('-')) {
        lhs = make(Node::Kind::Sub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make(Node::Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (accept('-')) return make(Node::Kind::Neg, factor());
    if (accept('+')) return factor();
    if (accept('(')) {
      NodePtr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    auto n = std::make_shared<Node>();
    n->value = value;
    return n;
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string id = text_.substr(start, pos_ - start);
    if (id == "exp") {
      if (!accept('(')) fail("expected '(' after exp");
      NodePtr arg = sum();
      if (!accept(')')) fail("expected ')'");
      return make(Node::Kind::Exp, arg);
    }
    auto n = std::make_shared<Node>();
    if (id == "pi") {
      n->value = M_PI;
      return n;
    }
    if (id == "i") {
      n->value = cplx(0.0, 1.0);
      return n;
    }
    const auto it = std::find(names_.begin(), names_.end(), id);
    if (it == names_.end()) throw SemanticError("amplitude \"" + text_ + "\": unknown parameter '" + id + "'");
    n->kind = Node::Kind::Parameter;
    n->index = static_cast<std::size_t>(it - names_.begin());
    return n;
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

cplx eval(const Node& n, std::span<const double> p) {
  switch (n.kind) {
    case Node::Kind::Constant:
      return n.value;
    case Node::Kind::Parameter:
      return p[n.index];
    case Node::Kind::Add:
      return eval(*n.lhs, p) + eval(*n.rhs, p);
    case Node::Kind::Sub:
      return eval(*n.lhs, p) - eval(*n.rhs, p);
    case Node::Kind::Mul:
      return eval(*n.lhs, p) * eval(*n.rhs, p);
    case Node::Kind::Div:
      return eval(*n.lhs, p) / eval(*n.rhs, p);
    case Node::Kind::Neg:
      return -eval(*n.lhs, p);
    case Node::Kind::Exp:
      return std::exp(eval(*n.lhs, p));
  }
  return {};
}

}  // namespace

Expression Expression::compile(const std::string& source, const std::vector<std::string>& parameters) {
  Expression e;
  e.source_ = source;
  e.root_ = Parser(source, parameters).parse();
  return e;
}

cplx Expression::evaluate(std::span<const double> parameter_values) const {
  if (!root_) return {};
  const cplx v = eval(*root_, parameter_values);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError("amplitude \"" + source_ + "\" evaluated to a non-finite value");
  return v;
}

}  // namespace epclass
