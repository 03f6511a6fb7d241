#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "epclass/linalg.hpp"

namespace epclass {

/// Compiled hopping-amplitude expression.
///
/// Grammar: sums and differences of products and quotients of factors, where a
/// factor is a number, the constants `pi` and `i` (imaginary unit), a parameter
/// name, `exp(...)`, a parenthesized expression, or a signed factor.
/// Parameter names are resolved to indices at compile time.
class Expression {
 public:
  Expression() = default;

  /// Throws SyntaxError (column is 1-based within `source`) or SemanticError
  /// for names missing from `parameters`.
  static Expression compile(const std::string& source, const std::vector<std::string>& parameters);

  cplx evaluate(std::span<const double> parameter_values) const;
  const std::string& source() const noexcept { return source_; }

  struct Node;

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace epclass
