#pragma once

#include <stdexcept>
#include <string>

namespace epclass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// linalg
class NonConvergence : public Error {
 public:
  using Error::Error;
};
class NearDefective : public Error {
 public:
  NearDefective(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};
class ZeroVector : public Error {
 public:
  using Error::Error;
};

// model
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};
class SemanticError : public Error {
 public:
  using Error::Error;
};
class EvalError : public Error {
 public:
  using Error::Error;
};

// flow
class LoopTouchesEP : public Error {
 public:
  LoopTouchesEP(const std::string& what, double lambda, double gap)
      : Error(what), lambda_(lambda), gap_(gap) {}
  /// Loop parameter in [0, 1] where the degeneracy was hit.
  double lambda() const noexcept { return lambda_; }
  double gap() const noexcept { return gap_; }

 private:
  double lambda_;
  double gap_;
};
class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

// berry
class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};
class InvalidCycle : public Error {
 public:
  using Error::Error;
};

// classifier
class ParityViolation : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace epclass
