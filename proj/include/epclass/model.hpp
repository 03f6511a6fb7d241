#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epclass/expression.hpp"
#include "epclass/linalg.hpp"

namespace epclass {

/// One hopping term: amplitude from orbital `from` in cell i to orbital `to`
/// in cell i + offset.
struct Hopping {
  int from = 0;
  int to = 0;
  int offset = 0;
  std::string amplitude;
  Expression expr;

  bool operator==(const Hopping& o) const {
    return from == o.from && to == o.to && offset == o.offset && amplitude == o.amplitude;
  }
};

/// Point in model parameter space. Names absent from `values` take the model
/// default. `k` is the crystal momentum in radians and may be omitted for
/// families without inter-cell hoppings.
struct ParamPoint {
  std::map<std::string, double> values;
  std::optional<double> k;

  ParamPoint with(const std::string& name, double value) const {
    ParamPoint p = *this;
    if (name == "k") {
      p.k = value;
    } else {
      p.values[name] = value;
    }
    return p;
  }
  /// Reads a coordinate by name; "k" maps to the momentum.
  std::optional<double> get(const std::string& name) const;
};

/// Tight-binding unit cell. Immutable after parsing.
class ModelSpec {
 public:
  std::string name;
  int orbitals = 1;
  std::vector<std::string> parameter_names;
  std::vector<double> defaults;
  std::vector<Hopping> hoppings;

  std::optional<std::size_t> parameter_index(std::string_view param) const;
  bool has_parameter(std::string_view param) const { return parameter_index(param).has_value(); }
  /// True when any hopping crosses a cell boundary.
  bool is_lattice() const;
  /// Defaults overridden by p.values. Throws SemanticError for unknown names.
  std::vector<double> resolve(const ParamPoint& p) const;

  bool operator==(const ModelSpec& o) const {
    return name == o.name && orbitals == o.orbitals && parameter_names == o.parameter_names &&
           defaults == o.defaults && hoppings == o.hoppings;
  }
};

/// Parses the JSON model format: keys `name`, `orbitals`, `parameters` (object
/// of name -> default) and `hoppings` (array of {from, to, offset, amplitude}).
/// Throws SyntaxError with line/column, or SemanticError.
ModelSpec parse_model_spec(std::string_view text);

/// Canonical text form; the bundled model files are byte-identical to it.
std::string serialize_model_spec(const ModelSpec& spec);

/// FNV-1a over the canonical serialization.
std::uint64_t model_hash(const ModelSpec& spec);
std::string model_hash_hex(const ModelSpec& spec);

/// Caches hopping amplitudes for one parameter point so that only the Bloch
/// phases vary between calls.
class BlochEvaluator {
 public:
  BlochEvaluator(const ModelSpec& spec, const ParamPoint& p);
  CMatrix at(double k) const;
  void fill(double k, CMatrix& out) const;

 private:
  int orbitals_;
  struct Term {
    int row, col, offset;
    cplx amplitude;
  };
  std::vector<Term> terms_;
};

/// h(k)[a][b] = sum over hoppings with to=a, from=b of amplitude * exp(i k offset).
/// Throws InvalidInput if the model is a lattice and p.k is missing; EvalError
/// for non-finite amplitudes.
CMatrix bloch(const ModelSpec& spec, const ParamPoint& p);

/// Open chain of n_cells unit cells without wrap-around. p.k is ignored.
CMatrix obc_hamiltonian(const ModelSpec& spec, int n_cells, const ParamPoint& p);

/// Evaluates the family matrix at p: bloch() for lattices, the k-independent
/// cell matrix otherwise.
CMatrix family_matrix(const ModelSpec& spec, const ParamPoint& p);

/// Parses "name=value" overrides into a ParamPoint, validating names against
/// the model ("k" sets the momentum).
ParamPoint parse_overrides(const ModelSpec& spec, const std::vector<std::string>& assignments);

}  // namespace epclass
