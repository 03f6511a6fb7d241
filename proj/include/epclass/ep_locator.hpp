#pragma once

#include <string>
#include <vector>

#include "epclass/linalg.hpp"
#include "epclass/model.hpp"

namespace epclass {

/// Discriminant of det(h - lambda I): zero iff two eigenvalues coincide.
/// Closed forms for dim 1-3, (-1)^(n(n-1)/2) Res(p, p') beyond.
cplx matrix_discriminant(const CMatrix& h);

/// Discriminant of the family matrix at p. Throws EvalError.
cplx discriminant(const ModelSpec& spec, const ParamPoint& p);

/// Box in two coordinates, either of which may be "k".
struct Region {
  std::string p1;
  double from1 = 0.0;
  double to1 = 1.0;
  std::string p2 = "k";
  double from2 = 0.0;
  double to2 = 6.283185307179586;
};

/// Parses "t=0:3,k=0:6.2832".
Region parse_region(const std::string& text);

struct LocateOptions {
  int n1 = 64;
  int n2 = 64;
  /// Convergence threshold on |disc| relative to max(1, ||h||_F)^(n(n-1)).
  double tol = 1e-12;
  int max_iterations = 100;
  double dedup_tol = 1e-6;
  /// Rigidity at or below which a degeneracy counts as exceptional.
  double coalescence_threshold = 0.05;
};

enum class DegeneracyKind { EP, DiabolicPoint };

const char* to_string(DegeneracyKind k);

struct EPLocation {
  ParamPoint point;
  double coord1 = 0.0;
  double coord2 = 0.0;
  double disc_residual = 0.0;
  /// Mean |phase rigidity| of the closest eigenvalue pair.
  double coalescence = 1.0;
  double gap = 0.0;
  int order = 2;
  DegeneracyKind kind = DegeneracyKind::EP;
  /// Set when more than two eigenvalues merge; such points are reported, not verified.
  bool higher_order = false;
};

struct LocateResult {
  std::vector<EPLocation> eps;
  std::vector<std::string> warnings;
};

/// Grid scan for local minima of |disc| followed by damped Newton on
/// (Re disc, Im disc). Results are sorted by (coord1, coord2), with k folded
/// into [0, 2 pi). Seeds that fail to converge only produce warnings.
LocateResult locate_eps(const ModelSpec& spec, const Region& region, const ParamPoint& fixed,
                        const LocateOptions& options = {});

}  // namespace epclass
