#include "epclass/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_finite(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidInput("eigenproblem needs a non-empty square matrix, got " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw InvalidInput("eigenproblem input contains non-finite entries");
}

// Reorders columns lexicographically by (Re, Im) of the eigenvalue.
void sort_system(EigenSystem& sys) {
  const Eigen::Index n = sys.dim();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const cplx x = sys.values[a];
    const cplx y = sys.values[b];
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  CVector values(n);
  CMatrix right(n, n);
  CMatrix left(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values[i] = sys.values[order[static_cast<std::size_t>(i)]];
    right.col(i) = sys.right.col(order[static_cast<std::size_t>(i)]);
    left.col(i) = sys.left.col(order[static_cast<std::size_t>(i)]);
  }
  sys.values = std::move(values);
  sys.right = std::move(right);
  sys.left = std::move(left);
}

void normalize_columns(CMatrix& v) {
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    const double n = v.col(i).norm();
    if (n > 0.0) v.col(i) /= n;
  }
}

void fill_conditioning(EigenSystem& sys, double tol) {
  double cond = 1.0;
  for (Eigen::Index i = 0; i < sys.dim(); ++i) {
    const double nl = sys.left.col(i).norm();
    const double nr = sys.right.col(i).norm();
    const double r = (nl > 0.0 && nr > 0.0) ? std::abs(sys.left.col(i).dot(sys.right.col(i))) / (nl * nr) : 0.0;
    cond = std::max(cond, r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity());
  }
  sys.condition = cond;
  sys.defective = cond > 1.0 / tol;
}

// Diagonal similarity B = D^-1 H D with radix-2 factors equalizing row and
// column off-diagonal norms (Parlett-Reinsch, no permutations).
Eigen::VectorXd balance(CMatrix& b) {
  const Eigen::Index n = b.rows();
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool converged = false;
  for (int sweep = 0; !converged && sweep < 200; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        scale[i] *= f;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return scale;
}

std::pair<CVector, double> best_candidate(const CVector& a, const CVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  return na >= nb ? std::pair{a, na} : std::pair{b, nb};
}

// Right null vector of a 2x2 singular matrix (bilinear orthogonality to rows).
std::pair<CVector, double> null_vector2(const Eigen::Matrix2cd& m) {
  CVector v1(2), v2(2);
  v1 << m(0, 1), -m(0, 0);
  v2 << m(1, 1), -m(1, 0);
  return best_candidate(v1, v2);
}

std::pair<CVector, double> null_vector3(const Eigen::Matrix3cd& m) {
  const Eigen::Vector3cd r0 = m.row(0).transpose();
  const Eigen::Vector3cd r1 = m.row(1).transpose();
  const Eigen::Vector3cd r2 = m.row(2).transpose();
  const CVector a = r0.cross(r1);
  const CVector b = r0.cross(r2);
  const CVector c = r1.cross(r2);
  return best_candidate(best_candidate(a, b).first, c);
}

bool closed_form_ok(const CMatrix& m, const EigenSystem& sys, double tol) {
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  return right_residual(m, sys) <= tol * scale && left_residual(m, sys) <= tol * scale;
}

EigenSystem scalar_system(const CMatrix& m) {
  EigenSystem sys;
  const Eigen::Index n = m.rows();
  sys.values = m.diagonal();
  sys.right = CMatrix::Identity(n, n);
  sys.left = CMatrix::Identity(n, n);
  return sys;
}

std::optional<EigenSystem> eig_closed2(const CMatrix& m, double tol) {
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  if (b == 0.0 && c == 0.0) return scalar_system(m);
  const cplx root = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
  const cplx half = 0.5 * (a + d);
  EigenSystem sys;
  sys.values.resize(2);
  sys.values << half + 0.5 * root, half - 0.5 * root;
  sys.right.resize(2, 2);
  sys.left.resize(2, 2);
  const double scale = m.norm();
  for (int i = 0; i < 2; ++i) {
    Eigen::Matrix2cd shifted = m;
    shifted.diagonal().array() -= sys.values[i];
    auto [vr, nr] = null_vector2(shifted);
    auto [vl, nl] = null_vector2(shifted.transpose());
    if (nr <= kEps * scale || nl <= kEps * scale) return std::nullopt;
    sys.right.col(i) = vr / nr;
    sys.left.col(i) = vl.conjugate() / nl;
  }
  if (!closed_form_ok(m, sys, tol)) return std::nullopt;
  return sys;
}

std::optional<EigenSystem> eig_closed3(const CMatrix& m, double tol) {
  const Eigen::Matrix3cd h = m;
  const cplx tr = h.trace();
  const cplx minors = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) + h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0) +
                      h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1);
  const cplx det = h.determinant();
  const auto roots = cubic_roots(-tr, minors, -det);
  EigenSystem sys;
  sys.values.resize(3);
  sys.right.resize(3, 3);
  sys.left.resize(3, 3);
  const double scale = m.norm();
  for (int i = 0; i < 3; ++i) {
    sys.values[i] = roots[static_cast<std::size_t>(i)];
    Eigen::Matrix3cd shifted = h;
    shifted.diagonal().array() -= sys.values[i];
    auto [vr, nr] = null_vector3(shifted);
    auto [vl, nl] = null_vector3(shifted.transpose());
    // Rank <= 1 (repeated non-defective root): leave it to the iterative path.
    if (nr <= kEps * scale * scale || nl <= kEps * scale * scale) return std::nullopt;
    sys.right.col(i) = vr / nr;
    sys.left.col(i) = vl.conjugate() / nl;
  }
  if (!closed_form_ok(m, sys, tol)) return std::nullopt;
  return sys;
}

}  // namespace

std::vector<cplx> cubic_roots(cplx c2, cplx c1, cplx c0) {
  const cplx shift = c2 / 3.0;
  const cplx p = c1 - c2 * c2 / 3.0;
  const cplx q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const cplx sd = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const cplx w1 = -q / 2.0 + sd;
  const cplx w2 = -q / 2.0 - sd;
  const cplx w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
  std::vector<cplx> roots(3, -shift);
  if (w != 0.0) {
    const cplx u = std::pow(w, 1.0 / 3.0);
    const cplx v = -p / (3.0 * u);
    const cplx omega = std::polar(1.0, 2.0 * M_PI / 3.0);
    cplx wk = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
      roots[k] = u * wk + v / wk - shift;
      wk *= omega;
    }
  }
  auto value = [&](cplx x) { return ((x + c2) * x + c1) * x + c0; };
  for (auto& x : roots) {
    for (int it = 0; it < 4; ++it) {
      const cplx f = value(x);
      const cplx df = (3.0 * x + 2.0 * c2) * x + c1;
      if (f == 0.0 || df == 0.0) break;
      const cplx next = x - f / df;
      if (std::abs(value(next)) >= std::abs(f)) break;
      x = next;
    }
  }
  return roots;
}

EigenSystem eig_iterative(const CMatrix& m, double tol) {
  require_square_finite(m);
  const Eigen::Index n = m.rows();
  CMatrix b = m;
  const Eigen::VectorXd scale = balance(b);

  Eigen::ComplexSchur<CMatrix> schur(n);
  schur.setMaxIterations(static_cast<Eigen::Index>(60) * n);
  schur.compute(b, true);
  if (schur.info() != Eigen::Success) {
    throw NonConvergence("complex QR iteration did not converge for a " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
  }
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  const double tnorm = t.cwiseAbs().maxCoeff();
  const double smin = std::max(kEps * tnorm, std::numeric_limits<double>::min());
  auto guarded = [smin](cplx den) { return std::abs(den) < smin ? cplx(smin, 0.0) : den; };

  CMatrix x = CMatrix::Zero(n, n);
  CMatrix z = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx lambda = t(k, k);
    x(k, k) = 1.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      cplx s = 0.0;
      for (Eigen::Index j = i + 1; j <= k; ++j) s += t(i, j) * x(j, k);
      x(i, k) = -s / guarded(t(i, i) - lambda);
    }
    z(k, k) = 1.0;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      cplx s = 0.0;
      for (Eigen::Index i = k; i < j; ++i) s += z(i, k) * t(i, j);
      z(j, k) = -s / guarded(t(j, j) - lambda);
    }
  }

  EigenSystem sys;
  sys.values = t.diagonal();
  sys.right = scale.asDiagonal() * (u * x);
  sys.left = scale.cwiseInverse().asDiagonal() * (u * z.conjugate());
  normalize_columns(sys.right);
  normalize_columns(sys.left);
  sort_system(sys);
  fill_conditioning(sys, tol);
  return sys;
}

EigenSystem eig_full(const CMatrix& m, double tol) {
  require_square_finite(m);
  const Eigen::Index n = m.rows();
  if (n == 1) {
    EigenSystem sys = scalar_system(m);
    fill_conditioning(sys, tol);
    return sys;
  }
  std::optional<EigenSystem> closed;
  if (n == 2) closed = eig_closed2(m, tol);
  if (n == 3) closed = eig_closed3(m, tol);
  if (!closed) return eig_iterative(m, tol);
  sort_system(*closed);
  fill_conditioning(*closed, tol);
  return std::move(*closed);
}

double min_pairwise_gap(const CVector& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i)
    for (Eigen::Index j = i + 1; j < values.size(); ++j) gap = std::min(gap, std::abs(values[i] - values[j]));
  return gap;
}

void apply_biorthonormal_gauge(EigenSystem& sys) {
  for (Eigen::Index i = 0; i < sys.dim(); ++i) {
    const cplx overlap = sys.left.col(i).dot(sys.right.col(i));
    if (overlap != 0.0) sys.left.col(i) /= std::conj(overlap);
  }
  sys.biorthonormal = true;
}

EigenSystem biorthonormalize(const EigenSystem& sys, double tol) {
  const double gap = min_pairwise_gap(sys.values);
  const double scale = std::max(1.0, sys.values.cwiseAbs().maxCoeff());
  if (gap <= tol * scale) {
    throw NearDefective("eigenvalues too close to biorthonormalize (gap " + std::to_string(gap) + ")", gap);
  }
  EigenSystem out = sys;
  apply_biorthonormal_gauge(out);
  return out;
}

cplx phase_rigidity(const CVector& left, const CVector& right) {
  const double nl = left.norm();
  const double nr = right.norm();
  if (nl == 0.0 || nr == 0.0) throw ZeroVector("phase rigidity of a zero vector");
  return left.dot(right) / (nl * nr);
}

CMatrix gram_matrix(const EigenSystem& sys) { return sys.left.adjoint() * sys.right; }

double right_residual(const CMatrix& m, const EigenSystem& sys) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < sys.dim(); ++i) {
    const CVector v = sys.right.col(i);
    const double n = v.norm();
    if (n == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, (m * v - sys.values[i] * v).norm() / n);
  }
  return worst;
}

double left_residual(const CMatrix& m, const EigenSystem& sys) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < sys.dim(); ++i) {
    const CVector v = sys.left.col(i);
    const double n = v.norm();
    if (n == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, (m.adjoint() * v - std::conj(sys.values[i]) * v).norm() / n);
  }
  return worst;
}

}  // namespace epclass
