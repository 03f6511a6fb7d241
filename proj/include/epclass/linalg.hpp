#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace epclass {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultEigTol = 1e-10;

/// Eigenvalues with paired right and left eigenvectors of a dense complex matrix.
///
/// Column i of `right` is psi_i with H psi_i = values[i] psi_i, column i of `left`
/// is phi_i with phi_i^H H = values[i] phi_i^H. Right vectors carry unit 2-norm.
/// Left vectors carry unit 2-norm until biorthonormalize() rescales them so that
/// <phi_i|psi_i> = 1.
struct EigenSystem {
  CVector values;
  CMatrix right;
  CMatrix left;
  bool biorthonormal = false;
  /// Set when the eigenvector matrix condition estimate exceeds 1/tol.
  bool defective = false;
  /// max_i 1/|r_i|: the largest eigenvalue condition number (Wilkinson).
  double condition = 1.0;

  Eigen::Index dim() const { return values.size(); }
};

/// Full eigendecomposition. dim 2 and 3 use closed-form roots with null-space
/// extraction; larger matrices go through balancing, Hessenberg reduction and
/// shifted complex QR with triangular back-substitution for both vector sets.
/// Eigenvalues come back sorted lexicographically by (Re, Im).
///
/// Throws InvalidInput for non-square or non-finite input and NonConvergence if
/// the QR sweep runs out of iterations. Defective input is reported through
/// EigenSystem::defective, never thrown.
EigenSystem eig_full(const CMatrix& m, double tol = kDefaultEigTol);

/// Same as eig_full but always takes the iterative route. Exposed so the
/// closed-form paths can be cross-checked.
EigenSystem eig_iterative(const CMatrix& m, double tol = kDefaultEigTol);

/// Rescales left vectors so <phi_i|psi_j> = delta_ij. Throws NearDefective when
/// the smallest pairwise eigenvalue gap is <= tol * max(1, max|lambda|).
EigenSystem biorthonormalize(const EigenSystem& sys, double tol = 1e-5);

/// Rescales every left vector so <phi_i|psi_i> = 1 without any gap check.
/// Pairs with a vanishing overlap (exactly defective) are left untouched.
void apply_biorthonormal_gauge(EigenSystem& sys);

/// r = <phi|psi> / sqrt(<phi|phi><psi|psi>). Throws ZeroVector.
cplx phase_rigidity(const CVector& left, const CVector& right);

/// Smallest pairwise eigenvalue distance; +inf for dim 1.
double min_pairwise_gap(const CVector& values);

/// Gram matrix G_ij = <phi_i|psi_j>.
CMatrix gram_matrix(const EigenSystem& sys);

/// Max over i of ||H psi_i - lambda_i psi_i|| / ||psi_i||.
double right_residual(const CMatrix& m, const EigenSystem& sys);
/// Max over i of ||phi_i^H H - lambda_i phi_i^H|| / ||phi_i||.
double left_residual(const CMatrix& m, const EigenSystem& sys);

/// Roots of the monic cubic x^3 + c2 x^2 + c1 x + c0, Newton-polished.
std::vector<cplx> cubic_roots(cplx c2, cplx c1, cplx c0);

}  // namespace epclass
