#include <doctest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "epclass/errors.hpp"
#include "epclass/linalg.hpp"

using namespace epclass;

namespace {

CMatrix random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// Distance between two eigenvalue multisets after greedy matching.
double set_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const cplx x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

// Depressed-cubic roots via Cardano with all three complex cube roots.
std::vector<cplx> cardano(cplx c2, cplx c1, cplx c0) {
  const cplx shift = c2 / 3.0;
  const cplx p = c1 - c2 * c2 / 3.0;
  const cplx q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u3 = -q / 2.0 + disc;
  if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
  std::vector<cplx> roots;
  const cplx omega = std::polar(1.0, 2.0 * 3.141592653589793 / 3.0);
  cplx u = std::pow(u3, 1.0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    const cplx v = std::abs(u) > 0 ? -p / (3.0 * u) : cplx(0.0);
    roots.push_back(u + v - shift);
    u *= omega;
  }
  return roots;
}

std::vector<cplx> as_vector(const CVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("cubic roots agree with the Cardano formula") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const cplx c2(g(rng), g(rng)), c1(g(rng), g(rng)), c0(g(rng), g(rng));
    const auto ours = cubic_roots(c2, c1, c0);
    REQUIRE(ours.size() == 3);
    CHECK(set_distance(ours, cardano(c2, c1, c0)) < 1e-8);
    for (const cplx r : ours) CHECK(std::abs(r * r * r + c2 * r * r + c1 * r + c0) < 1e-10 * (1 + std::norm(r) * std::abs(r)));
  }
}

TEST_CASE("eig_full matches an independent eigensolver and has small residuals") {
  std::mt19937 rng(11);
  for (int n : {1, 2, 3, 4, 5, 8, 12}) {
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix m = random_matrix(n, rng);
      const EigenSystem es = eig_full(m);
      REQUIRE(es.dim() == n);
      Eigen::ComplexEigenSolver<CMatrix> ref(m);
      CHECK(set_distance(as_vector(es.values), as_vector(ref.eigenvalues())) < 1e-9 * m.norm());
      CHECK(right_residual(m, es) < 1e-10 * m.norm());
      CHECK(left_residual(m, es) < 1e-10 * m.norm());
      for (int i = 1; i < n; ++i) {
        const cplx a = es.values[i - 1], b = es.values[i];
        CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
      }
    }
  }
}

TEST_CASE("closed-form and iterative paths agree") {
  std::mt19937 rng(3);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      const CMatrix m = random_matrix(n, rng);
      const EigenSystem a = eig_full(m);
      const EigenSystem b = eig_iterative(m);
      CHECK(set_distance(as_vector(a.values), as_vector(b.values)) < 1e-10 * m.norm());
    }
  }
}

TEST_CASE("biorthonormal gauge") {
  std::mt19937 rng(5);
  const CMatrix m = random_matrix(4, rng);
  const EigenSystem es = biorthonormalize(eig_full(m));
  CHECK(es.biorthonormal);
  const CMatrix g = gram_matrix(es);
  CHECK((g - CMatrix::Identity(4, 4)).norm() < 1e-9);
}

TEST_CASE("defective input is reported, not thrown") {
  CMatrix jordan(2, 2);
  jordan << 0.0, 1.0, 0.0, 0.0;
  const EigenSystem es = eig_full(jordan);
  CHECK(es.defective);
  CHECK_THROWS_AS(biorthonormalize(es), NearDefective);
  CMatrix j3 = CMatrix::Zero(4, 4);
  j3(0, 1) = 1.0;
  j3(1, 2) = 1.0;
  j3(3, 3) = 2.0;
  CHECK(eig_full(j3).defective);
}

TEST_CASE("phase rigidity") {
  std::mt19937 rng(9);
  CMatrix a = random_matrix(5, rng);
  const CMatrix h = a + a.adjoint();
  const EigenSystem es = eig_full(h);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(phase_rigidity(es.left.col(i), es.right.col(i))) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(phase_rigidity(CVector::Zero(3), CVector::Ones(3)), ZeroVector);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(eig_full(CMatrix::Zero(2, 3)), InvalidInput);
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_full(bad), InvalidInput);
  CVector v(3);
  v << 1.0, 1.5, cplx(1.0, 0.1);
  CHECK(min_pairwise_gap(v) == doctest::Approx(0.1));
}

TEST_CASE("scalar and diagonal matrices") {
  const EigenSystem es = eig_full(3.0 * CMatrix::Identity(2, 2));
  CHECK(std::abs(es.values[0] - 3.0) < 1e-15);
  CHECK(std::abs(es.values[1] - 3.0) < 1e-15);
  CHECK(right_residual(3.0 * CMatrix::Identity(2, 2), es) < 1e-14);
}
