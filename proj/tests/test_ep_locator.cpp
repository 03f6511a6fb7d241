#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "epclass/builtin_models.hpp"
#include "epclass/ep_locator.hpp"
#include "epclass/errors.hpp"

using namespace epclass;

namespace {

constexpr double kPi = 3.141592653589793;

// Product of squared eigenvalue differences from an independent solver.
cplx eigen_discriminant(const CMatrix& h) {
  Eigen::ComplexEigenSolver<CMatrix> es(h);
  const auto& v = es.eigenvalues();
  cplx p = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    for (Eigen::Index j = i + 1; j < v.size(); ++j) p *= (v[i] - v[j]) * (v[i] - v[j]);
  return p;
}

// Sign-change bisection of the real discriminant along t at fixed k.
std::vector<double> bisection_roots(const ModelSpec& spec, ParamPoint p, double from, double to, int n) {
  auto f = [&](double t) { return eigen_discriminant(bloch(spec, p.with("t", t))).real(); };
  std::vector<double> roots;
  double prev = f(from);
  for (int i = 1; i <= n; ++i) {
    double a = from + (to - from) * (i - 1) / n;
    double b = from + (to - from) * i / n;
    const double fb = f(b);
    if ((prev < 0) != (fb < 0)) {
      double fa = prev;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = fb;
  }
  return roots;
}

Region t_k_region(double to) {
  Region r;
  r.p1 = "t";
  r.from1 = 0.0;
  r.to1 = to;
  return r;
}

}  // namespace

TEST_CASE("SSH discriminant matches its factorized form") {
  const ModelSpec ssh = builtin_model("ssh");
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const cplx i(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = u(rng), th = u(rng) - 1.0, d = u(rng), k = 3.0 * u(rng);
    const cplx expect = 4.0 * (d + t * std::exp(th) * std::exp(i * k)) * (d + t * std::exp(-th) * std::exp(-i * k));
    const cplx got = discriminant(ssh, ParamPoint{}.with("t", t).with("theta", th).with("d", d).with("k", k));
    CHECK(std::abs(got - expect) < 1e-12 * (1 + std::abs(expect)));
  }
  CHECK(std::abs(discriminant(ssh, ParamPoint{}.with("t", std::exp(-0.4)).with("theta", 0.4).with("k", kPi))) < 1e-14);
  CHECK(std::abs(discriminant(ssh, ParamPoint{}.with("t", 0.0).with("k", 1.3)) - 4.0) < 1e-14);
  CHECK(std::abs(matrix_discriminant(CMatrix::Identity(2, 2))) == 0.0);
}

TEST_CASE("discriminant formulas agree with eigenvalue differences") {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 4, 5, 6}) {
    for (int trial = 0; trial < 10; ++trial) {
      CMatrix m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = cplx(g(rng), g(rng));
      const cplx ref = eigen_discriminant(m);
      CHECK(std::abs(matrix_discriminant(m) - ref) < 1e-8 * (1 + std::abs(ref)));
    }
  }
}

TEST_CASE("SSH exceptional points") {
  const ModelSpec ssh = builtin_model("ssh");
  const LocateResult r = locate_eps(ssh, t_k_region(3.0), ParamPoint{}.with("theta", 0.4));
  REQUIRE(r.eps.size() == 2);
  CHECK(std::abs(r.eps[0].coord1 - std::exp(-0.4)) < 1e-6);
  CHECK(std::abs(r.eps[1].coord1 - std::exp(0.4)) < 1e-6);
  for (const auto& e : r.eps) {
    CHECK(std::abs(e.coord2 - kPi) < 1e-6);
    CHECK(e.kind == DegeneracyKind::EP);
    CHECK(e.coalescence <= 0.05);
    CHECK(e.gap <= 1e-6);
  }
  CHECK(std::abs(r.eps[0].coord1 * r.eps[1].coord1 - 1.0) < 1e-8);

  LocateOptions fine;
  fine.n1 = 128;
  fine.n2 = 128;
  CHECK(locate_eps(ssh, t_k_region(3.0), ParamPoint{}.with("theta", 0.4), fine).eps.size() == 2);
}

TEST_CASE("Hermitian SSH has a single Dirac point") {
  const ModelSpec ssh = builtin_model("ssh");
  const LocateResult r = locate_eps(ssh, t_k_region(3.0), ParamPoint{}.with("theta", 0.0));
  REQUIRE(r.eps.size() == 1);
  CHECK(r.eps[0].coord1 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.eps[0].coord2 == doctest::Approx(kPi).epsilon(1e-4));
  CHECK(r.eps[0].kind == DegeneracyKind::DiabolicPoint);
}

TEST_CASE("three-band exceptional points") {
  const ModelSpec tb = builtin_model("three-band");
  const ParamPoint base = ParamPoint{}.with("theta", 0.1);
  // Bisection oracle on the real discriminant along the k = 0 and k = pi lines.
  const auto at0 = bisection_roots(tb, base.with("k", 0.0), 0.0, 2.0, 400);
  const auto atpi = bisection_roots(tb, base.with("k", kPi), 0.0, 2.0, 400);
  REQUIRE(at0.size() == 2);
  REQUIRE(atpi.size() == 2);
  const double golden[4] = {0.732979471996, 0.871550207032, 1.099635243730, 1.307564600793};
  CHECK(at0[0] == doctest::Approx(golden[0]).epsilon(1e-9));
  CHECK(at0[1] == doctest::Approx(golden[1]).epsilon(1e-9));
  CHECK(atpi[0] == doctest::Approx(golden[2]).epsilon(1e-9));
  CHECK(atpi[1] == doctest::Approx(golden[3]).epsilon(1e-9));

  const LocateResult r = locate_eps(tb, t_k_region(2.0), base);
  REQUIRE(r.eps.size() == 4);
  const double ks[4] = {0.0, 0.0, kPi, kPi};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(r.eps[static_cast<std::size_t>(i)].coord1 - golden[i]) < 1e-6);
    const double dk = std::abs(r.eps[static_cast<std::size_t>(i)].coord2 - ks[i]);
    CHECK(std::min(dk, 2 * kPi - dk) < 1e-6);
    CHECK(r.eps[static_cast<std::size_t>(i)].kind == DegeneracyKind::EP);
  }
}

TEST_CASE("region parsing") {
  const Region r = parse_region("t=0:3,k=0:6.2832");
  CHECK(r.p1 == "t");
  CHECK(r.to1 == 3.0);
  CHECK(r.p2 == "k");
  CHECK(r.to2 == 6.2832);
  CHECK_THROWS_AS(parse_region("t=0:3"), InvalidInput);
  CHECK_THROWS_AS(parse_region("t=3:0,k=0:1"), InvalidInput);
  const ModelSpec ssh = builtin_model("ssh");
  LocateOptions small;
  small.n1 = 8;
  CHECK_THROWS_AS(locate_eps(ssh, r, {}, small), InvalidInput);
  CHECK_THROWS_AS(locate_eps(ssh, parse_region("q=0:1,k=0:1"), {}), SemanticError);
  CHECK(locate_eps(ssh, parse_region("t=0:0.3,k=0:6.2832"), ParamPoint{}.with("theta", 0.4)).eps.empty());
}
