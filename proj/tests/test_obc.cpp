#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "epclass/builtin_models.hpp"
#include "epclass/errors.hpp"
#include "epclass/obc.hpp"

using namespace epclass;

namespace {

struct HermitianOracle {
  Eigen::VectorXd energies;
  std::vector<double> rigidities;
};

// The non-reciprocal open chain is S^-1 H_0 S with S = diag(exp(-theta * cell)),
// H_0 the Hermitian chain; rigidities follow as 1 / (|S u| |S^-1 u|).
HermitianOracle hermitian_oracle(int cells, double t, double theta, double d) {
  const int n = 2 * cells;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < cells; ++c) {
    h(2 * c, 2 * c + 1) = h(2 * c + 1, 2 * c) = d;
    if (c + 1 < cells) h(2 * c + 2, 2 * c + 1) = h(2 * c + 1, 2 * c + 2) = t;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  HermitianOracle out;
  out.energies = es.eigenvalues();
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = std::exp(-theta * (i / 2));
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd u = es.eigenvectors().col(i);
    out.rigidities.push_back(1.0 / (s.cwiseProduct(u).norm() * u.cwiseQuotient(s).norm()));
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

ParamPoint at(double t, double theta) { return ParamPoint{}.with("t", t).with("theta", theta); }

}  // namespace

TEST_CASE("Hermitian chains have unit rigidity") {
  const ModelSpec ssh = builtin_model("ssh");
  for (double t : {0.3, 1.0, 2.2}) {
    const ObcReport r = obc_report(ssh, 20, at(t, 0.0));
    for (const double x : r.rigidities) CHECK(std::abs(x - 1.0) < 1e-10);
  }
}

TEST_CASE("decoupled dimers") {
  const ObcReport r = obc_report(builtin_model("ssh"), 10, at(0.0, 0.4));
  CHECK(r.gap == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.midgap.empty());
}

TEST_CASE("spectrum and gap match the Hermitian similarity oracle") {
  const ModelSpec ssh = builtin_model("ssh");
  for (double t : {0.6, 0.8, 1.2, 1.6, 2.5}) {
    const ObcReport r = obc_report(ssh, 40, at(t, 0.4));
    const ObcReport h = obc_report(ssh, 40, at(t, 0.0));
    const HermitianOracle o = hermitian_oracle(40, t, 0.4, 1.0);
    CHECK(r.max_imag < 1e-8);
    for (int i = 0; i < 80; ++i) CHECK(std::abs(r.energies[i].real() - o.energies[i]) < 1e-8);
    CHECK(std::abs(r.gap - h.gap) < 1e-8);
    CHECK(r.midgap == h.midgap);
  }
}

TEST_CASE("edge states in the nontrivial chain") {
  const ModelSpec ssh = builtin_model("ssh");
  const HermitianOracle o = hermitian_oracle(40, 1.6, 0.4, 1.0);
  // Golden values from the oracle.
  CHECK(o.rigidities[39] == doctest::Approx(4.5428880023e-7).epsilon(1e-6));
  CHECK(median(o.rigidities) == doctest::Approx(3.7865337401e-6).epsilon(1e-6));

  const ObcReport r = obc_report(ssh, 40, at(1.6, 0.4));
  CHECK(r.midgap == std::vector<int>{39, 40});
  const double threshold = std::sqrt(o.rigidities[39] * median(o.rigidities));
  const double bulk = median(r.rigidities);
  for (const int i : r.midgap) {
    CHECK(r.rigidities[static_cast<std::size_t>(i)] < threshold);
    CHECK(r.rigidities[static_cast<std::size_t>(i)] < bulk);
    CHECK(r.edge_weight[static_cast<std::size_t>(i)] > 0.5);
  }
  for (const double x : r.rigidities) CHECK(x <= 1.0 + 1e-9);
}

TEST_CASE("mid-gap count across the transition") {
  const ModelSpec ssh = builtin_model("ssh");
  for (double t : {0.5, 0.8, 0.94}) CHECK(obc_report(ssh, 40, at(t, 0.4)).midgap.empty());
  // With kappa = 5 the edge pair at N = 40 is isolated only from t of about 1.3; closer
  // to t = 1 the bulk gap 2|t - d| is under five median spacings.
  for (double t : {1.3, 1.6, 2.0}) CHECK(obc_report(ssh, 40, at(t, 0.4)).midgap.size() == 2);
  CHECK_THROWS_AS(obc_report(ssh, 3, at(1.0, 0.4)), InvalidInput);
}

TEST_CASE("gap sweep minimum") {
  const GapSweep s = gap_vs_parameter(builtin_model("ssh"), 40, Axis{"t", 0.5, 1.5, 101}, at(0.0, 0.4), {}, 2);
  CHECK(s.samples[s.argmin].value == doctest::Approx(1.0).epsilon(1e-9));
}
