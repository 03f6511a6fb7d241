#include <doctest.h>

#include <cmath>
#include <random>

#include "epclass/berry.hpp"
#include "epclass/builtin_models.hpp"
#include "epclass/errors.hpp"

using namespace epclass;

namespace {

constexpr double kPi = 3.141592653589793;

double circular(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}

std::vector<CyclePhase> phases_of(const ModelSpec& spec, const LoopPath& loop) {
  const SpectralFlow flow = track_loop(spec, loop);
  return cycle_phases(flow, extract_permutation(flow));
}

ParamPoint ssh_point(double t) { return ParamPoint{}.with("t", t).with("theta", 0.4); }

}  // namespace

TEST_CASE("quantize_phase") {
  CHECK(quantize_phase(cplx(3.14159, 0.0001)) == Quantized::Pi);
  CHECK(quantize_phase(cplx(6.2832, 0.0)) == Quantized::Zero);
  CHECK(quantize_phase(cplx(1.5708, 0.0)) == Quantized::Unquantized);
  CHECK(quantize_phase(cplx(-0.005, 0.0)) == Quantized::Zero);
  CHECK(phase_deviation(cplx(3.0, 0.0)) == doctest::Approx(kPi - 3.0));
}

TEST_CASE("SSH Zak phases") {
  const ModelSpec ssh = builtin_model("ssh");
  for (const auto& ph : phases_of(ssh, bz_loop(ssh_point(0.5), 512))) {
    CHECK(circular(ph.gamma.real(), 0.0) < 1e-3);
    CHECK(ph.quantized == Quantized::Zero);
  }
  for (const auto& ph : phases_of(ssh, bz_loop(ssh_point(2.0), 512))) {
    CHECK(circular(ph.gamma.real(), kPi) < 1e-3);
    CHECK(ph.quantized == Quantized::Pi);
  }
  const auto two = phases_of(ssh, bz_loop(ssh_point(1.0), 512));
  REQUIRE(two.size() == 1);
  CHECK(two[0].cycle.size() == 2);
  CHECK(circular(two[0].gamma.real(), kPi) < 1e-3);
}

TEST_CASE("double encircling of a square-root EP") {
  const ModelSpec spec = builtin_model("sqrt-ep");
  const auto ph = phases_of(spec, concatenate(circle_loop({}, "alpha", "beta", 0.0, 0.0, 1.0, 128), 2));
  REQUIRE(ph.size() == 2);
  for (const auto& p : ph) {
    CHECK(p.cycle.size() == 1);
    CHECK(circular(p.gamma.real(), kPi) < 1e-3);
  }
}

TEST_CASE("gauge invariance") {
  const ModelSpec tb = builtin_model("three-band");
  SpectralFlow flow = track_loop(tb, bz_loop(ParamPoint{}.with("t", 0.8).with("theta", 0.1), 256));
  const Permutation perm = extract_permutation(flow);
  const auto before = cycle_phases(flow, perm);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> mag(0.2, 5.0), arg(-kPi, kPi);
  for (auto& node : flow.nodes)
    for (Eigen::Index s = 0; s < node.values.size(); ++s) {
      node.right.col(s) *= std::polar(mag(rng), arg(rng));
      node.left.col(s) *= std::polar(mag(rng), arg(rng));
    }
  const auto after = cycle_phases(flow, perm);
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(circular(before[i].gamma.real(), after[i].gamma.real()) < 1e-10);
}

TEST_CASE("orientation reversal negates the phase") {
  const ModelSpec spec = builtin_model("sqrt-ep");
  const LoopPath loop = circle_loop({}, "alpha", "beta", 0.3, 0.2, 1.0, 128);
  const auto fwd = phases_of(spec, loop);
  const auto back = phases_of(spec, reversed(loop));
  REQUIRE(fwd.size() == back.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) CHECK(circular(fwd[i].gamma.real(), -back[i].gamma.real()) < 1e-8);
}

TEST_CASE("cycle validation") {
  const ModelSpec ssh = builtin_model("ssh");
  const SpectralFlow flow = track_loop(ssh, bz_loop(ssh_point(1.0), 128));
  CHECK_THROWS_AS(cycle_phase(flow, {0}), InvalidCycle);
  CHECK_THROWS_AS(cycle_phase(flow, {}), InvalidCycle);
  CHECK_THROWS_AS(cycle_phase(flow, {0, 5}), InvalidCycle);
  CHECK(cycle_phase(flow, {1, 0}).cycle == std::vector<int>{0, 1});
}

TEST_CASE("resolution convergence") {
  const ModelSpec tb = builtin_model("three-band");
  const ParamPoint p = ParamPoint{}.with("t", 1.5).with("theta", 0.1);
  const SpectralFlow coarse = track_loop(tb, bz_loop(p, 256));
  const SpectralFlow fine = track_loop(tb, bz_loop(p, 512));
  REQUIRE(coarse.min_gap > 1e-2);
  const auto a = cycle_phases(coarse, extract_permutation(coarse));
  const auto b = cycle_phases(fine, extract_permutation(fine));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(circular(a[i].gamma.real(), b[i].gamma.real()) < 1e-4);
}
