#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "epclass/builtin_models.hpp"
#include "epclass/errors.hpp"
#include "epclass/flow.hpp"

using namespace epclass;

namespace {

const ModelSpec& sqrt_ep() {
  static const ModelSpec spec = builtin_model("sqrt-ep");
  return spec;
}

const ModelSpec& ssh() {
  static const ModelSpec spec = builtin_model("ssh");
  return spec;
}

Permutation flow_permutation(const ModelSpec& spec, const LoopPath& loop) {
  return extract_permutation(track_loop(spec, loop));
}

}  // namespace

TEST_CASE("pair_step nearest matching") {
  CVector prev(2), next(2);
  prev << 1.0, 2.0;
  next << 2.1, 1.05;
  const Assignment a = pair_step(prev, next);
  CHECK(a.map == std::vector<int>{1, 0});
  CHECK(a.margin > 1.0);
}

TEST_CASE("pair_step ambiguity") {
  CVector prev(2), next(2);
  prev << 1.0, 1.0 + 1e-9;
  next << 1.0 + 5e-10, 1.0 + 5e-10;
  CHECK(pair_step(prev, next).margin < 1e-6);
}

TEST_CASE("pair_step equals exhaustive search") {
  std::mt19937 rng(2024);
  std::normal_distribution<double> g;
  for (int n : {3, 4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      CVector a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = cplx(g(rng), g(rng));
        b[i] = cplx(g(rng), g(rng));
      }
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      double best = 1e300;
      std::vector<int> best_map;
      do {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::abs(a[i] - b[p[static_cast<std::size_t>(i)]]);
        if (s < best) {
          best = s;
          best_map = p;
        }
      } while (std::next_permutation(p.begin(), p.end()));
      const Assignment as = pair_step(a, b);
      CHECK(as.best == doctest::Approx(best).epsilon(1e-12));
      CHECK(as.map == best_map);
    }
  }
}

TEST_CASE("sqrt-ep strands around the origin") {
  const LoopPath around = circle_loop({}, "alpha", "beta", 0.0, 0.0, 1.0, 64);
  const SpectralFlow flow = track_loop(sqrt_ep(), around);
  CHECK(flow.refinements == 0);
  for (const auto& node : flow.nodes) {
    const double phi = 2.0 * 3.141592653589793 * node.lambda;
    const cplx root = std::sqrt(std::polar(1.0, phi));
    for (int s = 0; s < 2; ++s) CHECK(std::min(std::abs(node.values[s] - root), std::abs(node.values[s] + root)) < 1e-12);
  }
  const Permutation perm = extract_permutation(flow);
  CHECK(perm == Permutation{{1, 0}});
  CHECK(flow_permutation(sqrt_ep(), concatenate(around, 2)) == Permutation::identity(2));
  CHECK(flow_permutation(sqrt_ep(), reversed(around)) == perm.inverse());
}

TEST_CASE("sqrt-ep loop without the origin") {
  const LoopPath away = circle_loop({}, "alpha", "beta", 3.0, 0.0, 1.0, 64);
  CHECK(flow_permutation(sqrt_ep(), away) == Permutation::identity(2));
}

TEST_CASE("SSH Brillouin-zone loops") {
  const SpectralFlow trivial = track_loop(ssh(), bz_loop(ParamPoint{}.with("t", 0.5).with("theta", 0.4), 512));
  CHECK(extract_permutation(trivial) == Permutation::identity(2));
  CHECK(trivial.min_gap > 0.1);
  const Permutation swap = flow_permutation(ssh(), bz_loop(ParamPoint{}.with("t", 1.0).with("theta", 0.4), 512));
  CHECK(swap == Permutation{{1, 0}});
  CHECK(flow_permutation(ssh(), bz_loop(ParamPoint{}.with("t", 1.0).with("theta", 0.4), 1024)) == swap);
}

TEST_CASE("loop through a Dirac point") {
  CHECK_THROWS_AS(track_loop(ssh(), bz_loop(ParamPoint{}.with("t", 1.0).with("theta", 0.0), 512)), LoopTouchesEP);
  CHECK_THROWS_AS(track_loop(ssh(), bz_loop(ParamPoint{}.with("t", 1.0).with("theta", 0.0), 500)), LoopTouchesEP);
}

TEST_CASE("three-cycle closes after its order") {
  const ModelSpec tb = builtin_model("three-band");
  const LoopPath loop = bz_loop(ParamPoint{}.with("t", 1.0).with("theta", 0.4), 256);
  const Permutation p = flow_permutation(tb, loop);
  CHECK(p.order() == 3);
  CHECK(flow_permutation(tb, concatenate(loop, p.order())) == Permutation::identity(3));
  CHECK(flow_permutation(tb, reversed(loop)) == p.inverse());
}

TEST_CASE("endpoint mismatch") {
  SpectralFlow flow = track_loop(ssh(), bz_loop(ParamPoint{}.with("t", 0.5).with("theta", 0.4), 64));
  flow.nodes.back().values[0] += 0.1;
  CHECK_THROWS_AS(extract_permutation(flow), EndpointMismatch);
}
