#include "epclass/berry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

constexpr double kPi = std::numbers::pi;

struct State {
  double lambda;
  cplx value;
  CVector right;
  CVector left;
};

State state_of(const Snapshot& s, int strand, double lambda) {
  return {lambda, s.values[strand], s.right.col(strand), s.left.col(strand)};
}

class WilsonWalker {
 public:
  WilsonWalker(const SpectralFlow& flow, const PhaseOptions& options)
      : options_(options), eval_(flow.family, flow.loop, flow.options.eig_tol) {}

  /// Accumulates sum log z over the step a -> b, bisecting when needed.
  cplx step(const State& a, const State& b, int depth) const {
    const cplx aa = a.left.dot(a.right);
    const cplx bb = b.left.dot(b.right);
    const cplx ab = a.left.dot(b.right);
    const cplx ba = b.left.dot(a.right);
    const cplx q = (ab * ba) / (aa * bb);
    if (std::abs(std::log(q)) < 0.5 * kPi && std::isfinite(std::abs(q))) return std::log(ab / aa);
    if (depth >= options_.max_refine_depth) {
      std::ostringstream msg;
      msg << "Wilson step between lambda=" << a.lambda << " and " << b.lambda << " stays ambiguous";
      throw BranchAmbiguity(msg.str());
    }
    const double mid = 0.5 * (a.lambda + b.lambda);
    const Snapshot s = eval_(mid);
    const cplx target = 0.5 * (a.value + b.value);
    Eigen::Index best = 0;
    (s.values.array() - target).abs().minCoeff(&best);
    const State m = state_of(s, static_cast<int>(best), mid);
    return step(a, m, depth + 1) + step(m, b, depth + 1);
  }

 private:
  const PhaseOptions& options_;
  SnapshotEvaluator eval_;
};

double wrap_two_pi(double x) {
  double r = std::fmod(x, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

std::vector<int> rotate_to_min(std::vector<int> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

CyclePhase phase_for(const SpectralFlow& flow, const Permutation& perm, const std::vector<int>& cycle,
                     const PhaseOptions& options) {
  const int n = perm.size();
  if (cycle.empty()) throw InvalidCycle("empty cycle");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int s = cycle[i];
    if (s < 0 || s >= n) throw InvalidCycle("cycle index out of range");
    if (perm.images[static_cast<std::size_t>(s)] != cycle[(i + 1) % cycle.size()])
      throw InvalidCycle("strand " + std::to_string(s) + " is not followed by its image in the cycle");
  }
  if (flow.nodes.size() < 3) throw InvalidInput("cycle_phase(): flow has too few nodes");

  WilsonWalker walker(flow, options);
  const std::size_t last = flow.nodes.size() - 1;
  cplx total{0.0, 0.0};
  for (std::size_t c = 0; c < cycle.size(); ++c) {
    const int s = cycle[c];
    const int next = cycle[(c + 1) % cycle.size()];
    for (std::size_t j = 0; j + 2 <= last; ++j) {
      const Snapshot& a = flow.nodes[j];
      const Snapshot& b = flow.nodes[j + 1];
      total += walker.step(state_of(a, s, a.lambda), state_of(b, s, b.lambda), 0);
    }
    const Snapshot& a = flow.nodes[last - 1];
    total += walker.step(state_of(a, s, a.lambda), state_of(flow.nodes.front(), next, 1.0), 0);
  }

  CyclePhase out;
  out.cycle = rotate_to_min(cycle);
  out.gamma = cplx(wrap_two_pi(-total.imag()), total.real());
  out.quantized = quantize_phase(out.gamma, options.quant_tol);
  out.deviation = phase_deviation(out.gamma);
  return out;
}

}  // namespace

const char* to_string(Quantized q) {
  switch (q) {
    case Quantized::Zero:
      return "0";
    case Quantized::Pi:
      return "pi";
    case Quantized::Unquantized:
      break;
  }
  return "unquantized";
}

double phase_deviation(cplx gamma) {
  const double r = wrap_two_pi(gamma.real());
  const double to_zero = std::min(r, 2.0 * kPi - r);
  return std::min(to_zero, std::abs(r - kPi));
}

Quantized quantize_phase(cplx gamma, double tol) {
  const double r = wrap_two_pi(gamma.real());
  const double to_zero = std::min(r, 2.0 * kPi - r);
  const double to_pi = std::abs(r - kPi);
  if (to_zero <= to_pi) return to_zero <= tol ? Quantized::Zero : Quantized::Unquantized;
  return to_pi <= tol ? Quantized::Pi : Quantized::Unquantized;
}

CyclePhase cycle_phase(const SpectralFlow& flow, const std::vector<int>& cycle, const PhaseOptions& options) {
  return phase_for(flow, extract_permutation(flow), cycle, options);
}

std::vector<CyclePhase> cycle_phases(const SpectralFlow& flow, const Permutation& perm, const PhaseOptions& options) {
  std::vector<CyclePhase> out;
  for (const auto& c : perm.cycles()) out.push_back(phase_for(flow, perm, c, options));
  return out;
}

}  // namespace epclass
