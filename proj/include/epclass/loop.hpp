#pragma once

#include <functional>
#include <string>
#include <vector>

#include "epclass/model.hpp"

namespace epclass {

/// Closed path through parameter space, sampled at `lambda` (0 = start,
/// 1 = end, equal to the start) with a continuous parameterization available
/// for adaptive refinement.
struct LoopPath {
  std::vector<double> lambda;
  std::function<ParamPoint(double)> point;
  /// When set, only the momentum varies along the loop and every point equals
  /// `base` with k = point(l).k.
  bool momentum_only = false;
  ParamPoint base;
  /// Momentum as a function of lambda; set together with momentum_only.
  std::function<double(double)> momentum;
  std::string description;

  ParamPoint at(double l) const { return point(l); }
  std::size_t intervals() const { return lambda.empty() ? 0 : lambda.size() - 1; }
  std::vector<ParamPoint> samples() const;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// k: 0 -> 2 pi at the fixed parameters, n intervals.
LoopPath bz_loop(const ParamPoint& fixed, int n);

/// Axis-aligned loop over `param` from `from` to `to`. Only the momentum can
/// close this way, so `param` must be "k" and to - from a nonzero multiple of 2 pi.
LoopPath axis_loop(const ParamPoint& fixed, const std::string& param, double from, double to, int n);

/// Counter-clockwise circle in the (p1, p2) plane.
LoopPath circle_loop(const ParamPoint& fixed, const std::string& p1, const std::string& p2, double cx, double cy,
                     double radius, int n);

/// Explicit polyline; the last point must repeat the first.
LoopPath polyline_loop(std::vector<ParamPoint> points);

/// The loop traversed `times` times in a row.
LoopPath concatenate(const LoopPath& loop, int times);

/// The loop traversed backwards.
LoopPath reversed(const LoopPath& loop);

/// Throws InvalidInput when the loop has fewer than 16 intervals, is not
/// monotone in lambda, or does not close.
void validate_loop(const LoopPath& loop);

/// Loop file: {"points": [...]} | {"param", "from", "to", "n", "fixed"} |
/// {"center": [x, y], "radius", "n", "params": [p1, p2], "fixed"}.
/// Circles default to the first two declared parameters of the model.
LoopPath parse_loop_spec(const std::string& text, const ModelSpec& spec, const ParamPoint& fixed);

/// Command-line loop syntax: "bz:N", "circle:cx,cy,r,N" or a path to a loop file.
LoopPath parse_loop_arg(const std::string& arg, const ModelSpec& spec, const ParamPoint& fixed);

}  // namespace epclass
