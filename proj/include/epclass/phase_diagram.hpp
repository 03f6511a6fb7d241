#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "epclass/model.hpp"
#include "epclass/pipeline.hpp"

namespace epclass {

/// Uniform axis over a model parameter, endpoints included.
struct Axis {
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int n = 2;

  double value(int i) const { return n > 1 ? from + (to - from) * i / (n - 1) : from; }
};

/// Parses "t=0:3:300".
Axis parse_axis(const std::string& text);

struct ScanOptions {
  /// Brillouin-zone samples per cell.
  int samples = 256;
  ClassifyOptions classify;
  int workers = 1;
};

/// Midpoint of a grid edge whose two cells carry different labels.
struct BoundaryPoint {
  double x = 0.0;
  double y = 0.0;
  int i1 = 0;
  int i2 = 0;
  /// True for an edge between (i1, i2) and (i1 + 1, i2); false for (i1, i2 + 1).
  bool along_first = true;
  std::string from;
  std::string to;
};

struct PhaseDiagram {
  Axis axis1;
  Axis axis2;
  /// labels[i2 * axis1.n + i1]: a signature, "Critical" or "Failed".
  std::vector<std::string> labels;
  std::vector<BoundaryPoint> boundaries;

  const std::string& label(int i1, int i2) const {
    return labels[static_cast<std::size_t>(i2) * static_cast<std::size_t>(axis1.n) + static_cast<std::size_t>(i1)];
  }
};

inline const char* kCriticalLabel = "Critical";
inline const char* kFailedLabel = "Failed";

/// Runs fn(0..count-1) on `workers` threads; each index exactly once.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// All 4-neighbour label transitions, in grid order.
std::vector<BoundaryPoint> detect_boundaries(const PhaseDiagram& diagram);

/// Classifies the Brillouin-zone loop at every grid point. The result does not
/// depend on the worker count.
PhaseDiagram scan(const ModelSpec& spec, const Axis& axis1, const Axis& axis2, const ParamPoint& fixed,
                  const ScanOptions& options = {});

}  // namespace epclass
