#pragma once

#include <cstddef>
#include <vector>

#include "epclass/linalg.hpp"
#include "epclass/model.hpp"
#include "epclass/phase_diagram.hpp"

namespace epclass {

struct ObcOptions {
  /// Isolation factor over the median level spacing.
  double kappa = 5.0;
  double eig_tol = kDefaultEigTol;
};

/// Diagnostics of the open chain. States are indexed in order of increasing
/// real part (ties by imaginary part), 0-based.
struct ObcReport {
  int n_cells = 0;
  int orbitals = 0;
  CVector energies;
  std::vector<double> rigidities;
  /// States isolated inside the central gap.
  std::vector<int> midgap;
  /// Real-part width of the central gap, measured between the continua.
  double gap = 0.0;
  /// Whether the central spacing (or mid-gap cluster) is isolated by kappa.
  bool gap_open = false;
  std::vector<double> edge_weight;
  double median_spacing = 0.0;
  double max_imag = 0.0;
};

/// Diagonalizes the open chain and reports rigidities, mid-gap states, the
/// central gap and edge weights. n_cells must be >= 4.
ObcReport obc_report(const ModelSpec& spec, int n_cells, const ParamPoint& p, const ObcOptions& options = {});

struct GapSample {
  double value = 0.0;
  double gap = 0.0;
  bool gap_open = false;
  int midgap_count = 0;
};

struct GapSweep {
  std::vector<GapSample> samples;
  /// Index of the smallest gap (first on ties).
  std::size_t argmin = 0;
};

GapSweep gap_vs_parameter(const ModelSpec& spec, int n_cells, const Axis& axis, const ParamPoint& fixed,
                          const ObcOptions& options = {}, int workers = 1);

}  // namespace epclass
