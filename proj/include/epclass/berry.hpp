#pragma once

#include <vector>

#include "epclass/flow.hpp"
#include "epclass/linalg.hpp"
#include "epclass/permutation.hpp"

namespace epclass {

enum class Quantized { Zero, Pi, Unquantized };

const char* to_string(Quantized q);

/// Biorthogonal Berry phase of one permutation cycle.
struct CyclePhase {
  std::vector<int> cycle;
  /// Real part in [0, 2 pi); imaginary part is the amplification exponent.
  cplx gamma{0.0, 0.0};
  Quantized quantized = Quantized::Unquantized;
  /// Circular distance of Re(gamma) to the nearest of {0, pi}.
  double deviation = 0.0;
};

struct PhaseOptions {
  double quant_tol = 1e-2;
  int max_refine_depth = 20;
};

/// Nearest of {0, pi} on the circle when Re(gamma) lies within tol of it.
Quantized quantize_phase(cplx gamma, double tol = 1e-2);

/// Circular distance of Re(gamma) to the nearest of {0, pi}.
double phase_deviation(cplx gamma);

/// Discrete Wilson loop gamma = i sum_j log(<phi_j|psi_{j+1}> / <phi_j|psi_j>)
/// following the cycle through all of its traversals. Steps whose
/// gauge-invariant overlap phase reaches pi/2 are bisected; BranchAmbiguity
/// when that does not help within max_refine_depth. InvalidCycle when `cycle`
/// is not a cycle of the flow's permutation.
CyclePhase cycle_phase(const SpectralFlow& flow, const std::vector<int>& cycle, const PhaseOptions& options = {});

/// One CyclePhase per cycle of `perm` (the flow's permutation), in
/// Permutation::cycles() order.
std::vector<CyclePhase> cycle_phases(const SpectralFlow& flow, const Permutation& perm,
                                     const PhaseOptions& options = {});

}  // namespace epclass
