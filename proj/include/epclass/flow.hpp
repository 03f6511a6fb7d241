#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "epclass/linalg.hpp"
#include "epclass/loop.hpp"
#include "epclass/model.hpp"
#include "epclass/permutation.hpp"

namespace epclass {

/// Eigen data at one loop position, in biorthonormal gauge.
struct Snapshot {
  double lambda = 0.0;
  CVector values;
  CMatrix right;
  CMatrix left;
  /// Smallest pairwise eigenvalue gap divided by the loop scale.
  double rel_gap = 0.0;
};

/// Evaluates snapshots of a model along a loop. For momentum-only loops the
/// hopping amplitudes are evaluated once. Gaps are measured relative to the
/// largest ||H||_F over the loop samples.
class SnapshotEvaluator {
 public:
  SnapshotEvaluator(const ModelSpec& spec, const LoopPath& loop, double eig_tol = kDefaultEigTol);
  Snapshot operator()(double lambda) const;
  double scale() const noexcept { return scale_; }

 private:
  const ModelSpec& spec_;
  const LoopPath& loop_;
  double eig_tol_;
  std::optional<BlochEvaluator> fixed_;
  double scale_ = 1.0;

  CMatrix matrix(double lambda) const;
};

struct TrackOptions {
  /// Relative gap under which an unresolved step is declared to touch an EP.
  double tol = 1e-6;
  int max_refine_depth = 20;
  double eig_tol = kDefaultEigTol;
  /// Relative endpoint-vs-start eigenvalue residual allowed at closure.
  double closure_tol = 1e-8;
};

/// Strands of eigen data along a loop. nodes[j] holds strand s in column s;
/// nodes.front() is the start (strand order = eigenvalue order there),
/// nodes.back() the endpoint at lambda = 1.
struct SpectralFlow {
  ModelSpec family;
  LoopPath loop;
  TrackOptions options;
  std::vector<Snapshot> nodes;
  double min_gap = std::numeric_limits<double>::infinity();
  /// Number of bisection points inserted beyond the loop samples.
  std::size_t refinements = 0;

  int strands() const { return nodes.empty() ? 0 : static_cast<int>(nodes.front().values.size()); }
};

/// Minimal-total-cost matching between two equally sized sets.
struct Assignment {
  /// map[i] = index in `next` paired with prev[i].
  std::vector<int> map;
  double best = 0.0;
  double second = std::numeric_limits<double>::infinity();
  /// (second - best) / best; +inf when best is 0 and second is not.
  double margin = std::numeric_limits<double>::infinity();
};

/// Exact assignment over all permutations for N <= 8 on a cost matrix.
Assignment assign_min_cost(const Eigen::MatrixXd& cost);

/// Eigenvalue-distance pairing between consecutive samples.
Assignment pair_step(const CVector& prev, const CVector& next);

/// Adaptive continuation of every eigenpair around the loop.
/// Throws LoopTouchesEP when a step stays ambiguous after max_refine_depth
/// bisections and the local relative gap is below options.tol, or when a
/// sample sits on a degeneracy.
SpectralFlow track_loop(const ModelSpec& family, const LoopPath& loop, const TrackOptions& options = {});

/// images[i] = start strand closest to strand i's endpoint. Throws
/// EndpointMismatch when the closure residual exceeds options.closure_tol.
Permutation extract_permutation(const SpectralFlow& flow);

}  // namespace epclass
