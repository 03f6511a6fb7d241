#include "epclass/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

Snapshot reorder(Snapshot s, const std::vector<int>& map) {
  Snapshot out;
  out.lambda = s.lambda;
  out.rel_gap = s.rel_gap;
  const Eigen::Index n = s.values.size();
  out.values.resize(n);
  out.right.resize(s.right.rows(), n);
  out.left.resize(s.left.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = map[static_cast<std::size_t>(i)];
    out.values[i] = s.values[j];
    out.right.col(i) = s.right.col(j);
    out.left.col(i) = s.left.col(j);
  }
  return out;
}

Assignment overlap_assignment(const Snapshot& a, const Snapshot& b) {
  const Eigen::Index n = a.values.size();
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double na = a.right.col(i).norm();
      const double nb = b.right.col(j).norm();
      const double ov = std::abs(a.right.col(i).dot(b.right.col(j)));
      cost(i, j) = 1.0 - (na > 0 && nb > 0 ? ov / (na * nb) : 0.0);
    }
  return assign_min_cost(cost);
}

[[noreturn]] void touches(double lambda, double gap) {
  std::ostringstream msg;
  msg << "loop passes through a degeneracy near lambda=" << lambda << " (relative gap " << gap << ")";
  throw LoopTouchesEP(msg.str(), lambda, gap);
}

class Tracker {
 public:
  Tracker(SpectralFlow& flow, const SnapshotEvaluator& eval) : flow_(flow), eval_(eval) {}

  void push(Snapshot s) {
    if (s.rel_gap < flow_.options.tol) touches(s.lambda, s.rel_gap);
    flow_.min_gap = std::min(flow_.min_gap, s.rel_gap);
    flow_.nodes.push_back(std::move(s));
  }

  void advance(Snapshot b, int depth) {
    if (b.rel_gap < flow_.options.tol) touches(b.lambda, b.rel_gap);
    const Snapshot& a = flow_.nodes.back();
    Assignment as = pair_step(a.values, b.values);
    if (as.margin < 1.0) {
      if (depth < flow_.options.max_refine_depth) {
        Snapshot mid = eval_(0.5 * (a.lambda + b.lambda));
        ++flow_.refinements;
        advance(std::move(mid), depth + 1);
        advance(std::move(b), depth + 1);
        return;
      }
      const double local = std::min(a.rel_gap, b.rel_gap);
      if (local < flow_.options.tol) touches(b.lambda, local);
      if (as.margin < 0.1) as = overlap_assignment(a, b);
    }
    push(reorder(std::move(b), as.map));
  }

 private:
  SpectralFlow& flow_;
  const SnapshotEvaluator& eval_;
};

}  // namespace

SnapshotEvaluator::SnapshotEvaluator(const ModelSpec& spec, const LoopPath& loop, double eig_tol)
    : spec_(spec), loop_(loop), eig_tol_(eig_tol) {
  if (loop.momentum_only && loop.momentum) fixed_.emplace(spec, loop.base);
  double scale = 0.0;
  for (const double l : loop.lambda) scale = std::max(scale, matrix(l).norm());
  if (scale > 0.0 && std::isfinite(scale)) scale_ = scale;
}

CMatrix SnapshotEvaluator::matrix(double lambda) const {
  CMatrix h;
  if (fixed_) {
    fixed_->fill(loop_.momentum(lambda), h);
  } else {
    h = family_matrix(spec_, loop_.point(lambda));
  }
  return h;
}

Snapshot SnapshotEvaluator::operator()(double lambda) const {
  const CMatrix h = matrix(lambda);
  EigenSystem es = eig_full(h, eig_tol_);
  apply_biorthonormal_gauge(es);
  Snapshot s;
  s.lambda = lambda;
  s.rel_gap = min_pairwise_gap(es.values) / scale_;
  s.values = std::move(es.values);
  s.right = std::move(es.right);
  s.left = std::move(es.left);
  return s;
}

Assignment assign_min_cost(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw InvalidInput("assign_min_cost(): cost matrix must be square");
  if (n > 8) throw InvalidInput("assign_min_cost(): at most 8 states are supported");
  Assignment out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  out.best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(i, p[static_cast<std::size_t>(i)]);
    if (total < out.best) {
      out.second = out.best;
      out.best = total;
      out.map = p;
    } else if (total < out.second) {
      out.second = total;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  if (out.best > 0.0) {
    out.margin = (out.second - out.best) / out.best;
  } else {
    out.margin = out.second > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

Assignment pair_step(const CVector& prev, const CVector& next) {
  if (prev.size() != next.size()) throw InvalidInput("pair_step(): eigen sets differ in size");
  const Eigen::Index n = prev.size();
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cost(i, j) = std::abs(prev[i] - next[j]);
  return assign_min_cost(cost);
}

SpectralFlow track_loop(const ModelSpec& family, const LoopPath& loop, const TrackOptions& options) {
  validate_loop(loop);
  SpectralFlow flow{family, loop, options, {}};
  SnapshotEvaluator eval(flow.family, flow.loop, options.eig_tol);
  Tracker tracker(flow, eval);
  tracker.push(eval(flow.loop.lambda.front()));
  for (std::size_t i = 1; i < flow.loop.lambda.size(); ++i) tracker.advance(eval(flow.loop.lambda[i]), 0);
  return flow;
}

Permutation extract_permutation(const SpectralFlow& flow) {
  if (flow.nodes.size() < 2) throw InvalidInput("extract_permutation(): flow is empty");
  const Snapshot& start = flow.nodes.front();
  const Snapshot& end = flow.nodes.back();
  const Assignment as = pair_step(end.values, start.values);
  Permutation perm{as.map};
  if (!perm.is_bijection()) throw EndpointMismatch("endpoint matching is not a bijection");
  double scale = start.values.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) scale = 1.0;
  double residual = 0.0;
  for (Eigen::Index i = 0; i < end.values.size(); ++i)
    residual = std::max(residual, std::abs(end.values[i] - start.values[as.map[static_cast<std::size_t>(i)]]));
  residual /= scale;
  if (residual > flow.options.closure_tol) {
    std::ostringstream msg;
    msg << "strand endpoints miss the start spectrum by " << residual;
    throw EndpointMismatch(msg.str());
  }
  return perm;
}

}  // namespace epclass
