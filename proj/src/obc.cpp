#include "epclass/obc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "epclass/errors.hpp"

namespace epclass {

ObcReport obc_report(const ModelSpec& spec, int n_cells, const ParamPoint& p, const ObcOptions& options) {
  if (n_cells < 4) throw InvalidInput("obc_report(): n_cells must be >= 4");
  const CMatrix h = obc_hamiltonian(spec, n_cells, p);
  const EigenSystem es = eig_full(h, options.eig_tol);
  const Eigen::Index n = es.values.size();
  const int b = spec.orbitals;

  ObcReport r;
  r.n_cells = n_cells;
  r.orbitals = b;
  r.energies = es.values;
  r.rigidities.resize(static_cast<std::size_t>(n));
  r.edge_weight.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    r.rigidities[static_cast<std::size_t>(i)] = std::abs(phase_rigidity(es.left.col(i), es.right.col(i)));
    const CVector psi = es.right.col(i).normalized();
    r.edge_weight[static_cast<std::size_t>(i)] = psi.head(b).squaredNorm() + psi.tail(b).squaredNorm();
    r.max_imag = std::max(r.max_imag, std::abs(es.values[i].imag()));
  }

  const Eigen::Index m = n - 1;
  std::vector<double> spacing(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) spacing[static_cast<std::size_t>(i)] = es.values[i + 1].real() - es.values[i].real();
  std::vector<double> sorted = spacing;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  r.median_spacing = sorted[sorted.size() / 2];
  const double cut = options.kappa * r.median_spacing;
  auto big = [&](Eigen::Index i) { return spacing[static_cast<std::size_t>(i)] > cut; };

  const double mid = 0.5 * static_cast<double>(n - 1);
  const auto lower = static_cast<Eigen::Index>(std::ceil(mid)) - 1;
  const auto upper = static_cast<Eigen::Index>(std::floor(mid));
  Eigen::Index a = -1;
  for (Eigen::Index i = std::min(lower, m - 1); i >= 0; --i)
    if (big(i)) {
      a = i;
      break;
    }
  Eigen::Index c = -1;
  for (Eigen::Index i = std::max<Eigen::Index>(upper, 0); i < m; ++i)
    if (big(i)) {
      c = i;
      break;
    }
  // States a+1 .. c sit between two isolating spacings.
  if (a >= 0 && c > a && c - a <= 2 * b) {
    for (Eigen::Index i = a + 1; i <= c; ++i) r.midgap.push_back(static_cast<int>(i));
    r.gap = es.values[c + 1].real() - es.values[a].real();
    r.gap_open = true;
  } else {
    double widest = 0.0;
    for (Eigen::Index i = upper - 1; i <= upper + 1; ++i)
      if (i >= 0 && i < m) widest = std::max(widest, spacing[static_cast<std::size_t>(i)]);
    r.gap = widest;
    r.gap_open = widest > cut;
  }
  return r;
}

GapSweep gap_vs_parameter(const ModelSpec& spec, int n_cells, const Axis& axis, const ParamPoint& fixed,
                          const ObcOptions& options, int workers) {
  if (!spec.has_parameter(axis.param))
    throw SemanticError("model '" + spec.name + "' has no parameter '" + axis.param + "'");
  if (axis.n < 1) throw InvalidInput("gap_vs_parameter(): axis needs at least one point");
  GapSweep out;
  out.samples.resize(static_cast<std::size_t>(axis.n));
  parallel_for(out.samples.size(), workers, [&](std::size_t i) {
    const double v = axis.value(static_cast<int>(i));
    const ObcReport r = obc_report(spec, n_cells, fixed.with(axis.param, v), options);
    out.samples[i] = {v, r.gap, r.gap_open, static_cast<int>(r.midgap.size())};
  });
  for (std::size_t i = 1; i < out.samples.size(); ++i)
    if (out.samples[i].gap < out.samples[out.argmin].gap) out.argmin = i;
  return out;
}

}  // namespace epclass
