#include "epclass/ep_locator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

/// det(lambda I - a) = sum_j c[j] lambda^j with c[n] = 1.
std::vector<cplx> characteristic_coefficients(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1.0;
  CMatrix m = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidInput("malformed number '" + s + "' in region");
  return v;
}

double fold_k(double k) {
  double r = std::fmod(k, kTau);
  if (r < 0.0) r += kTau;
  if (r >= kTau) r = 0.0;
  return r;
}

class Solver {
 public:
  Solver(const ModelSpec& spec, const Region& region, const ParamPoint& fixed)
      : spec_(spec), region_(region), fixed_(fixed) {}

  ParamPoint point(double x, double y) const { return fixed_.with(region_.p1, x).with(region_.p2, y); }
  cplx disc(double x, double y) const { return discriminant(spec_, point(x, y)); }

  /// Levenberg-Marquardt on (Re disc, Im disc); returns final |disc|.
  double refine(double& x, double& y, double tol, int max_iter) const {
    cplx f = disc(x, y);
    double fn = std::abs(f);
    double mu = -1.0;
    int polish = 0;
    for (int it = 0; it < max_iter; ++it) {
      if (fn <= tol && ++polish > 3) break;
      const double hx = 1e-7 * std::max(1.0, std::abs(x));
      const double hy = 1e-7 * std::max(1.0, std::abs(y));
      const cplx dx = (disc(x + hx, y) - disc(x - hx, y)) / (2.0 * hx);
      const cplx dy = (disc(x, y + hy) - disc(x, y - hy)) / (2.0 * hy);
      Eigen::Matrix2d j;
      j << dx.real(), dy.real(), dx.imag(), dy.imag();
      const Eigen::Vector2d r(f.real(), f.imag());
      const Eigen::Matrix2d jtj = j.transpose() * j;
      const Eigen::Vector2d g = j.transpose() * r;
      if (mu < 0.0) mu = 1e-6 * std::max(jtj.diagonal().maxCoeff(), 1e-300);
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        Eigen::Matrix2d a = jtj;
        a.diagonal().array() += mu;
        const Eigen::Vector2d step = a.ldlt().solve(-g);
        if (!step.allFinite()) {
          mu *= 10.0;
          continue;
        }
        const double nx = x + step[0];
        const double ny = y + step[1];
        const cplx nf = disc(nx, ny);
        if (std::abs(nf) < fn) {
          x = nx;
          y = ny;
          f = nf;
          fn = std::abs(nf);
          mu = std::max(mu / 3.0, 1e-300);
          improved = true;
          break;
        }
        mu *= 4.0;
      }
      if (!improved) break;
    }
    return fn;
  }

 private:
  const ModelSpec& spec_;
  const Region& region_;
  const ParamPoint& fixed_;
};

}  // namespace

cplx matrix_discriminant(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  if (n != h.cols() || n == 0) throw InvalidInput("matrix_discriminant(): matrix must be square and non-empty");
  if (n == 1) return 1.0;
  if (n == 2) {
    const cplx tr = h.trace();
    return tr * tr - 4.0 * h.determinant();
  }
  if (n == 3) {
    const cplx tr = h.trace();
    const cplx b = -tr;
    const cplx c = 0.5 * (tr * tr - (h * h).trace());
    const cplx d = -h.determinant();
    return 18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c - 27.0 * d * d;
  }
  const auto p = characteristic_coefficients(h);
  const Eigen::Index size = 2 * n - 1;
  CMatrix syl = CMatrix::Zero(size, size);
  for (Eigen::Index r = 0; r < n - 1; ++r)
    for (Eigen::Index j = 0; j <= n; ++j) syl(r, r + j) = p[static_cast<std::size_t>(n - j)];
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index power = n - j;
      syl(n - 1 + r, r + j) = static_cast<double>(power) * p[static_cast<std::size_t>(power)];
    }
  const cplx res = syl.partialPivLu().determinant();
  const bool negate = ((n * (n - 1) / 2) % 2) == 1;
  return negate ? -res : res;
}

cplx discriminant(const ModelSpec& spec, const ParamPoint& p) {
  const cplx d = matrix_discriminant(family_matrix(spec, p));
  if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) throw EvalError("discriminant is not finite");
  return d;
}

const char* to_string(DegeneracyKind k) { return k == DegeneracyKind::EP ? "EP" : "DiabolicPoint"; }

Region parse_region(const std::string& text) {
  Region r;
  std::stringstream ss(text);
  std::vector<std::string> parts;
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 2) throw InvalidInput("region syntax is name=from:to,name=from:to");
  for (int i = 0; i < 2; ++i) {
    const std::string& s = parts[static_cast<std::size_t>(i)];
    const auto eq = s.find('=');
    const auto colon = s.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw InvalidInput("region axis '" + s + "' must read name=from:to");
    const std::string name = s.substr(0, eq);
    const double from = parse_number(s.substr(eq + 1, colon - eq - 1));
    const double to = parse_number(s.substr(colon + 1));
    if (!(to > from)) throw InvalidInput("region axis '" + name + "' is empty");
    if (i == 0) {
      r.p1 = name;
      r.from1 = from;
      r.to1 = to;
    } else {
      r.p2 = name;
      r.from2 = from;
      r.to2 = to;
    }
  }
  if (r.p1 == r.p2) throw InvalidInput("region axes must differ");
  return r;
}

LocateResult locate_eps(const ModelSpec& spec, const Region& region, const ParamPoint& fixed,
                        const LocateOptions& options) {
  if (options.n1 < 16 || options.n2 < 16) throw InvalidInput("locate_eps(): grid must be at least 16x16");
  if (!(region.to1 > region.from1) || !(region.to2 > region.from2) || !std::isfinite(region.to1 - region.from1) ||
      !std::isfinite(region.to2 - region.from2))
    throw InvalidInput("locate_eps(): region must be a finite non-empty box");
  for (const auto* name : {&region.p1, &region.p2})
    if (*name != "k" && !spec.has_parameter(*name))
      throw SemanticError("model '" + spec.name + "' has no parameter '" + *name + "'");

  Solver solver(spec, region, fixed);
  const int n1 = options.n1;
  const int n2 = options.n2;
  auto c1 = [&](int i) { return region.from1 + (region.to1 - region.from1) * i / (n1 - 1); };
  auto c2 = [&](int j) { return region.from2 + (region.to2 - region.from2) * j / (n2 - 1); };
  Eigen::MatrixXd mag(n1, n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) mag(i, j) = std::abs(solver.disc(c1(i), c2(j)));

  std::vector<double> flat(mag.data(), mag.data() + mag.size());
  std::nth_element(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(flat.size() / 2), flat.end());
  const double median = flat[flat.size() / 2];

  struct Seed {
    double value;
    int i, j;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double v = mag(i, j);
      if (v > median) continue;
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int a = i + di;
          const int b = j + dj;
          if ((di || dj) && a >= 0 && a < n1 && b >= 0 && b < n2 && mag(a, b) < v) {
            minimum = false;
            break;
          }
        }
      if (minimum) seeds.push_back({v, i, j});
    }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    return a.value != b.value ? a.value < b.value : (a.i != b.i ? a.i < b.i : a.j < b.j);
  });

  LocateResult result;
  const double slack1 = 1e-9 * std::max(1.0, region.to1 - region.from1);
  const double slack2 = 1e-9 * std::max(1.0, region.to2 - region.from2);
  const bool k1 = region.p1 == "k";
  const bool k2 = region.p2 == "k";
  for (const auto& seed : seeds) {
    double x = c1(seed.i);
    double y = c2(seed.j);
    const CMatrix h0 = family_matrix(spec, solver.point(x, y));
    const double n = static_cast<double>(h0.rows());
    const double scale = std::pow(std::max(1.0, h0.norm()), n * (n - 1.0));
    const double residual = solver.refine(x, y, options.tol * scale, options.max_iterations);
    if (!(residual <= options.tol * scale)) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "seed (" << c1(seed.i) << ", " << c2(seed.j) << ") did not converge (|disc| = " << residual << ")";
      result.warnings.push_back(msg.str());
      continue;
    }
    if (k1) x = fold_k(x);
    if (k2) y = fold_k(y);
    const bool inside1 = k1 ? true : (x >= region.from1 - slack1 && x <= region.to1 + slack1);
    const bool inside2 = k2 ? true : (y >= region.from2 - slack2 && y <= region.to2 + slack2);
    if (!inside1 || !inside2) continue;
    const bool duplicate = std::any_of(result.eps.begin(), result.eps.end(), [&](const EPLocation& e) {
      double d1 = std::abs(e.coord1 - x);
      double d2 = std::abs(e.coord2 - y);
      if (k1) d1 = std::min(d1, kTau - d1);
      if (k2) d2 = std::min(d2, kTau - d2);
      return d1 <= options.dedup_tol && d2 <= options.dedup_tol;
    });
    if (duplicate) continue;

    EPLocation ep;
    ep.coord1 = x;
    ep.coord2 = y;
    ep.point = solver.point(x, y);
    ep.disc_residual = residual;
    const CMatrix h = family_matrix(spec, ep.point);
    const EigenSystem es = eig_full(h);
    const Eigen::Index dim = es.values.size();
    Eigen::Index bi = 0, bj = std::min<Eigen::Index>(1, dim - 1);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < dim; ++a)
      for (Eigen::Index b = a + 1; b < dim; ++b) {
        const double g = std::abs(es.values[a] - es.values[b]);
        if (g < best) {
          best = g;
          bi = a;
          bj = b;
        }
      }
    ep.gap = dim > 1 ? best : 0.0;
    ep.coalescence = 0.5 * (std::abs(phase_rigidity(es.left.col(bi), es.right.col(bi))) +
                            std::abs(phase_rigidity(es.left.col(bj), es.right.col(bj))));
    ep.kind = ep.coalescence <= options.coalescence_threshold ? DegeneracyKind::EP : DegeneracyKind::DiabolicPoint;
    const cplx centre = 0.5 * (es.values[bi] + es.values[bj]);
    const double radius = std::max(1e3 * ep.gap, 1e-6 * std::max(1.0, h.norm()));
    int cluster = 0;
    for (Eigen::Index a = 0; a < dim; ++a)
      if (std::abs(es.values[a] - centre) <= radius) ++cluster;
    if (cluster > 2) {
      ep.order = cluster;
      ep.higher_order = true;
      std::ostringstream msg;
      msg.precision(6);
      msg << "order>2 unverified at (" << x << ", " << y << ")";
      result.warnings.push_back(msg.str());
    }
    result.eps.push_back(std::move(ep));
  }
  std::sort(result.eps.begin(), result.eps.end(), [](const EPLocation& a, const EPLocation& b) {
    return a.coord1 != b.coord1 ? a.coord1 < b.coord1 : a.coord2 < b.coord2;
  });
  return result;
}

}  // namespace epclass
