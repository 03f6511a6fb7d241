#include "epclass/phase_diagram.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>

#include "epclass/errors.hpp"
#include "epclass/loop.hpp"

namespace epclass {
namespace {

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidInput("malformed number '" + s + "' in axis");
  return v;
}

}  // namespace

Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos)
    throw InvalidInput("axis syntax is name=from:to:n, got '" + text + "'");
  Axis a;
  a.param = text.substr(0, eq);
  a.from = parse_number(text.substr(eq + 1, c1 - eq - 1));
  a.to = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const double n = parse_number(text.substr(c2 + 1));
  if (n < 1 || n != static_cast<int>(n)) throw InvalidInput("axis point count must be a positive integer");
  a.n = static_cast<int>(n);
  return a;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<BoundaryPoint> detect_boundaries(const PhaseDiagram& d) {
  std::vector<BoundaryPoint> out;
  const int n1 = d.axis1.n;
  const int n2 = d.axis2.n;
  for (int i2 = 0; i2 < n2; ++i2)
    for (int i1 = 0; i1 < n1; ++i1) {
      const std::string& here = d.label(i1, i2);
      if (i1 + 1 < n1 && d.label(i1 + 1, i2) != here) {
        out.push_back({0.5 * (d.axis1.value(i1) + d.axis1.value(i1 + 1)), d.axis2.value(i2), i1, i2, true, here,
                       d.label(i1 + 1, i2)});
      }
      if (i2 + 1 < n2 && d.label(i1, i2 + 1) != here) {
        out.push_back({d.axis1.value(i1), 0.5 * (d.axis2.value(i2) + d.axis2.value(i2 + 1)), i1, i2, false, here,
                       d.label(i1, i2 + 1)});
      }
    }
  return out;
}

PhaseDiagram scan(const ModelSpec& spec, const Axis& axis1, const Axis& axis2, const ParamPoint& fixed,
                  const ScanOptions& options) {
  for (const Axis* a : {&axis1, &axis2}) {
    if (!spec.has_parameter(a->param))
      throw SemanticError("model '" + spec.name + "' has no parameter '" + a->param + "'");
    if (a->n < 1) throw InvalidInput("axis '" + a->param + "' needs at least one point");
  }
  if (axis1.param == axis2.param) throw InvalidInput("scan axes must differ");
  PhaseDiagram d;
  d.axis1 = axis1;
  d.axis2 = axis2;
  const std::size_t cells = static_cast<std::size_t>(axis1.n) * static_cast<std::size_t>(axis2.n);
  d.labels.assign(cells, kFailedLabel);
  parallel_for(cells, options.workers, [&](std::size_t c) {
    const int i1 = static_cast<int>(c % static_cast<std::size_t>(axis1.n));
    const int i2 = static_cast<int>(c / static_cast<std::size_t>(axis1.n));
    const ParamPoint p = fixed.with(axis1.param, axis1.value(i1)).with(axis2.param, axis2.value(i2));
    try {
      d.labels[c] = classify_point(spec, p, options.samples, options.classify).label();
    } catch (const Error&) {
      d.labels[c] = kFailedLabel;
    }
  });
  d.boundaries = detect_boundaries(d);
  return d;
}

}  // namespace epclass
