#include "epclass/loop.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

std::vector<double> uniform_lambda(int n) {
  std::vector<double> l(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) l[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
  l.back() = 1.0;
  return l;
}

double wrap_momentum(double dk) { return dk - kTwoPi * std::round(dk / kTwoPi); }

ParamPoint parse_point(const nlohmann::json& j, const ParamPoint& fixed) {
  if (!j.is_object()) throw InvalidInput("loop point must be an object of name -> value");
  ParamPoint p = fixed;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw InvalidInput("loop point coordinate '" + key + "' must be numeric");
    p = p.with(key, value.get<double>());
  }
  return p;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw InvalidInput("malformed number '" + text + "'");
  return v;
}

}  // namespace

std::vector<ParamPoint> LoopPath::samples() const {
  std::vector<ParamPoint> out;
  out.reserve(lambda.size());
  for (const double l : lambda) out.push_back(point(l));
  return out;
}

LoopPath bz_loop(const ParamPoint& fixed, int n) { return axis_loop(fixed, "k", 0.0, kTwoPi, n); }

LoopPath axis_loop(const ParamPoint& fixed, const std::string& param, double from, double to, int n) {
  if (param != "k") throw InvalidInput("axis loops must run along the momentum k, got '" + param + "'");
  const double turns = (to - from) / kTwoPi;
  if (std::abs(turns) < 0.5 || std::abs(turns - std::round(turns)) > 1e-9)
    throw InvalidInput("axis loop over k must span a nonzero multiple of 2*pi");
  LoopPath loop;
  loop.lambda = uniform_lambda(n);
  loop.momentum_only = true;
  loop.base = fixed;
  loop.base.k.reset();
  loop.momentum = [from, to](double l) { return from + l * (to - from); };
  loop.point = [fixed, from, to](double l) { return fixed.with("k", from + l * (to - from)); };
  std::ostringstream d;
  d << "k:" << from << ".." << to << " n=" << n;
  loop.description = d.str();
  return loop;
}

LoopPath circle_loop(const ParamPoint& fixed, const std::string& p1, const std::string& p2, double cx, double cy,
                     double radius, int n) {
  if (!(radius > 0.0)) throw InvalidInput("circle loop needs a positive radius");
  LoopPath loop;
  loop.lambda = uniform_lambda(n);
  loop.point = [=](double l) {
    const double phi = kTwoPi * l;
    return fixed.with(p1, cx + radius * std::cos(phi)).with(p2, cy + radius * std::sin(phi));
  };
  std::ostringstream d;
  d << "circle(" << p1 << "," << p2 << ") center=(" << cx << "," << cy << ") r=" << radius << " n=" << n;
  loop.description = d.str();
  return loop;
}

LoopPath polyline_loop(std::vector<ParamPoint> points) {
  if (points.size() < 3) throw InvalidInput("polyline loop needs at least three points");
  auto shared = std::make_shared<const std::vector<ParamPoint>>(std::move(points));
  const int segments = static_cast<int>(shared->size()) - 1;
  LoopPath loop;
  loop.lambda = uniform_lambda(segments);
  loop.point = [shared, segments](double l) {
    const double x = std::clamp(l, 0.0, 1.0) * segments;
    const int i = std::min(static_cast<int>(std::floor(x)), segments - 1);
    const double f = x - i;
    const ParamPoint& a = (*shared)[static_cast<std::size_t>(i)];
    const ParamPoint& b = (*shared)[static_cast<std::size_t>(i) + 1];
    if (f == 0.0) return a;
    ParamPoint p = a;
    for (auto& [key, value] : p.values) {
      const auto other = b.values.find(key);
      if (other != b.values.end()) value += f * (other->second - value);
    }
    if (a.k && b.k) p.k = *a.k + f * (*b.k - *a.k);
    return p;
  };
  loop.description = "polyline n=" + std::to_string(segments);
  return loop;
}

LoopPath concatenate(const LoopPath& loop, int times) {
  if (times < 1) throw InvalidInput("concatenate() needs times >= 1");
  LoopPath out;
  out.momentum_only = loop.momentum_only;
  out.base = loop.base;
  const std::size_t n = loop.intervals();
  for (int t = 0; t < times; ++t)
    for (std::size_t i = (t == 0 ? 0 : 1); i <= n; ++i) out.lambda.push_back((t + loop.lambda[i]) / times);
  out.lambda.back() = 1.0;
  auto local = [times](double l) {
    const double x = l * times;
    return x - std::min(std::floor(x), static_cast<double>(times - 1));
  };
  auto inner = loop.point;
  out.point = [inner, local](double l) { return inner(local(l)); };
  if (loop.momentum) {
    auto k = loop.momentum;
    out.momentum = [k, local](double l) { return k(local(l)); };
  }
  out.description = loop.description + " x" + std::to_string(times);
  return out;
}

LoopPath reversed(const LoopPath& loop) {
  LoopPath out = loop;
  out.lambda.clear();
  for (auto it = loop.lambda.rbegin(); it != loop.lambda.rend(); ++it) out.lambda.push_back(1.0 - *it);
  out.lambda.front() = 0.0;
  out.lambda.back() = 1.0;
  auto inner = loop.point;
  out.point = [inner](double l) { return inner(1.0 - l); };
  if (loop.momentum) {
    auto k = loop.momentum;
    out.momentum = [k](double l) { return k(1.0 - l); };
  }
  out.description = loop.description + " reversed";
  return out;
}

void validate_loop(const LoopPath& loop) {
  if (!loop.point) throw InvalidInput("loop has no parameterization");
  if (loop.intervals() < 16) throw InvalidInput("loop needs at least 16 samples");
  if (loop.lambda.front() != 0.0 || loop.lambda.back() != 1.0)
    throw InvalidInput("loop parameter must run from 0 to 1");
  if (!std::is_sorted(loop.lambda.begin(), loop.lambda.end()) ||
      std::adjacent_find(loop.lambda.begin(), loop.lambda.end()) != loop.lambda.end())
    throw InvalidInput("loop parameter must be strictly increasing");
  const ParamPoint first = loop.point(0.0);
  const ParamPoint last = loop.point(1.0);
  std::set<std::string> names;
  for (const auto& [key, v] : first.values) names.insert(key);
  for (const auto& [key, v] : last.values) names.insert(key);
  for (const auto& key : names) {
    const auto a = first.get(key);
    const auto b = last.get(key);
    if (!a || !b || std::abs(*a - *b) > 1e-14 * std::max(1.0, std::abs(*a)))
      throw InvalidInput("loop is not closed in parameter '" + key + "'");
  }
  if (first.k.has_value() != last.k.has_value() ||
      (first.k && std::abs(wrap_momentum(*last.k - *first.k)) > 1e-12 * std::max(1.0, std::abs(*last.k))))
    throw InvalidInput("loop is not closed in k");
}

LoopPath parse_loop_spec(const std::string& text, const ModelSpec& spec, const ParamPoint& fixed) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed loop file: ") + e.what());
  }
  ParamPoint base = fixed;
  if (doc.contains("fixed")) {
    for (const auto& [key, value] : doc["fixed"].items()) base = base.with(key, value.get<double>());
  }
  LoopPath loop;
  if (doc.contains("points")) {
    std::vector<ParamPoint> points;
    for (const auto& p : doc["points"]) points.push_back(parse_point(p, base));
    loop = polyline_loop(std::move(points));
  } else if (doc.contains("center")) {
    const auto& c = doc["center"];
    if (!c.is_array() || c.size() != 2) throw InvalidInput("circle 'center' must be [x, y]");
    std::string p1, p2;
    if (doc.contains("params")) {
      p1 = doc["params"].at(0).get<std::string>();
      p2 = doc["params"].at(1).get<std::string>();
    } else {
      if (spec.parameter_names.size() < 2) throw InvalidInput("circle loop needs two model parameters");
      p1 = spec.parameter_names[0];
      p2 = spec.parameter_names[1];
    }
    loop = circle_loop(base, p1, p2, c[0].get<double>(), c[1].get<double>(), doc.at("radius").get<double>(),
                       doc.at("n").get<int>());
  } else if (doc.contains("param")) {
    loop = axis_loop(base, doc["param"].get<std::string>(), doc.at("from").get<double>(), doc.at("to").get<double>(),
                     doc.at("n").get<int>());
  } else {
    throw InvalidInput("loop file needs 'points', 'center' or 'param'");
  }
  spec.resolve(loop.point(0.0));
  validate_loop(loop);
  return loop;
}

LoopPath parse_loop_arg(const std::string& arg, const ModelSpec& spec, const ParamPoint& fixed) {
  LoopPath loop;
  if (arg.rfind("bz:", 0) == 0) {
    loop = bz_loop(fixed, static_cast<int>(parse_double(arg.substr(3))));
  } else if (arg.rfind("circle:", 0) == 0) {
    std::vector<double> v;
    std::stringstream ss(arg.substr(7));
    for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_double(item));
    if (v.size() != 4) throw InvalidInput("circle loop syntax is circle:cx,cy,r,n");
    if (spec.parameter_names.size() < 2) throw InvalidInput("circle loop needs two model parameters");
    loop = circle_loop(fixed, spec.parameter_names[0], spec.parameter_names[1], v[0], v[1], v[2],
                       static_cast<int>(v[3]));
  } else {
    std::ifstream in(arg);
    if (!in) throw InvalidInput("cannot open loop file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_loop_spec(buf.str(), spec, fixed);
  }
  spec.resolve(loop.point(0.0));
  validate_loop(loop);
  return loop;
}

}  // namespace epclass
