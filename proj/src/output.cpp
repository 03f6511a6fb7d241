#include "epclass/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace epclass {
namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#86bcb6"};

std::string svg_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

std::string label_color(const std::string& label, const std::map<std::string, std::string>& colors) {
  const auto it = colors.find(label);
  return it == colors.end() ? "#000000" : it->second;
}

std::map<std::string, std::string> assign_colors(const std::vector<std::string>& labels) {
  std::set<std::string> distinct(labels.begin(), labels.end());
  std::map<std::string, std::string> colors;
  std::size_t next = 0;
  for (const auto& l : distinct) {
    if (l == kCriticalLabel) {
      colors[l] = "#bdbdbd";
    } else if (l == kFailedLabel) {
      colors[l] = "#252525";
    } else {
      colors[l] = kPalette[next++ % std::size(kPalette)];
    }
  }
  return colors;
}

}  // namespace

const char* version() { return EPCLASS_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

ordered_json run_metadata(const ModelSpec& spec, const ordered_json& options) {
  ordered_json m;
  m["model"] = spec.name;
  m["model_hash"] = model_hash_hex(spec);
  m["version"] = version();
  m["options"] = options;
  return m;
}

ordered_json to_json(const ParamPoint& p) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : p.values) j[key] = num(value);
  if (p.k) j["k"] = num(*p.k);
  return j;
}

ordered_json to_json(const Classification& c) {
  ordered_json j;
  j["status"] = to_string(c.status);
  j["signature"] = c.label();
  j["permutation"] = c.perm.images;
  j["parity"] = c.perm.images.empty() ? 0 : c.perm.parity();
  ordered_json phases = ordered_json::array();
  for (const auto& ph : c.phases) {
    ordered_json p;
    p["cycle"] = ph.cycle;
    p["re"] = num(ph.gamma.real());
    p["im"] = num(ph.gamma.imag());
    p["quantized"] = to_string(ph.quantized);
    p["deviation"] = num(ph.deviation);
    phases.push_back(p);
  }
  j["phases"] = phases;
  j["min_gap"] = num(c.min_gap);
  j["refinements"] = c.refinements;
  if (c.status == ClassStatus::Critical) j["critical_lambda"] = num(c.critical_lambda);
  if (!c.message.empty()) j["message"] = c.message;
  return j;
}

std::string phase_diagram_csv(const PhaseDiagram& d) {
  std::ostringstream out;
  out << csv_field(d.axis1.param) << ',' << csv_field(d.axis2.param) << ",signature\n";
  for (int i2 = 0; i2 < d.axis2.n; ++i2)
    for (int i1 = 0; i1 < d.axis1.n; ++i1)
      out << format_number(d.axis1.value(i1)) << ',' << format_number(d.axis2.value(i2)) << ','
          << csv_field(d.label(i1, i2)) << '\n';
  return out.str();
}

ordered_json phase_diagram_json(const PhaseDiagram& d, const ordered_json& metadata) {
  ordered_json j;
  j["metadata"] = metadata;
  auto axis = [](const Axis& a) {
    ordered_json x;
    x["param"] = a.param;
    x["from"] = num(a.from);
    x["to"] = num(a.to);
    x["n"] = a.n;
    return x;
  };
  j["axes"] = {axis(d.axis1), axis(d.axis2)};
  ordered_json rows = ordered_json::array();
  for (int i2 = 0; i2 < d.axis2.n; ++i2) {
    ordered_json row = ordered_json::array();
    for (int i1 = 0; i1 < d.axis1.n; ++i1) row.push_back(d.label(i1, i2));
    rows.push_back(row);
  }
  j["labels"] = rows;
  ordered_json bounds = ordered_json::array();
  for (const auto& b : d.boundaries) {
    ordered_json x;
    x[d.axis1.param] = num(b.x);
    x[d.axis2.param] = num(b.y);
    x["from"] = b.from;
    x["to"] = b.to;
    bounds.push_back(x);
  }
  j["boundaries"] = bounds;
  return j;
}

std::string phase_diagram_svg(const PhaseDiagram& d, const std::string& title) {
  const double plot_w = 600.0;
  const double plot_h = 400.0;
  const double left = 60.0;
  const double top = 40.0;
  const double cw = plot_w / d.axis1.n;
  const double ch = plot_h / d.axis2.n;
  const auto colors = assign_colors(d.labels);
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<!-- epclass " << version() << " -->\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(left + plot_w + 220) << "\" height=\""
    << format_number(top + plot_h + 60) << "\" shape-rendering=\"crispEdges\">\n";
  s << "<text x=\"" << format_number(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
    << svg_escape(title) << "</text>\n";
  s << "<g id=\"cells\">\n";
  for (int i2 = 0; i2 < d.axis2.n; ++i2) {
    const double y = top + plot_h - (i2 + 1) * ch;
    int start = 0;
    for (int i1 = 1; i1 <= d.axis1.n; ++i1) {
      if (i1 < d.axis1.n && d.label(i1, i2) == d.label(start, i2)) continue;
      s << "<rect x=\"" << format_number(left + start * cw) << "\" y=\"" << format_number(y) << "\" width=\""
        << format_number((i1 - start) * cw) << "\" height=\"" << format_number(ch) << "\" fill=\""
        << label_color(d.label(start, i2), colors) << "\"/>\n";
      start = i1;
    }
  }
  s << "</g>\n<g id=\"boundaries\" fill=\"#000000\">\n";
  auto px = [&](double v) {
    return left + (d.axis1.n > 1 ? (v - d.axis1.from) / (d.axis1.to - d.axis1.from) * (plot_w - cw) : 0.0) + 0.5 * cw;
  };
  auto py = [&](double v) {
    return top + plot_h -
           ((d.axis2.n > 1 ? (v - d.axis2.from) / (d.axis2.to - d.axis2.from) * (plot_h - ch) : 0.0) + 0.5 * ch);
  };
  for (const auto& b : d.boundaries)
    s << "<circle cx=\"" << format_number(px(b.x)) << "\" cy=\"" << format_number(py(b.y)) << "\" r=\"1\"/>\n";
  s << "</g>\n";
  s << "<rect x=\"" << format_number(left) << "\" y=\"" << format_number(top) << "\" width=\"" << format_number(plot_w)
    << "\" height=\"" << format_number(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<text x=\"" << format_number(left + plot_w / 2) << "\" y=\"" << format_number(top + plot_h + 40)
    << "\" text-anchor=\"middle\">" << svg_escape(d.axis1.param) << "</text>\n";
  s << "<text x=\"" << format_number(left) << "\" y=\"" << format_number(top + plot_h + 16)
    << "\" text-anchor=\"middle\">" << format_number(d.axis1.from) << "</text>\n";
  s << "<text x=\"" << format_number(left + plot_w) << "\" y=\"" << format_number(top + plot_h + 16)
    << "\" text-anchor=\"middle\">" << format_number(d.axis1.to) << "</text>\n";
  s << "<text x=\"20\" y=\"" << format_number(top + plot_h / 2) << "\">" << svg_escape(d.axis2.param) << "</text>\n";
  s << "<text x=\"" << format_number(left - 6) << "\" y=\"" << format_number(top + plot_h)
    << "\" text-anchor=\"end\">" << format_number(d.axis2.from) << "</text>\n";
  s << "<text x=\"" << format_number(left - 6) << "\" y=\"" << format_number(top + 10) << "\" text-anchor=\"end\">"
    << format_number(d.axis2.to) << "</text>\n";
  int row = 0;
  for (const auto& [label, color] : colors) {
    const double y = top + 20.0 * row++;
    s << "<rect x=\"" << format_number(left + plot_w + 20) << "\" y=\"" << format_number(y)
      << "\" width=\"14\" height=\"14\" fill=\"" << color << "\"/>\n";
    s << "<text x=\"" << format_number(left + plot_w + 40) << "\" y=\"" << format_number(y + 12) << "\">"
      << svg_escape(label) << "</text>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

std::string eps_csv(const LocateResult& r) {
  std::ostringstream out;
  out << "coord1,coord2,abs_disc,rigidity,kind\n";
  for (const auto& e : r.eps)
    out << format_number(e.coord1) << ',' << format_number(e.coord2) << ',' << format_number(e.disc_residual) << ','
        << format_number(e.coalescence) << ',' << to_string(e.kind) << (e.higher_order ? " order>2 unverified" : "")
        << '\n';
  return out.str();
}

ordered_json eps_json(const LocateResult& r, const ordered_json& metadata) {
  ordered_json j;
  j["metadata"] = metadata;
  ordered_json eps = ordered_json::array();
  for (const auto& e : r.eps) {
    ordered_json x;
    x["coord1"] = num(e.coord1);
    x["coord2"] = num(e.coord2);
    x["point"] = to_json(e.point);
    x["abs_disc"] = num(e.disc_residual);
    x["rigidity"] = num(e.coalescence);
    x["gap"] = num(e.gap);
    x["order"] = e.order;
    x["kind"] = to_string(e.kind);
    if (e.higher_order) x["note"] = "order>2 unverified";
    eps.push_back(x);
  }
  j["eps"] = eps;
  j["warnings"] = r.warnings;
  return j;
}

std::string obc_csv(const ObcReport& r) {
  std::set<int> mid(r.midgap.begin(), r.midgap.end());
  std::ostringstream out;
  out << "index,re_e,im_e,rigidity,edge_weight,midgap\n";
  for (Eigen::Index i = 0; i < r.energies.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out << i << ',' << format_number(r.energies[i].real()) << ',' << format_number(r.energies[i].imag()) << ','
        << format_number(r.rigidities[k]) << ',' << format_number(r.edge_weight[k]) << ','
        << (mid.count(static_cast<int>(i)) ? 1 : 0) << '\n';
  }
  return out.str();
}

ordered_json obc_json(const ObcReport& r, const ordered_json& metadata) {
  ordered_json j;
  j["metadata"] = metadata;
  j["ordering"] = "real part ascending, 0-based indices";
  j["n_cells"] = r.n_cells;
  j["orbitals"] = r.orbitals;
  j["midgap"] = r.midgap;
  j["gap"] = num(r.gap);
  j["gap_open"] = r.gap_open;
  j["median_spacing"] = num(r.median_spacing);
  j["max_imag"] = num(r.max_imag);
  ordered_json states = ordered_json::array();
  for (Eigen::Index i = 0; i < r.energies.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    ordered_json s;
    s["re"] = num(r.energies[i].real());
    s["im"] = num(r.energies[i].imag());
    s["rigidity"] = num(r.rigidities[k]);
    s["edge_weight"] = num(r.edge_weight[k]);
    states.push_back(s);
  }
  j["states"] = states;
  return j;
}

std::string obc_svg(const ObcReport& r, const std::string& title) {
  const double w = 360.0;
  const double h = 260.0;
  const double left = 50.0;
  const double top = 40.0;
  const double gap = 60.0;
  const Eigen::Index n = r.energies.size();
  std::set<int> mid(r.midgap.begin(), r.midgap.end());
  double emin = 0.0, emax = 0.0;
  if (n > 0) {
    emin = r.energies.real().minCoeff();
    emax = r.energies.real().maxCoeff();
  }
  if (emax <= emin) emax = emin + 1.0;
  auto x_of = [&](Eigen::Index i) { return n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) * w : 0.0; };
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<!-- epclass " << version() << " -->\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(2 * w + gap + 2 * left) << "\" height=\""
    << format_number(top + h + 50) << "\">\n";
  s << "<text x=\"" << format_number(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
    << svg_escape(title) << "</text>\n";
  for (int panel = 0; panel < 2; ++panel) {
    const double x0 = left + panel * (w + gap);
    s << "<g id=\"" << (panel == 0 ? "spectrum" : "rigidity") << "\">\n";
    s << "<rect x=\"" << format_number(x0) << "\" y=\"" << format_number(top) << "\" width=\"" << format_number(w)
      << "\" height=\"" << format_number(h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = panel == 0 ? (r.energies[i].real() - emin) / (emax - emin)
                                  : std::clamp(r.rigidities[static_cast<std::size_t>(i)], 0.0, 1.0);
      const bool m = mid.count(static_cast<int>(i)) > 0;
      s << "<circle cx=\"" << format_number(x0 + x_of(i)) << "\" cy=\"" << format_number(top + h - v * h)
        << "\" r=\"2.5\" fill=\"" << (m ? "#e15759" : "#4e79a7") << "\"/>\n";
    }
    s << "<text x=\"" << format_number(x0 + w / 2) << "\" y=\"" << format_number(top + h + 30)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
      << (panel == 0 ? "Re E by index" : "|r| by index") << "</text>\n";
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string gap_sweep_csv(const GapSweep& sw, const std::string& param) {
  std::ostringstream out;
  out << csv_field(param) << ",gap,gap_open,midgap\n";
  for (const auto& g : sw.samples)
    out << format_number(g.value) << ',' << format_number(g.gap) << ',' << (g.gap_open ? 1 : 0) << ','
        << g.midgap_count << '\n';
  return out.str();
}

ordered_json gap_sweep_json(const GapSweep& sw, const std::string& param, const ordered_json& metadata) {
  ordered_json j;
  j["metadata"] = metadata;
  j["param"] = param;
  ordered_json samples = ordered_json::array();
  for (const auto& g : sw.samples) {
    ordered_json x;
    x[param] = num(g.value);
    x["gap"] = num(g.gap);
    x["gap_open"] = g.gap_open;
    x["midgap"] = g.midgap_count;
    samples.push_back(x);
  }
  j["samples"] = samples;
  if (!sw.samples.empty()) {
    j["min_at"] = num(sw.samples[sw.argmin].value);
    j["min_gap"] = num(sw.samples[sw.argmin].gap);
  }
  return j;
}

ordered_json classes_json(int n, const std::vector<ExceptionalClass>& classes) {
  ordered_json j;
  j["n"] = n;
  j["rule"] = "parity-only";
  ordered_json list = ordered_json::array();
  for (const auto& c : classes) list.push_back(signature(c));
  j["classes"] = list;
  return j;
}

}  // namespace epclass
