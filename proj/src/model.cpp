#include "epclass/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "epclass/errors.hpp"

namespace epclass {
namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int require_int(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw SemanticError(where + ": missing key '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SemanticError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::optional<double> ParamPoint::get(const std::string& name) const {
  if (name == "k") return k;
  const auto it = values.find(name);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ModelSpec::parameter_index(std::string_view param) const {
  const auto it = std::find(parameter_names.begin(), parameter_names.end(), param);
  if (it == parameter_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - parameter_names.begin());
}

bool ModelSpec::is_lattice() const {
  return std::any_of(hoppings.begin(), hoppings.end(), [](const Hopping& h) { return h.offset != 0; });
}

std::vector<double> ModelSpec::resolve(const ParamPoint& p) const {
  std::vector<double> values = defaults;
  for (const auto& [key, value] : p.values) {
    const auto idx = parameter_index(key);
    if (!idx) throw SemanticError("model '" + name + "' has no parameter '" + key + "'");
    values[*idx] = value;
  }
  return values;
}

ModelSpec parse_model_spec(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SyntaxError("malformed model spec: " + std::string(e.what()), line, column);
  }
  if (!doc.is_object()) throw SemanticError("model spec must be a JSON object");

  ModelSpec spec;
  if (!doc.contains("name") || !doc["name"].is_string()) throw SemanticError("model spec needs a string 'name'");
  spec.name = doc["name"].get<std::string>();
  spec.orbitals = require_int(doc, "orbitals", "model '" + spec.name + "'");
  if (spec.orbitals < 1) throw SemanticError("model '" + spec.name + "': orbitals must be >= 1");

  if (doc.contains("parameters")) {
    const auto& params = doc["parameters"];
    if (!params.is_object()) throw SemanticError("model '" + spec.name + "': 'parameters' must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!is_identifier(key) || key == "i" || key == "pi" || key == "exp" || key == "k")
        throw SemanticError("model '" + spec.name + "': invalid parameter name '" + key + "'");
      if (!value.is_number()) throw SemanticError("parameter '" + key + "' needs a numeric default");
      spec.parameter_names.push_back(key);
      spec.defaults.push_back(value.get<double>());
    }
  }

  if (!doc.contains("hoppings") || !doc["hoppings"].is_array())
    throw SemanticError("model '" + spec.name + "' needs a 'hoppings' array");
  int index = 0;
  for (const auto& h : doc["hoppings"]) {
    const std::string where = "hopping #" + std::to_string(index++);
    if (!h.is_object()) throw SemanticError(where + " must be an object");
    Hopping hop;
    hop.from = require_int(h, "from", where);
    hop.to = require_int(h, "to", where);
    hop.offset = h.contains("offset") ? require_int(h, "offset", where) : 0;
    if (hop.from < 0 || hop.from >= spec.orbitals || hop.to < 0 || hop.to >= spec.orbitals) {
      throw SemanticError(where + ": orbital index out of range [0, " + std::to_string(spec.orbitals) + ")");
    }
    if (!h.contains("amplitude")) throw SemanticError(where + ": missing 'amplitude'");
    const auto& amp = h["amplitude"];
    if (amp.is_string()) {
      hop.amplitude = amp.get<std::string>();
    } else if (amp.is_number()) {
      hop.amplitude = shortest(amp.get<double>());
    } else {
      throw SemanticError(where + ": 'amplitude' must be a string expression");
    }
    hop.expr = Expression::compile(hop.amplitude, spec.parameter_names);
    hop.expr.evaluate(spec.defaults);
    spec.hoppings.push_back(std::move(hop));
  }
  return spec;
}

std::string serialize_model_spec(const ModelSpec& spec) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"name\": " << nlohmann::json(spec.name).dump() << ",\n";
  out << "  \"orbitals\": " << spec.orbitals << ",\n";
  out << "  \"parameters\": {";
  for (std::size_t i = 0; i < spec.parameter_names.size(); ++i) {
    out << (i ? ",\n" : "\n") << "    " << nlohmann::json(spec.parameter_names[i]).dump() << ": "
        << shortest(spec.defaults[i]);
  }
  out << (spec.parameter_names.empty() ? "},\n" : "\n  },\n");
  out << "  \"hoppings\": [";
  for (std::size_t i = 0; i < spec.hoppings.size(); ++i) {
    const auto& h = spec.hoppings[i];
    out << (i ? ",\n" : "\n") << "    {\"from\": " << h.from << ", \"to\": " << h.to << ", \"offset\": " << h.offset
        << ", \"amplitude\": " << nlohmann::json(h.amplitude).dump() << "}";
  }
  out << (spec.hoppings.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

std::uint64_t model_hash(const ModelSpec& spec) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : serialize_model_spec(spec)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string model_hash_hex(const ModelSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(model_hash(spec)));
  return buf;
}

BlochEvaluator::BlochEvaluator(const ModelSpec& spec, const ParamPoint& p) : orbitals_(spec.orbitals) {
  const auto values = spec.resolve(p);
  terms_.reserve(spec.hoppings.size());
  for (const auto& h : spec.hoppings) terms_.push_back({h.to, h.from, h.offset, h.expr.evaluate(values)});
}

void BlochEvaluator::fill(double k, CMatrix& out) const {
  out.setZero(orbitals_, orbitals_);
  for (const auto& t : terms_) {
    out(t.row, t.col) += t.offset == 0 ? t.amplitude : t.amplitude * std::polar(1.0, k * t.offset);
  }
}

CMatrix BlochEvaluator::at(double k) const {
  CMatrix m;
  fill(k, m);
  return m;
}

CMatrix bloch(const ModelSpec& spec, const ParamPoint& p) {
  if (!p.k && spec.is_lattice()) throw InvalidInput("bloch(): model '" + spec.name + "' needs a momentum k");
  return BlochEvaluator(spec, p).at(p.k.value_or(0.0));
}

CMatrix family_matrix(const ModelSpec& spec, const ParamPoint& p) {
  return BlochEvaluator(spec, p).at(p.k.value_or(0.0));
}

CMatrix obc_hamiltonian(const ModelSpec& spec, int n_cells, const ParamPoint& p) {
  if (n_cells < 2) throw InvalidInput("obc_hamiltonian(): n_cells must be >= 2");
  const auto values = spec.resolve(p);
  const int b = spec.orbitals;
  const Eigen::Index dim = static_cast<Eigen::Index>(b) * n_cells;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const auto& hop : spec.hoppings) {
    const cplx amp = hop.expr.evaluate(values);
    for (int cell = 0; cell < n_cells; ++cell) {
      const int target = cell + hop.offset;
      if (target < 0 || target >= n_cells) continue;
      h(static_cast<Eigen::Index>(target) * b + hop.to, static_cast<Eigen::Index>(cell) * b + hop.from) += amp;
    }
  }
  return h;
}

ParamPoint parse_overrides(const ModelSpec& spec, const std::vector<std::string>& assignments) {
  ParamPoint p;
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw InvalidInput("expected name=value, got '" + a + "'");
    const std::string key = a.substr(0, eq);
    const std::string text = a.substr(eq + 1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw InvalidInput("malformed number in '" + a + "'");
    if (key != "k" && !spec.has_parameter(key))
      throw SemanticError("model '" + spec.name + "' has no parameter '" + key + "'");
    p = p.with(key, value);
  }
  return p;
}

}  // namespace epclass
