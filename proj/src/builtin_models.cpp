#include "epclass/builtin_models.hpp"

#include <fstream>
#include <sstream>

#include "epclass/errors.hpp"

namespace epclass {

std::vector<std::string> builtin_model_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : detail::embedded_models()) names.emplace_back(name);
  return names;
}

std::optional<std::string_view> builtin_model_text(std::string_view name) {
  for (const auto& [key, text] : detail::embedded_models())
    if (key == name) return text;
  return std::nullopt;
}

ModelSpec builtin_model(std::string_view name) {
  const auto text = builtin_model_text(name);
  if (!text) throw InvalidInput("no built-in model named '" + std::string(name) + "'");
  return parse_model_spec(*text);
}

ModelSpec load_model(const std::string& name_or_path) {
  if (builtin_model_text(name_or_path)) return builtin_model(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw InvalidInput("cannot open model '" + name_or_path + "' (not a built-in name or readable file)");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_spec(buf.str());
}

}  // namespace epclass
