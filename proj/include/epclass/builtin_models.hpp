#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epclass/model.hpp"

namespace epclass {

/// Names of the bundled specs: "ssh", "three-band", "sqrt-ep".
std::vector<std::string> builtin_model_names();

/// Verbatim text of a bundled spec.
std::optional<std::string_view> builtin_model_text(std::string_view name);

/// Parses a bundled spec. Throws InvalidInput for unknown names.
ModelSpec builtin_model(std::string_view name);

/// Resolves a built-in name first, then falls back to reading a file.
ModelSpec load_model(const std::string& name_or_path);

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_models();
}

}  // namespace epclass
