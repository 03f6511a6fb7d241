#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "epclass/classifier.hpp"
#include "epclass/ep_locator.hpp"
#include "epclass/obc.hpp"
#include "epclass/phase_diagram.hpp"
#include "epclass/pipeline.hpp"

namespace epclass {

using ordered_json = nlohmann::ordered_json;

const char* version();

/// 12 significant digits, "." decimal point, locale independent.
std::string format_number(double v);

/// v rounded to 12 significant digits, for JSON emission.
double round12(double v);

/// {"model": name, "model_hash": hex, "version": ..., "options": options}.
ordered_json run_metadata(const ModelSpec& spec, const ordered_json& options);

ordered_json to_json(const ParamPoint& p);
ordered_json to_json(const Classification& c);

std::string phase_diagram_csv(const PhaseDiagram& d);
ordered_json phase_diagram_json(const PhaseDiagram& d, const ordered_json& metadata);
std::string phase_diagram_svg(const PhaseDiagram& d, const std::string& title);

std::string eps_csv(const LocateResult& r);
ordered_json eps_json(const LocateResult& r, const ordered_json& metadata);

std::string obc_csv(const ObcReport& r);
ordered_json obc_json(const ObcReport& r, const ordered_json& metadata);
std::string obc_svg(const ObcReport& r, const std::string& title);

std::string gap_sweep_csv(const GapSweep& s, const std::string& param);
ordered_json gap_sweep_json(const GapSweep& s, const std::string& param, const ordered_json& metadata);

ordered_json classes_json(int n, const std::vector<ExceptionalClass>& classes);

}  // namespace epclass
