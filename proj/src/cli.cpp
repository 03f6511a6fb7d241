#include "epclass/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "epclass/builtin_models.hpp"
#include "epclass/classifier.hpp"
#include "epclass/ep_locator.hpp"
#include "epclass/errors.hpp"
#include "epclass/flow.hpp"
#include "epclass/loop.hpp"
#include "epclass/obc.hpp"
#include "epclass/output.hpp"
#include "epclass/phase_diagram.hpp"
#include "epclass/pipeline.hpp"

namespace epclass {
namespace {

struct Common {
  std::string model;
  std::vector<std::string> sets;
  std::string json_path;
  std::string csv_path;
  std::string svg_path;
  int workers = 0;
};

void add_model_options(CLI::App* app, Common& c) {
  app->add_option("--model", c.model, "Built-in model name (ssh, three-band, sqrt-ep) or path to a model file")
      ->required();
  app->add_option("--set", c.sets, "Parameter override name=value (repeatable)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw InvalidInput("failed writing '" + path + "'");
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string with_header(const ordered_json& metadata, const std::string& csv) {
  return "# " + metadata.dump() + "\n" + csv;
}

int resolve_workers(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("EPCLASS_WORKERS")) {
    int v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return 1;
}

ordered_json base_options(const std::string& subcommand, const ParamPoint& fixed) {
  ordered_json o;
  o["subcommand"] = subcommand;
  o["overrides"] = to_json(fixed);
  return o;
}

int exit_for(const Classification& c) {
  switch (c.status) {
    case ClassStatus::Ok:
      return kExitOk;
    case ClassStatus::Critical:
      return kExitCritical;
    case ClassStatus::Unquantized:
      return kExitUnquantized;
    case ClassStatus::Failed:
      break;
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional-class classification of non-Hermitian lattice models", "epclass"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  Common common;
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "Worker threads (default: $EPCLASS_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify one loop (Brillouin zone by default)");
  add_model_options(classify_cmd, common);
  std::string loop_arg = "bz:512";
  ClassifyOptions copts;
  classify_cmd->add_option("--loop", loop_arg, "bz:N | circle:cx,cy,r,N | loop file")->capture_default_str();
  classify_cmd->add_option("--quant-tol", copts.phase.quant_tol, "Phase quantization tolerance (rad)")->capture_default_str();
  classify_cmd->add_option("--tol", copts.track.tol, "Relative gap treated as a degeneracy")->capture_default_str();
  classify_cmd->add_option("--json", common.json_path, "Also write the JSON result here");

  // phase-diagram
  auto* pd_cmd = app.add_subcommand("phase-diagram", "Classify the Brillouin-zone loop over a parameter grid");
  add_model_options(pd_cmd, common);
  std::string x_axis, y_axis;
  ScanOptions sopts;
  pd_cmd->add_option("--x", x_axis, "First axis name=from:to:n")->required();
  pd_cmd->add_option("--y", y_axis, "Second axis name=from:to:n")->required();
  pd_cmd->add_option("--samples", sopts.samples, "Brillouin-zone samples per cell")->capture_default_str()->check(CLI::Range(16, 1 << 20));
  pd_cmd->add_option("--csv", common.csv_path, "CSV output path");
  pd_cmd->add_option("--json", common.json_path, "JSON output path");
  pd_cmd->add_option("--svg", common.svg_path, "SVG output path");
  add_workers(pd_cmd);

  // locate-eps
  auto* ep_cmd = app.add_subcommand("locate-eps", "Find degeneracies of the Bloch matrix in a 2D region");
  add_model_options(ep_cmd, common);
  std::string region_arg;
  LocateOptions lopts;
  ep_cmd->add_option("--region", region_arg, "Region a=from:to,b=from:to")->required();
  ep_cmd->add_option("--n1", lopts.n1, "Grid points along the first coordinate")->capture_default_str()->check(CLI::Range(16, 100000));
  ep_cmd->add_option("--n2", lopts.n2, "Grid points along the second coordinate")->capture_default_str()->check(CLI::Range(16, 100000));
  ep_cmd->add_option("--tol", lopts.tol, "Relative discriminant tolerance")->capture_default_str();
  ep_cmd->add_option("--csv", common.csv_path, "CSV output path");
  ep_cmd->add_option("--json", common.json_path, "Also write the JSON result here");

  // obc
  auto* obc_cmd = app.add_subcommand("obc", "Open-chain spectrum, rigidities and mid-gap states");
  add_model_options(obc_cmd, common);
  int cells = 40;
  std::string sweep_arg;
  ObcOptions oopts;
  obc_cmd->add_option("--cells", cells, "Number of unit cells")->capture_default_str()->check(CLI::Range(4, 2000));
  obc_cmd->add_option("--kappa", oopts.kappa, "Isolation factor over the median spacing")->capture_default_str();
  obc_cmd->add_option("--sweep", sweep_arg, "Gap sweep axis name=from:to:n");
  obc_cmd->add_option("--csv", common.csv_path, "CSV output path");
  obc_cmd->add_option("--json", common.json_path, "Also write the JSON result here");
  obc_cmd->add_option("--svg", common.svg_path, "SVG output path");
  add_workers(obc_cmd);

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "List the exceptional classes of N states");
  int enum_n = 0;
  enum_cmd->add_option("--n", enum_n, "Number of states")->required()->check(CLI::Range(1, 8));

  // loop
  auto* loop_cmd = app.add_subcommand("loop", "Track the spectral flow along a loop");
  add_model_options(loop_cmd, common);
  loop_cmd->add_option("--loop", loop_arg, "bz:N | circle:cx,cy,r,N | loop file")->capture_default_str();
  loop_cmd->add_option("--csv", common.csv_path, "Strand CSV output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (enum_cmd->parsed()) {
      out << dump(classes_json(enum_n, enumerate_classes(enum_n)));
      return kExitOk;
    }

    const ModelSpec spec = load_model(common.model);
    const ParamPoint fixed = parse_overrides(spec, common.sets);
    spec.resolve(fixed);
    const int workers = resolve_workers(common.workers);

    if (classify_cmd->parsed()) {
      const LoopPath loop = parse_loop_arg(loop_arg, spec, fixed);
      const Classification c = classify_loop(spec, loop, copts);
      ordered_json options = base_options("classify", fixed);
      options["loop"] = loop_arg;
      options["quant_tol"] = round12(copts.phase.quant_tol);
      options["tol"] = round12(copts.track.tol);
      ordered_json j;
      j["metadata"] = run_metadata(spec, options);
      j["result"] = to_json(c);
      const std::string text = dump(j);
      out << text;
      if (!common.json_path.empty()) write_file(common.json_path, text);
      if (c.status == ClassStatus::Failed) err << "classification failed: " << c.message << "\n";
      return exit_for(c);
    }

    if (pd_cmd->parsed()) {
      const Axis ax = parse_axis(x_axis);
      const Axis ay = parse_axis(y_axis);
      sopts.workers = workers;
      const PhaseDiagram d = scan(spec, ax, ay, fixed, sopts);
      ordered_json options = base_options("phase-diagram", fixed);
      options["x"] = x_axis;
      options["y"] = y_axis;
      options["samples"] = sopts.samples;
      const ordered_json meta = run_metadata(spec, options);
      const std::string csv = with_header(meta, phase_diagram_csv(d));
      if (!common.csv_path.empty()) write_file(common.csv_path, csv);
      if (!common.json_path.empty()) write_file(common.json_path, dump(phase_diagram_json(d, meta)));
      if (!common.svg_path.empty())
        write_file(common.svg_path, phase_diagram_svg(d, spec.name + " phase diagram"));
      std::map<std::string, int> counts;
      for (const auto& l : d.labels) ++counts[l];
      ordered_json summary;
      summary["metadata"] = meta;
      summary["labels"] = counts;
      summary["boundaries"] = d.boundaries.size();
      out << dump(summary);
      return kExitOk;
    }

    if (ep_cmd->parsed()) {
      const Region region = parse_region(region_arg);
      const LocateResult r = locate_eps(spec, region, fixed, lopts);
      ordered_json options = base_options("locate-eps", fixed);
      options["region"] = region_arg;
      options["n1"] = lopts.n1;
      options["n2"] = lopts.n2;
      options["tol"] = round12(lopts.tol);
      const ordered_json meta = run_metadata(spec, options);
      const std::string text = dump(eps_json(r, meta));
      out << text;
      if (!common.json_path.empty()) write_file(common.json_path, text);
      if (!common.csv_path.empty()) write_file(common.csv_path, with_header(meta, eps_csv(r)));
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      return kExitOk;
    }

    if (obc_cmd->parsed()) {
      ordered_json options = base_options("obc", fixed);
      options["cells"] = cells;
      options["kappa"] = round12(oopts.kappa);
      if (!sweep_arg.empty()) {
        const Axis axis = parse_axis(sweep_arg);
        const GapSweep sw = gap_vs_parameter(spec, cells, axis, fixed, oopts, workers);
        options["sweep"] = sweep_arg;
        const ordered_json meta = run_metadata(spec, options);
        const std::string text = dump(gap_sweep_json(sw, axis.param, meta));
        out << text;
        if (!common.json_path.empty()) write_file(common.json_path, text);
        if (!common.csv_path.empty()) write_file(common.csv_path, with_header(meta, gap_sweep_csv(sw, axis.param)));
        return kExitOk;
      }
      const ObcReport r = obc_report(spec, cells, fixed, oopts);
      const ordered_json meta = run_metadata(spec, options);
      const std::string text = dump(obc_json(r, meta));
      out << text;
      if (!common.json_path.empty()) write_file(common.json_path, text);
      if (!common.csv_path.empty()) write_file(common.csv_path, with_header(meta, obc_csv(r)));
      if (!common.svg_path.empty()) write_file(common.svg_path, obc_svg(r, spec.name + " open chain"));
      return kExitOk;
    }

    if (loop_cmd->parsed()) {
      const LoopPath loop = parse_loop_arg(loop_arg, spec, fixed);
      const SpectralFlow flow = track_loop(spec, loop, copts.track);
      const Permutation perm = extract_permutation(flow);
      ordered_json options = base_options("loop", fixed);
      options["loop"] = loop_arg;
      const ordered_json meta = run_metadata(spec, options);
      ordered_json j;
      j["metadata"] = meta;
      j["loop"] = loop.description;
      j["permutation"] = perm.images;
      j["cycles"] = perm.cycles();
      j["nodes"] = flow.nodes.size();
      j["refinements"] = flow.refinements;
      j["min_gap"] = round12(flow.min_gap);
      out << dump(j);
      if (!common.csv_path.empty()) {
        std::string csv = "lambda,strand,re,im\n";
        for (const auto& node : flow.nodes)
          for (Eigen::Index s = 0; s < node.values.size(); ++s)
            csv += format_number(node.lambda) + "," + std::to_string(s) + "," + format_number(node.values[s].real()) +
                   "," + format_number(node.values[s].imag()) + "\n";
        write_file(common.csv_path, with_header(meta, csv));
      }
      return kExitOk;
    }
  } catch (const LoopTouchesEP& e) {
    err << "critical: " << e.what() << "\n";
    return kExitCritical;
  } catch (const UnquantizedPhase& e) {
    err << "unquantized: " << e.what() << "\n";
    return kExitUnquantized;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace epclass
