#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epclass/builtin_models.hpp"
#include "epclass/cli.hpp"
#include "epclass/classifier.hpp"
#include "epclass/ep_locator.hpp"
#include "epclass/errors.hpp"
#include "epclass/linalg.hpp"
#include "epclass/obc.hpp"
#include "epclass/output.hpp"
#include "epclass/phase_diagram.hpp"
#include "epclass/pipeline.hpp"

namespace py = pybind11;
using namespace epclass;

namespace {

ParamPoint to_point(const std::map<std::string, double>& params) {
  ParamPoint p;
  for (const auto& [key, value] : params) p = p.with(key, value);
  return p;
}

py::dict classification_dict(const Classification& c) {
  py::dict d;
  d["status"] = to_string(c.status);
  d["signature"] = c.label();
  d["permutation"] = c.perm.images;
  py::list phases;
  for (const auto& ph : c.phases) {
    py::dict p;
    p["cycle"] = ph.cycle;
    p["gamma"] = ph.gamma;
    p["quantized"] = to_string(ph.quantized);
    p["deviation"] = ph.deviation;
    phases.append(p);
  }
  d["phases"] = phases;
  d["min_gap"] = c.min_gap;
  d["refinements"] = c.refinements;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exceptional-class classification of non-Hermitian lattice models";
  m.attr("__version__") = version();

  py::register_exception<Error>(m, "EpclassError");

  py::class_<ModelSpec>(m, "ModelSpec")
      .def_readonly("name", &ModelSpec::name)
      .def_readonly("orbitals", &ModelSpec::orbitals)
      .def_readonly("parameter_names", &ModelSpec::parameter_names)
      .def_readonly("defaults", &ModelSpec::defaults)
      .def("serialize", &serialize_model_spec)
      .def("hash", &model_hash_hex)
      .def("__repr__", [](const ModelSpec& s) { return "<ModelSpec " + s.name + ">"; });

  m.def("builtin_model_names", &builtin_model_names);
  m.def("load_model", &load_model, py::arg("name_or_path"));
  m.def("parse_model", [](const std::string& text) { return parse_model_spec(text); }, py::arg("text"));

  m.def(
      "bloch", [](const ModelSpec& s, const std::map<std::string, double>& params) { return bloch(s, to_point(params)); },
      py::arg("model"), py::arg("params"));
  m.def(
      "obc_hamiltonian",
      [](const ModelSpec& s, int n_cells, const std::map<std::string, double>& params) {
        return obc_hamiltonian(s, n_cells, to_point(params));
      },
      py::arg("model"), py::arg("n_cells"), py::arg("params"));
  m.def(
      "eig",
      [](const CMatrix& h) {
        EigenSystem es = eig_full(h);
        apply_biorthonormal_gauge(es);
        return py::make_tuple(CVector(es.values), CMatrix(es.right), CMatrix(es.left));
      },
      py::arg("matrix"), "Eigenvalues with right and left eigenvectors in biorthonormal gauge.");
  m.def(
      "phase_rigidity", [](const CVector& l, const CVector& r) { return phase_rigidity(l, r); }, py::arg("left"),
      py::arg("right"));
  m.def(
      "discriminant",
      [](const ModelSpec& s, const std::map<std::string, double>& params) { return discriminant(s, to_point(params)); },
      py::arg("model"), py::arg("params"));

  m.def(
      "classify",
      [](const ModelSpec& s, const std::map<std::string, double>& params, int samples) {
        Classification c;
        {
          py::gil_scoped_release release;
          c = classify_point(s, to_point(params), samples);
        }
        return classification_dict(c);
      },
      py::arg("model"), py::arg("params") = std::map<std::string, double>{}, py::arg("samples") = 512,
      "Classify the Brillouin-zone loop at one parameter point.");
  m.def(
      "classify_circle",
      [](const ModelSpec& s, const std::map<std::string, double>& params, double cx, double cy, double radius,
         int samples, int turns) {
        if (s.parameter_names.size() < 2) throw InvalidInput("circle loop needs two model parameters");
        LoopPath loop = circle_loop(to_point(params), s.parameter_names[0], s.parameter_names[1], cx, cy, radius,
                                    samples);
        if (turns > 1) loop = concatenate(loop, turns);
        return classification_dict(classify_loop(s, loop));
      },
      py::arg("model"), py::arg("params") = std::map<std::string, double>{}, py::arg("cx") = 0.0,
      py::arg("cy") = 0.0, py::arg("radius") = 1.0, py::arg("samples") = 128, py::arg("turns") = 1);

  m.def("enumerate_classes", [](int n) {
    std::vector<std::string> out;
    for (const auto& c : enumerate_classes(n)) out.push_back(signature(c));
    return out;
  });
  m.def(
      "normalize_signature", [](const std::string& s) { return signature(parse_signature(s)); }, py::arg("signature"));

  m.def(
      "locate_eps",
      [](const ModelSpec& s, const std::string& region, const std::map<std::string, double>& params, int n1, int n2) {
        LocateOptions o;
        o.n1 = n1;
        o.n2 = n2;
        const LocateResult r = locate_eps(s, parse_region(region), to_point(params), o);
        py::list out;
        for (const auto& e : r.eps) {
          py::dict d;
          d["coord1"] = e.coord1;
          d["coord2"] = e.coord2;
          d["abs_disc"] = e.disc_residual;
          d["rigidity"] = e.coalescence;
          d["kind"] = to_string(e.kind);
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("region"), py::arg("params") = std::map<std::string, double>{}, py::arg("n1") = 64,
      py::arg("n2") = 64);

  m.def(
      "phase_diagram",
      [](const ModelSpec& s, const std::string& x, const std::string& y, const std::map<std::string, double>& params,
         int samples, int workers) {
        ScanOptions o;
        o.samples = samples;
        o.workers = workers;
        PhaseDiagram d;
        {
          py::gil_scoped_release release;
          d = scan(s, parse_axis(x), parse_axis(y), to_point(params), o);
        }
        std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(d.axis2.n));
        for (int i2 = 0; i2 < d.axis2.n; ++i2)
          for (int i1 = 0; i1 < d.axis1.n; ++i1) rows[static_cast<std::size_t>(i2)].push_back(d.label(i1, i2));
        return rows;
      },
      py::arg("model"), py::arg("x"), py::arg("y"), py::arg("params") = std::map<std::string, double>{},
      py::arg("samples") = 256, py::arg("workers") = 1,
      "Label grid indexed [y][x] over the two axes (name=from:to:n).");

  m.def(
      "obc_report",
      [](const ModelSpec& s, int n_cells, const std::map<std::string, double>& params) {
        const ObcReport r = obc_report(s, n_cells, to_point(params));
        py::dict d;
        d["energies"] = CVector(r.energies);
        d["rigidities"] = r.rigidities;
        d["midgap"] = r.midgap;
        d["gap"] = r.gap;
        d["gap_open"] = r.gap_open;
        d["edge_weight"] = r.edge_weight;
        return d;
      },
      py::arg("model"), py::arg("n_cells"), py::arg("params") = std::map<std::string, double>{});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
