#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loja/bounds.hpp"
#include "loja/error.hpp"
#include "loja/report.hpp"

namespace py = pybind11;
using namespace loja;

namespace {

// Results cross the boundary as canonical JSON text; the Python layer decodes rationals.
std::string dump(const nlohmann::json& j) { return j.dump(); }

Polynomial poly(const std::string& text) { return parse_polynomial_any(text); }

BoundOptions bound_options(bool nd, bool it) {
  BoundOptions o;
  o.assume_nondegenerate = nd;
  o.assume_inv_tame = it;
  return o;
}

ProbeOptions probe_options(const std::optional<std::string>& truncation, double tolerance) {
  ProbeOptions o;
  if (truncation) o.truncation = parse_rational(*truncation);
  o.tolerance = tolerance;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Lojasiewicz gradient exponent bounds via Newton polyhedra";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> base(m, "LojaError", PyExc_ValueError);
  static py::exception<Error> parse_exc(m, "ParseError", base.ptr());
  static py::exception<Error> pre_exc(m, "PreconditionError", base.ptr());
  static py::exception<Error> hyp_exc(m, "HypothesisError", base.ptr());
  static py::exception<Error> guard_exc(m, "GuardError", base.ptr());
  static py::exception<Error> trunc_exc(m, "TruncationError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::Parse:
          py::set_error(parse_exc, e.what());
          return;
        case ErrorKind::Precondition:
          py::set_error(pre_exc, e.what());
          return;
        case ErrorKind::Hypothesis:
          py::set_error(hyp_exc, e.what());
          return;
        case ErrorKind::Guard:
          py::set_error(guard_exc, e.what());
          return;
        case ErrorKind::Truncation:
          py::set_error(trunc_exc, e.what());
          return;
      }
    }
  });

  m.def("normalize_polynomial", [](const std::string& text) { return to_string(poly(text)); },
        "Canonical text form of a polynomial");

  m.def(
      "analyze",
      [](const std::string& text, bool nd, bool it, const std::optional<std::string>& curve) {
        AnalyzeOptions o;
        o.bounds = bound_options(nd, it);
        o.input_text = text;
        if (curve) o.curve = curve_from_json(nlohmann::json::parse(*curve));
        return dump(analyze(poly(text), o).document);
      },
      py::arg("text"), py::arg("assume_nondegenerate") = false, py::arg("assume_inv_tame") = false,
      py::arg("curve") = py::none());

  auto bound = [&m](const char* name, BoundReport (*fn)(const Polynomial&, const BoundOptions&)) {
    m.def(
        name,
        [fn](const std::string& text, bool nd, bool it) { return dump(to_json(fn(poly(text), bound_options(nd, it)))); },
        py::arg("text"), py::arg("assume_nondegenerate") = false, py::arg("assume_inv_tame") = false);
  };
  bound("bound_general", &bound_general);
  bound("refine_bound", &refine_bound);
  bound("bound_convenient", &bound_convenient);

  m.def(
      "bound_product",
      [](const std::vector<std::string>& members, const std::vector<int>& mults, bool nd) {
        ProductFamily fam;
        for (const auto& t : members) fam.members.push_back(poly(t));
        fam.multiplicities = mults;
        return dump(to_json(bound_product(fam, bound_options(nd, false))));
      },
      py::arg("members"), py::arg("multiplicities"), py::arg("assume_nondegenerate") = false);

  m.def(
      "exceptional_monomials",
      [](const std::string& text) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& a : exceptional_monomials(poly(text))) {
          out.push_back({{"variable", a.j + 1},
                         {"b", a.b},
                         {"tag", to_string(a.tag)},
                         {"witness", a.witness ? nlohmann::json(*a.witness) : nlohmann::json(nullptr)}});
        }
        return dump(out);
      },
      py::arg("text"));

  m.def(
      "probe",
      [](const std::string& text, const std::string& curve, const std::optional<std::string>& truncation,
         double tolerance) {
        return dump(to_json(probe(poly(text), curve_from_json(nlohmann::json::parse(curve)),
                                  probe_options(truncation, tolerance))));
      },
      py::arg("text"), py::arg("curve"), py::arg("truncation") = py::none(), py::arg("tolerance") = 1e-9);

  m.def(
      "lift_subspace_curve",
      [](const std::string& text, const std::string& curve, const std::vector<int>& indices, std::optional<int> N) {
        IndexSet I;
        for (int j : indices) I.push_back(j - 1);
        return dump(to_json(lift_subspace_curve(poly(text), curve_from_json(nlohmann::json::parse(curve)), I, N)));
      },
      py::arg("text"), py::arg("curve"), py::arg("indices"), py::arg("N") = py::none());

  m.def(
      "sweep",
      [](const std::string& text, int budget, int samples, std::uint64_t seed) {
        SweepOptions o;
        o.budget = budget;
        o.samples = samples;
        o.seed = seed;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = sweep_monomial_curves(poly(text), o);
        }
        return dump(to_json(r));
      },
      py::arg("text"), py::arg("budget"), py::arg("samples"), py::arg("seed") = 20240601);

  m.def(
      "milnor_number", [](const std::string& text) { return to_string(milnor_number(poly(text))); }, py::arg("text"));

  m.def(
      "power_exponent",
      [](const std::string& theta0, int mult) { return to_string(power_exponent(parse_rational(theta0), mult)); },
      py::arg("theta0"), py::arg("m"));

  m.def(
      "eta_to_theta",
      [](const std::string& v) { return to_string(eta_theta_convert(parse_rational(v), Conversion::EtaToTheta)); },
      py::arg("eta"));
  m.def(
      "theta_to_eta",
      [](const std::string& v) { return to_string(eta_theta_convert(parse_rational(v), Conversion::ThetaToEta)); },
      py::arg("theta"));

  m.def(
      "diagram_svg",
      [](const std::string& text) {
        DualDiagram d = build_dual_diagram(poly(text));
        return simplex_svg(d, export_simplex_projection(d));
      },
      py::arg("text"));
  m.def(
      "diagram_json",
      [](const std::string& text) {
        DualDiagram d = build_dual_diagram(poly(text));
        return dump(simplex_json(d, export_simplex_projection(d)));
      },
      py::arg("text"));
}
