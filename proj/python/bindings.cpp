#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vz/asympt.hpp"
#include "vz/cli.hpp"
#include "vz/error.hpp"
#include "vz/lemniscate.hpp"
#include "vz/limitmeasure.hpp"
#include "vz/ratcalc.hpp"
#include "vz/rootfind.hpp"
#include "vz/voronoi.hpp"

namespace py = pybind11;
using namespace vz;

namespace {

PolarForm polar_form(const std::vector<cplx>& locations, const std::vector<std::vector<cplx>>& coeffs) {
  if (locations.size() != coeffs.size()) throw Error(ErrorKind::InvalidArgument, "one coefficient list per pole");
  PolarForm q;
  for (std::size_t k = 0; k < locations.size(); ++k) q.poles.push_back({locations[k], coeffs[k]});
  q.validate();
  return q;
}

py::dict edge_dict(const VoronoiDiagram& v, const EdgeSegment& e) {
  py::dict d;
  d["i"] = e.i;
  d["j"] = e.j;
  d["midpoint"] = e.midpoint;
  d["direction"] = e.direction;
  d["t_lo"] = e.t_lo;
  d["t_hi"] = e.t_hi;
  d["mass"] = edge_mass(v, e);
  return d;
}

}  // namespace

PYBIND11_MODULE(_voronoizeros, m) {
  m.doc() = "Zeros of high derivatives of rational functions and their Voronoi limit measure";

  static py::exception<Error> error(m, "VZError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "partial_fractions",
      [](const std::vector<cplx>& numerator, const std::vector<std::pair<cplx, int>>& poles) {
        const PolarForm q = polar_decompose(DensePolynomial(numerator), poles);
        std::vector<std::pair<cplx, std::vector<cplx>>> out;
        for (const auto& p : q.poles) out.emplace_back(p.location, p.coeffs);
        return out;
      },
      py::arg("numerator"), py::arg("poles"),
      "Polar parts of numerator / prod (z - z_k)^r_k; numerator coefficients lowest first.");

  m.def(
      "derivative_zeros",
      [](const std::vector<cplx>& locations, const std::vector<std::vector<cplx>>& coeffs, int n, bool extended) {
        const auto state = derivative_state(polar_form(locations, coeffs), n);
        auto nr = numerator_roots(state, extended ? Precision::Extended : Precision::Double);
        return nr.roots.roots;
      },
      py::arg("locations"), py::arg("coeffs"), py::arg("n"), py::arg("extended") = false,
      "Zeros of the n-th derivative of sum_k sum_j coeffs[k][j-1] / (z - locations[k])^j.");

  m.def(
      "numerator_degree",
      [](const std::vector<cplx>& locations, const std::vector<std::vector<cplx>>& coeffs, int n) {
        return numerator<cplx>(derivative_state(polar_form(locations, coeffs), n)).degree;
      },
      py::arg("locations"), py::arg("coeffs"), py::arg("n"));

  m.def("twopole_zeros", &twopole_zeros, py::arg("a1"), py::arg("a2"), py::arg("z1"), py::arg("z2"), py::arg("n"));

  py::class_<VoronoiDiagram>(m, "VoronoiDiagram")
      .def(py::init(&VoronoiDiagram::build), py::arg("sites"))
      .def_property_readonly("sites", &VoronoiDiagram::sites)
      .def_property_readonly("vertices", &VoronoiDiagram::vertices)
      .def_property_readonly("diameter", &VoronoiDiagram::diameter)
      .def_property_readonly("edges",
                             [](const VoronoiDiagram& v) {
                               py::list out;
                               for (const auto& e : v.edges()) out.append(edge_dict(v, e));
                               return out;
                             })
      .def("total_mass", [](const VoronoiDiagram& v) { return total_mass(v); })
      .def("psi", [](const VoronoiDiagram& v, cplx z) { return PsiEvaluator(v.sites()).psi(z); }, py::arg("z"))
      .def(
          "potential", [](const VoronoiDiagram& v, cplx z, int nodes) { return potential_from_measure(v, z, nodes); },
          py::arg("z"), py::arg("nodes") = 20)
      .def(
          "cauchy", [](const VoronoiDiagram& v, cplx z) { return CauchyEvaluator(v)(z); }, py::arg("z"))
      .def(
          "distance_to_skeleton", [](const VoronoiDiagram& v, cplx z) { return distance_to_skeleton(v, z); },
          py::arg("z"))
      .def("to_json", [](const VoronoiDiagram& v) { return to_json(v); });

  m.def(
      "potential_l1",
      [](const std::vector<cplx>& roots, int n, const VoronoiDiagram& v, cplx center, double half_side, int grid) {
        return potential_l1(empirical(roots, n), v, Window{center, half_side}, grid).value;
      },
      py::arg("roots"), py::arg("n"), py::arg("diagram"), py::arg("center"), py::arg("half_side"),
      py::arg("grid") = 200);

  m.def(
      "lemniscate_roots",
      [](const std::vector<std::vector<cplx>>& polys, std::vector<int> multipliers, int n) {
        LemniscateProblem p;
        for (const auto& c : polys) p.polys.emplace_back(c);
        p.multipliers = std::move(multipliers);
        p.validate();
        return lemniscate_roots(p, n).roots;
      },
      py::arg("polys"), py::arg("multipliers") = std::vector<int>{}, py::arg("n"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> owned{"vzeros"};
        owned.insert(owned.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& a : owned) argv.push_back(a.data());
        return cli::main(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"), "Runs the command-line tool in-process and returns its exit status.");
}
