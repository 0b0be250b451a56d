#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dplab/errors.hpp"
#include "dplab/evolution.hpp"
#include "dplab/functionals.hpp"
#include "dplab/profile.hpp"
#include "dplab/spectrum.hpp"
#include "dplab/stability.hpp"

namespace py = pybind11;
using namespace dplab;

namespace {

SolitonProfile profile_for(const WaveParams& params, double L, std::size_t n, double tol) {
  if (L > 0.0) return compute_profile(params, SymmetricGrid(L, n), tol);
  return compute_profile(params, SymmetricGrid::for_params(params, 1e-12, n), tol);
}

py::dict index_dict(const IndexReport& r) {
  py::dict d;
  d["c"] = r.c;
  d["k"] = r.k;
  d["n_minus"] = r.n_minus;
  d["n_minus_matrix"] = r.n_minus_matrix;
  d["lambda_star"] = r.lambda_star;
  d["lambda_star_matrix"] = r.lambda_star_matrix;
  d["quad_form"] = r.quad_form;
  d["dSdc"] = r.dSdc;
  d["defect"] = r.defect;
  d["traveling_residual"] = r.traveling_residual;
  d["verdict"] = std::string(to_string(r.verdict));
  d["failing_clause"] = r.failing_clause;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solitary waves of the Degasperis-Procesi equation: profiles, spectra, stability";

  auto base = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  (void)base;

  py::class_<WaveParams>(m, "WaveParams")
      .def(py::init(&WaveParams::make), py::arg("c"), py::arg("k"))
      .def_property_readonly("c", &WaveParams::c)
      .def_property_readonly("k", &WaveParams::k)
      .def_property_readonly("phi_max", &WaveParams::phi_max)
      .def_property_readonly("phi_plus", &WaveParams::phi_plus)
      .def_property_readonly("tail_rate", &WaveParams::tail_rate)
      .def_property_readonly("essential_edge", &WaveParams::essential_edge)
      .def_property_readonly("lambda_sign_change", &WaveParams::lambda_sign_change)
      .def("__repr__", [](const WaveParams& p) {
        return "WaveParams(c=" + std::to_string(p.c()) + ", k=" + std::to_string(p.k()) + ")";
      });

  py::class_<SolitonProfile>(m, "SolitonProfile")
      .def_readonly("params", &SolitonProfile::params)
      .def_property_readonly("xi", [](const SolitonProfile& p) { return p.grid.points(); })
      .def_readonly("phi", &SolitonProfile::values)
      .def_readonly("phi_xi", &SolitonProfile::derivative)
      .def_readonly("phi_max", &SolitonProfile::phi_max)
      .def_readonly("first_integral_residual", &SolitonProfile::first_integral_residual)
      .def_readonly("evenness_defect", &SolitonProfile::evenness_defect)
      .def_property_readonly("half_width", [](const SolitonProfile& p) { return p.grid.half_width(); })
      .def_property_readonly("traveling_residual",
                             [](const SolitonProfile& p) { return traveling_residual(p); })
      .def("conserved", [](const SolitonProfile& p) {
        const auto q = conserved(p.field(), p.params.k());
        return py::dict(py::arg("M") = q.M, py::arg("H") = q.H, py::arg("S") = q.S);
      });

  m.def("compute_profile", &profile_for, py::arg("params"), py::arg("L") = 0.0,
        py::arg("n") = 4097, py::arg("tol") = 1e-8,
        "Profile on [-L, L] with n (odd) points; L = 0 sizes the domain from the tail rate.");
  m.def("S_closed_form", &S_closed_form, py::arg("c"), py::arg("k"));
  m.def("dSdc_closed_form", &dSdc_closed_form, py::arg("c"), py::arg("k"));
  m.def("S_quadrature", &S_quadrature_reduced, py::arg("profile"));

  m.def(
      "spectrum",
      [](const SolitonProfile& p, double bisection_tol) {
        SpectrumOptions options;
        options.bisection_tol = bisection_tol;
        const auto r = compute_spectrum(p, options);
        py::list eigs;
        for (const auto& e : r.eigenvalues) {
          eigs.append(py::dict(py::arg("lambda") = e.lambda, py::arg("even") = e.even,
                               py::arg("multiplicity") = e.multiplicity,
                               py::arg("residual") = e.residual));
        }
        py::dict d;
        d["essential"] = py::make_tuple(r.essential.lo, r.essential.hi);
        d["eigenvalues"] = eigs;
        d["lambda_star"] = r.lambda_star;
        d["negative_count"] = r.negative_count;
        d["theta_zero_at_origin"] = r.theta_zero_at_origin;
        return d;
      },
      py::arg("profile"), py::arg("bisection_tol") = 1e-12);

  m.def(
      "prufer_angle",
      [](const SolitonProfile& p, double lambda) {
        const auto t = prufer_shoot(lambda, p);
        return py::make_tuple(t.xi, t.theta);
      },
      py::arg("profile"), py::arg("lambda_"), "Angle trace theta(xi; lambda) on [-L, 0].");

  m.def(
      "qe_negativity",
      [](const SolitonProfile& p) {
        const auto q = qe_negativity_check(p);
        return py::dict(py::arg("qe") = q.qe.samples, py::arg("negative") = q.negative_on_positive_axis,
                        py::arg("max_on_positive_axis") = q.max_on_positive_axis,
                        py::arg("oddness_defect") = q.oddness_defect);
      },
      py::arg("profile"));

  m.def(
      "stability_verdict",
      [](const WaveParams& params, bool matrix_check, bool richardson) {
        IndexOptions options;
        options.matrix_check = matrix_check;
        options.richardson = richardson;
        py::gil_scoped_release release;
        const auto r = stability_verdict(params, options);
        py::gil_scoped_acquire acquire;
        return index_dict(r);
      },
      py::arg("params"), py::arg("matrix_check") = true, py::arg("richardson") = false);

  m.def(
      "evolve_soliton",
      [](const WaveParams& params, double T, double dt, std::size_t n, double noise, std::uint64_t seed) {
        const double period = periodic_grid_for(params, 1.0).period();
        const auto profile = periodize(params, PeriodicGrid(period, n));
        auto u0 = profile.field();
        if (noise > 0.0) {
          const auto v = random_smooth_field(profile.grid, seed);
          for (std::size_t i = 0; i < u0.samples.size(); ++i) u0.samples[i] += noise * v[i];
        }
        EvolutionConfig config;
        config.dt = dt;
        config.T = T;
        EvolutionResult r = [&] {
          py::gil_scoped_release release;
          return evolve(u0, params.k(), config);
        }();
        py::dict d;
        d["t_final"] = r.t_final;
        d["halted"] = r.halted;
        d["halt_reason"] = r.halt_reason;
        d["drift"] = py::dict(py::arg("M") = r.max_drift.M, py::arg("H") = r.max_drift.H,
                              py::arg("S") = r.max_drift.S);
        d["orbit_distance"] = orbit_distance(r.final_state, profile.field()).distance;
        d["period"] = period;
        d["u"] = r.final_state.samples;
        return d;
      },
      py::arg("params"), py::arg("T"), py::arg("dt") = 0.01, py::arg("n") = 512,
      py::arg("noise") = 0.0, py::arg("seed") = 1,
      "Runs the full flow from the periodized soliton, optionally perturbed.");
}
