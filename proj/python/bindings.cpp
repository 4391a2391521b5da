#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "geostable/acceptance.hpp"
#include "geostable/errors.hpp"
#include "geostable/levy.hpp"
#include "geostable/propagator.hpp"
#include "geostable/sampling.hpp"
#include "geostable/specfun.hpp"
#include "geostable/symbols.hpp"
#include "geostable/transform.hpp"

namespace py = pybind11;
using namespace geostable;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

SymbolEval symbol_for(const std::string& kind, const ParamCurves& pc) {
  if (kind == "gs1") return make_gs1_symbol(pc);
  if (kind == "gs2") return make_gs2_symbol(pc);
  if (kind == "multistable") return make_multistable_symbol(pc);
  if (kind == "gamma_inhom") return make_gamma_inhom_symbol(pc.b);
  if (kind == "vg_inhom") return make_vg_inhom_symbol(pc.b);
  if (kind == "stable") return make_stable_symbol(pc.alpha(0.0), pc.theta(0.0));
  throw DomainError("unknown symbol kind '" + kind + "'");
}

RngStream stream(std::uint64_t seed, std::uint64_t stream_id) { return RngStream{seed, stream_id}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-inhomogeneous geometric stable processes";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<AliasingError>(m, "AliasingError", PyExc_RuntimeError);

  py::class_<Curve>(m, "Curve")
      .def_static("constant", &Curve::constant)
      .def_static("piecewise_constant", &Curve::piecewise_constant, py::arg("knots"))
      .def_static("piecewise_linear", &Curve::piecewise_linear, py::arg("knots"))
      .def("__call__", &Curve::operator())
      .def("__repr__", &Curve::describe);

  py::class_<ParamCurves>(m, "ParamCurves")
      .def(py::init([](Curve alpha, Curve theta, Curve b, double t_max) {
             ParamCurves pc{std::move(alpha), std::move(theta), std::move(b), t_max, std::nullopt};
             pc.validate();
             return pc;
           }),
           py::arg("alpha"), py::arg("theta"), py::arg("b"), py::arg("t_max") = 1.0)
      .def_readonly("t_max", &ParamCurves::t_max);

  m.def("mittag_leffler", [](double a, double z) { return mittag_leffler(a, z); }, py::arg("alpha"), py::arg("z"));
  m.def("psi", &psi, py::arg("alpha"), py::arg("theta"), py::arg("xi"));

  m.def(
      "accumulated_exponent",
      [](const std::string& kind, const ParamCurves& pc, double s, double t, double xi) {
        return accumulated_exponent(symbol_for(kind, pc), s, t, xi);
      },
      py::arg("kind"), py::arg("curves"), py::arg("s"), py::arg("t"), py::arg("xi"),
      "integral of the characteristic exponent over [s, t]");

  m.def(
      "stable_sample",
      [](double a, double th, double t, std::size_t n, std::uint64_t seed, std::uint64_t sid, int threads) {
        return to_numpy(stable_sample(a, th, t, n, stream(seed, sid), threads));
      },
      py::arg("alpha"), py::arg("theta"), py::arg("t"), py::arg("n"), py::arg("seed") = 20240611,
      py::arg("stream_id") = 0, py::arg("threads") = 1);
  m.def(
      "gs_homog_sample",
      [](double a, double th, double b, double t, std::size_t n, std::uint64_t seed, std::uint64_t sid, int threads) {
        return to_numpy(gs_homog_sample(a, th, b, t, n, stream(seed, sid), threads));
      },
      py::arg("alpha"), py::arg("theta"), py::arg("b"), py::arg("t"), py::arg("n"), py::arg("seed") = 20240611,
      py::arg("stream_id") = 0, py::arg("threads") = 1);
  m.def(
      "gs1_terminal",
      [](const ParamCurves& pc, double t, int steps, std::size_t n, std::uint64_t seed, std::uint64_t sid,
         int threads) { return to_numpy(gs1_terminal(pc, t, steps, n, stream(seed, sid), threads)); },
      py::arg("curves"), py::arg("t"), py::arg("n_steps"), py::arg("n"), py::arg("seed") = 20240611,
      py::arg("stream_id") = 0, py::arg("threads") = 1);
  m.def(
      "gs2_terminal",
      [](const ParamCurves& pc, double t, int steps, std::size_t n, std::uint64_t seed, std::uint64_t sid,
         int threads) { return to_numpy(gs2_terminal(pc, t, steps, n, stream(seed, sid), threads)); },
      py::arg("curves"), py::arg("t"), py::arg("n_steps"), py::arg("n"), py::arg("seed") = 20240611,
      py::arg("stream_id") = 0, py::arg("threads") = 1);
  m.def(
      "vg_inhom_terminal",
      [](const Curve& b, double t, int steps, std::size_t n, const std::string& mode, std::uint64_t seed,
         std::uint64_t sid, int threads) {
        VgMode vm;
        if (mode == "brownian_subordination") vm = VgMode::brownian_subordination;
        else if (mode == "gamma_difference") vm = VgMode::gamma_difference;
        else throw DomainError("mode must be brownian_subordination or gamma_difference");
        return to_numpy(vg_inhom_terminal(b, t, steps, n, stream(seed, sid), vm, threads));
      },
      py::arg("b"), py::arg("t"), py::arg("n_steps"), py::arg("n"), py::arg("mode") = "brownian_subordination",
      py::arg("seed") = 20240611, py::arg("stream_id") = 0, py::arg("threads") = 1);

  m.def(
      "empirical_cf",
      [](const std::vector<double>& x, const std::vector<double>& xis) { return empirical_cf(x, xis); },
      py::arg("samples"), py::arg("xis"));
  m.def("stable_density", &stable_density, py::arg("alpha"), py::arg("theta"), py::arg("x"), py::arg("t") = 1.0);
  m.def(
      "tail_slope",
      [](const std::vector<double>& x, double q_lo, double q_hi) {
        const auto r = tail_slope_fit(x, q_lo, q_hi);
        return py::make_tuple(r.slope, r.slope_stderr);
      },
      py::arg("samples"), py::arg("q_lo") = 0.99, py::arg("q_hi") = 0.9999);

  m.def(
      "levy_gs1_sub", [](const ParamCurves& pc, double x, double t) { return levy_gs1_sub(pc, x, t).value; },
      py::arg("curves"), py::arg("x"), py::arg("t") = 0.0);
  m.def(
      "levy_gs2_series",
      [](double a, double th, const Curve& b, double x, double t) {
        const auto v = levy_gs2_series(a, th, b, x, t);
        return py::make_tuple(v.value, v.method);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("b"), py::arg("x"), py::arg("t") = 0.0);
  m.def(
      "levy_gs2_oracle",
      [](double a, double th, const Curve& b, double x, double t) { return levy_gs2_oracle(a, th, b, x, t).value; },
      py::arg("alpha"), py::arg("theta"), py::arg("b"), py::arg("x"), py::arg("t") = 0.0);
  m.def("laplace_exponent_check", &laplace_exponent_check, py::arg("alpha"), py::arg("b"), py::arg("lam"));

  m.def(
      "propagate_density",
      [](const std::string& kind, const ParamCurves& pc, double s, double t, std::size_t n, double extent,
         double sd) {
        const SpectralGrid grid(n, extent);
        const auto out = propagate_adjoint(gaussian_preset(grid, 0.0, sd), s, t, symbol_for(kind, pc));
        return py::make_tuple(to_numpy(grid.xs()), to_numpy(out.real()));
      },
      py::arg("kind"), py::arg("curves"), py::arg("s"), py::arg("t"), py::arg("n") = 4096, py::arg("extent") = 40.0,
      py::arg("initial_sd") = 0.05,
      "density at t of a process started from N(0, initial_sd^2) at s");

  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed, int threads) {
        AcceptanceOptions opt;
        opt.seed = seed;
        opt.threads = threads;
        const auto r = run_criterion(id, opt);
        py::list checks;
        for (const auto& c : r.checks)
          checks.append(py::dict(py::arg("name") = c.name, py::arg("measured") = c.measured,
                                 py::arg("relation") = c.relation, py::arg("expected") = c.expected,
                                 py::arg("pass") = c.pass));
        return py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("pass") = r.pass(),
                        py::arg("checks") = checks, py::arg("notes") = r.notes, py::arg("seconds") = r.seconds);
      },
      py::arg("id"), py::arg("seed") = 20240611, py::arg("threads") = 1);
}
