#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cqnp/error.hpp"
#include "cqnp/nonlinearity.hpp"
#include "cqnp/scenarios.hpp"
#include "cqnp/solver1d.hpp"
#include "cqnp/width.hpp"

namespace py = pybind11;
using namespace cqnp;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict ground_state(const std::string& model, double g3, double g5, double lambda, double half_width,
                      std::size_t points, double dt, double mu_tol, std::size_t max_iters) {
  const auto id = parse_model(model);
  if (!id || *id == ModelId::GPE3D) throw InvalidArgument("unknown 1D model '" + model + "'");
  const ModelKind kind = *id == ModelId::NPGeneral   ? ModelKind::NPGeneral
                         : *id == ModelId::NPSECubic ? ModelKind::NPSECubic
                                                     : ModelKind::CQPolynomial;
  SolverConfig1D cfg;
  cfg.grid = Grid1D(half_width, points);
  cfg.model = NonlinearModel(kind, g3, g5);
  cfg.lambda = lambda;
  cfg.dt = dt;
  cfg.mu_tol = mu_tol;
  cfg.max_iters = max_iters;
  GroundStateResult gs = [&] {
    py::gil_scoped_release release;
    return ground_state_1d(cfg);
  }();
  py::dict out;
  out["x"] = to_array(cfg.grid.nodes());
  out["density"] = to_array(gs.phi.density());
  out["mu"] = gs.mu;
  out["energy"] = gs.energy;
  out["iterations"] = gs.iterations;
  out["converged"] = gs.converged;
  return out;
}

}  // namespace

PYBIND11_MODULE(_cqnp, m) {
  m.doc() = "Width cubic, nonpolynomial couplings and 1D ground states";

  py::register_exception<CollapseError>(m, "CollapseError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def(
      "solve_width",
      [](double a3, double a5) -> std::optional<double> {
        const WidthSolution w = solve_width({a3, a5});
        return w.valid() ? std::optional<double>(w.s) : std::nullopt;
      },
      py::arg("a3"), py::arg("a5"), "Largest positive root s of the width cubic, or None");
  m.def(
      "width_residual", [](double a3, double a5, double s) { return width_residual({a3, a5}, s); }, py::arg("a3"),
      py::arg("a5"), py::arg("s"));
  m.def(
      "weak_width", [](double a3, double a5) { return weak_width({a3, a5}); }, py::arg("a3"), py::arg("a5"));
  m.def(
      "width_map",
      [](double a3_min, double a3_max, double a5_min, double a5_max, std::size_t resolution) {
        const auto rows = width_map({a3_min, a3_max}, {a5_min, a5_max}, resolution);
        py::array_t<double> s({resolution, resolution});
        auto view = s.mutable_unchecked<2>();
        for (std::size_t k = 0; k < rows.size(); ++k) {
          view(k / resolution, k % resolution) = rows[k].solution.valid() ? rows[k].solution.s : NAN;
        }
        return s;
      },
      py::arg("a3_min") = -2.0, py::arg("a3_max") = 2.0, py::arg("a5_min") = -2.0, py::arg("a5_max") = 2.0,
      py::arg("resolution") = 401, "Width over a grid, indexed [a3, a5]; NaN where invalid");

  m.def(
      "np_general", [](double a3, double a5) { return np_general({a3, a5}); }, py::arg("a3"), py::arg("a5"));
  m.def(
      "np_general_radical", [](double a3, double a5) { return np_general_radical({a3, a5}); }, py::arg("a3"),
      py::arg("a5"));
  m.def("np_cubic", &np_cubic, py::arg("a3"));
  m.def(
      "np_poly", [](double a3, double a5) { return np_poly({a3, a5}); }, py::arg("a3"), py::arg("a5"));
  m.def("matched_g3", &matched_g3, py::arg("g5"), py::arg("peak_density"));

  m.def("ground_state_1d", &ground_state, py::arg("model") = "np", py::arg("g3") = 0.0, py::arg("g5") = 0.0,
        py::arg("lambda_") = 0.1, py::arg("half_width") = 20.0, py::arg("points") = 513, py::arg("dt") = 1e-3,
        py::arg("mu_tol") = 1e-9, py::arg("max_iters") = 200000,
        "Imaginary-time ground state; returns x, density, mu, energy, iterations, converged");

  m.def(
      "run",
      [](const std::string& scenario, const std::string& config_text) {
        const auto s = parse_scenario(scenario);
        if (!s) throw InvalidArgument("unknown scenario '" + scenario + "'");
        const RunConfig cfg = RunConfig::parse(config_text);
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_scenario(*s, cfg, err);
        }
        return py::make_tuple(code, err.str());
      },
      py::arg("scenario"), py::arg("config_text") = "",
      "Runs a scenario from config text; returns (exit_code, diagnostics)");
}
