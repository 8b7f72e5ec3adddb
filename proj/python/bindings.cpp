#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fgl/config.hpp"
#include "fgl/oracle.hpp"
#include "fgl/solver.hpp"
#include "fgl/verify.hpp"

namespace py = pybind11;
using namespace fgl;

namespace {

std::vector<double> field_values(const Field& f) {
  return {f.values().begin(), f.values().end()};
}

BcSpec make_bc(const Grid1D& grid, const std::string& kind, py::object beta) {
  if (kind == "dirichlet") return BcSpec::dirichlet();
  if (kind == "neumann") return BcSpec::neumann();
  if (kind != "robin") {
    throw py::value_error("bc must be 'dirichlet', 'neumann' or 'robin'");
  }
  if (beta.is_none()) throw py::value_error("robin bc needs beta");
  if (py::isinstance<py::float_>(beta) || py::isinstance<py::int_>(beta)) {
    return BcSpec::robin(RobinWeight::constant(grid, beta.cast<double>()));
  }
  auto table = beta.cast<std::vector<double>>();
  return BcSpec::robin(RobinWeight::table(grid, table));
}

SolverConfig make_solver_config(double alpha, double s, const BcSpec& bc,
                                double tol_residual, double tol_constraint,
                                int max_iter, double step_init,
                                std::uint64_t seed,
                                const std::string& initial_guess,
                                py::object supplied) {
  SolverConfig cfg;
  cfg.alpha = alpha;
  cfg.s = s;
  cfg.bc = bc;
  cfg.tol_residual = tol_residual;
  cfg.tol_constraint = tol_constraint;
  cfg.max_iter = max_iter;
  cfg.step_init = step_init;
  cfg.seed = seed;
  if (initial_guess == "first-linear-mode") {
    cfg.initial_guess = InitialGuess::first_linear_mode;
  } else if (initial_guess == "random-symmetric") {
    cfg.initial_guess = InitialGuess::random_symmetric;
  } else if (initial_guess == "supplied") {
    cfg.initial_guess = InitialGuess::supplied;
  } else {
    throw py::value_error("unknown initial_guess");
  }
  if (!supplied.is_none()) {
    cfg.supplied_guess = supplied.cast<std::vector<double>>();
    cfg.initial_guess = InitialGuess::supplied;
  }
  return cfg;
}

py::dict eigenpair_dict(const EigenPair& ep) {
  py::dict d;
  d["lambda"] = ep.lambda;
  d["u"] = field_values(ep.u);
  d["value_I"] = ep.value_I;
  d["value_J"] = ep.value_J;
  d["residual_norm"] = ep.residual_norm;
  d["iterations"] = ep.iterations;
  d["converged"] = ep.converged;
  d["upper_bound"] = ep.upper_bound;
  d["constraint"] = ep.constraint == ConstraintKind::prescribed_I
                        ? "prescribed-I"
                        : "prescribed-J";
  return d;
}

BoundaryCondition bc_tag(const std::string& kind) {
  if (kind == "dirichlet") return BoundaryCondition::dirichlet;
  if (kind == "neumann") return BoundaryCondition::neumann;
  if (kind == "robin") return BoundaryCondition::robin;
  throw py::value_error("bc must be 'dirichlet', 'neumann' or 'robin'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "variational eigenvalues of the discretized fractional g-Laplacian";

  py::class_<YoungFunction>(m, "YoungFunction")
      .def_static("power", &YoungFunction::power, py::arg("p"))
      .def_static(
          "power_sum",
          [](const std::vector<std::pair<double, double>>& terms) {
            std::vector<PowerTerm> ts;
            for (const auto& [a, p] : terms) ts.push_back({a, p});
            return YoungFunction::power_sum(std::move(ts));
          },
          py::arg("terms"))
      .def_static(
          "custom",
          [](std::function<double(double)> G, std::function<double(double)> g,
             int samples) {
            return YoungFunction::custom(std::move(G), std::move(g), samples);
          },
          py::arg("G"), py::arg("g"), py::arg("exponent_samples") = 4096)
      .def("G", &YoungFunction::G, py::arg("t"))
      .def("g", &YoungFunction::g, py::arg("t"))
      .def("gtilde", &YoungFunction::gtilde, py::arg("t"))
      .def("gtilde_quadrature", &YoungFunction::gtilde_quadrature,
           py::arg("t"), py::arg("abs_tol") = 1e-12)
      .def("invert_G", &YoungFunction::invert_G, py::arg("y"))
      .def("invert_g", &YoungFunction::invert_g, py::arg("y"))
      .def("p_minus", &YoungFunction::p_minus)
      .def("p_plus", &YoungFunction::p_plus)
      .def("exponents", &YoungFunction::exponents, py::arg("sample_count"))
      .def("xi_bounds", &YoungFunction::xi_bounds, py::arg("t"))
      .def("is_power", &YoungFunction::is_power)
      .def_property_readonly("family", &YoungFunction::family_name);

  m.def(
      "verify_structure",
      [](const YoungFunction& F, double s, int n, int convexity_samples,
         std::uint64_t seed) {
        const StructureReport r =
            verify_structure(F, s, n, convexity_samples, seed);
        py::dict d;
        d["p_minus"] = r.p_minus;
        d["p_plus"] = r.p_plus;
        d["growth_ok"] = r.growth_ok;
        d["sqrt_convex_ok"] = r.sqrt_convex_ok;
        d["lower_integral_finite"] = r.lower_integral_finite;
        d["upper_integral_infinite"] = r.upper_integral_infinite;
        d["low_tail_exponent"] = r.low_tail_exponent;
        d["high_tail_exponent"] = r.high_tail_exponent;
        d["solver_admissible"] = r.solver_admissible();
        d["all_pass"] = r.all_pass();
        return d;
      },
      py::arg("young"), py::arg("s"), py::arg("n") = 1,
      py::arg("convexity_samples") = 2048, py::arg("seed") = 42);

  py::class_<Grid1D>(m, "Grid1D")
      .def_static("build", &Grid1D::build, py::arg("omega_lo"),
                  py::arg("omega_hi"), py::arg("n_interior"),
                  py::arg("collar_factor"))
      .def_property_readonly("spacing", &Grid1D::spacing)
      .def_property_readonly("node_count", &Grid1D::node_count)
      .def_property_readonly("interior_count", &Grid1D::interior_count)
      .def_property_readonly("exterior_count", &Grid1D::exterior_count)
      .def("node", &Grid1D::node, py::arg("i"))
      .def("nodes",
           [](const Grid1D& g) {
             return std::vector<double>(g.nodes().begin(), g.nodes().end());
           })
      .def("is_interior", &Grid1D::is_interior, py::arg("i"));

  py::class_<Field>(m, "Field")
      .def(py::init([](const Grid1D& grid, const std::string& bc,
                       const std::vector<double>& values) {
             return Field(grid, bc_tag(bc), values);
           }),
           py::arg("grid"), py::arg("bc"), py::arg("values"),
           py::keep_alive<1, 2>())
      .def("values", &field_values)
      .def("__len__", &Field::size)
      .def("__getitem__",
           [](const Field& f, std::size_t i) { return f[i]; });

  py::class_<ModularWorkspace>(m, "Workspace")
      .def(py::init<const YoungFunction&, const Grid1D&, double>(),
           py::arg("young"), py::arg("grid"), py::arg("s"),
           py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
      .def("bulk", &ModularWorkspace::bulk, py::arg("u"))
      .def(
          "gagliardo",
          [](const ModularWorkspace& ws, const Field& u, const std::string& kind) {
            return ws.gagliardo(u, kind == "full" ? GagliardoKind::full
                                                  : GagliardoKind::star);
          },
          py::arg("u"), py::arg("kind") = "full")
      .def(
          "luxemburg_norm",
          [](const ModularWorkspace& ws, const Field& u, const std::string& kind) {
            if (kind == "bulk") return ws.luxemburg_norm(u, ModularKind::bulk());
            if (kind == "full")
              return ws.luxemburg_norm(u, ModularKind::gagliardo_full());
            if (kind == "star")
              return ws.luxemburg_norm(u, ModularKind::gagliardo_star());
            throw py::value_error("kind must be bulk, full or star");
          },
          py::arg("u"), py::arg("kind") = "bulk")
      .def(
          "holder_check",
          [](const ModularWorkspace& ws, const Field& u, const Field& v) {
            return ws.holder_check(u, v);
          },
          py::arg("u"), py::arg("v"))
      .def(
          "j_functional",
          [](const ModularWorkspace& ws, const Field& u, const std::string& bc,
             py::object beta) {
            return j_functional(ws, u, make_bc(ws.grid(), bc, beta));
          },
          py::arg("u"), py::arg("bc") = "dirichlet",
          py::arg("beta") = py::none())
      .def(
          "grad_j",
          [](const ModularWorkspace& ws, const Field& u, const std::string& bc,
             py::object beta) {
            return grad_j(ws, u, make_bc(ws.grid(), bc, beta)).values;
          },
          py::arg("u"), py::arg("bc") = "dirichlet",
          py::arg("beta") = py::none())
      .def(
          "grad_bulk",
          [](const ModularWorkspace& ws, const Field& u) {
            return grad_bulk(ws.young(), ws.grid(), u).values;
          },
          py::arg("u"))
      .def(
          "pairing_star",
          [](const ModularWorkspace& ws, const Field& u, const Field& v) {
            return pairing_star(ws, u, v);
          },
          py::arg("u"), py::arg("v"))
      .def(
          "normal_derivative",
          [](const ModularWorkspace& ws, const Field& u, std::size_t node) {
            return normal_derivative(ws, u, node);
          },
          py::arg("u"), py::arg("exterior_node"))
      .def(
          "rayleigh_bar",
          [](const ModularWorkspace& ws, const Field& u, const std::string& bc,
             py::object beta) {
            return rayleigh_bar(ws, u, make_bc(ws.grid(), bc, beta));
          },
          py::arg("u"), py::arg("bc") = "dirichlet", py::arg("beta") = py::none());

  m.def(
      "oracle_spectrum",
      [](const Grid1D& grid, double s, const std::string& bc, py::object beta,
         std::size_t max_interior) {
        const SpectrumP2 spec =
            oracle_spectrum_p2(grid, s, make_bc(grid, bc, beta), max_interior);
        py::dict d;
        d["eigenvalues"] = spec.eigenvalues;
        d["eigenfields"] = spec.eigenfields;
        return d;
      },
      py::arg("grid"), py::arg("s"), py::arg("bc") = "dirichlet",
      py::arg("beta") = py::none(), py::arg("max_interior") = 512);

  const auto solve_binding = [](bool minimize) {
    return [minimize](const ModularWorkspace& ws, double alpha,
                      const std::string& bc, py::object beta,
                      double tol_residual, double tol_constraint, int max_iter,
                      double step_init, std::uint64_t seed,
                      const std::string& initial_guess, py::object supplied) {
      const BcSpec spec = make_bc(ws.grid(), bc, beta);
      const SolverConfig cfg = make_solver_config(
          alpha, ws.s(), spec, tol_residual, tol_constraint, max_iter,
          step_init, seed, initial_guess, supplied);
      return eigenpair_dict(minimize ? minimize_J_on_I(ws, cfg)
                                     : maximize_I_on_J(ws, cfg));
    };
  };
  m.def("minimize_j_on_i", solve_binding(true), py::arg("workspace"),
        py::arg("alpha") = 1.0, py::arg("bc") = "dirichlet",
        py::arg("beta") = py::none(), py::arg("tol_residual") = 1e-8,
        py::arg("tol_constraint") = 1e-10, py::arg("max_iter") = 5000,
        py::arg("step_init") = 1.0, py::arg("seed") = 42,
        py::arg("initial_guess") = "first-linear-mode",
        py::arg("supplied_guess") = py::none());
  m.def("maximize_i_on_j", solve_binding(false), py::arg("workspace"),
        py::arg("alpha") = 1.0, py::arg("bc") = "dirichlet",
        py::arg("beta") = py::none(), py::arg("tol_residual") = 1e-8,
        py::arg("tol_constraint") = 1e-10, py::arg("max_iter") = 5000,
        py::arg("step_init") = 1.0, py::arg("seed") = 42,
        py::arg("initial_guess") = "first-linear-mode",
        py::arg("supplied_guess") = py::none());

  m.def(
      "minimax_k2",
      [](const ModularWorkspace& ws, double alpha, const std::string& bc,
         py::object beta, int basis_pairs, int theta_samples,
         std::uint64_t seed) {
        const BcSpec spec = make_bc(ws.grid(), bc, beta);
        SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.s = ws.s();
        cfg.bc = spec;
        cfg.seed = seed;
        return eigenpair_dict(minimax_k2(ws, cfg, basis_pairs, theta_samples));
      },
      py::arg("workspace"), py::arg("alpha") = 1.0, py::arg("bc") = "dirichlet",
      py::arg("beta") = py::none(), py::arg("basis_pairs") = 4,
      py::arg("theta_samples") = 256, py::arg("seed") = 42);

  m.def(
      "sweep_alpha",
      [](const ModularWorkspace& ws, const std::vector<double>& alphas,
         const std::string& bc, py::object beta, const std::string& objective,
         double tol_residual, int max_iter, std::uint64_t seed) {
        const BcSpec spec = make_bc(ws.grid(), bc, beta);
        SolverConfig cfg;
        cfg.s = ws.s();
        cfg.bc = spec;
        cfg.tol_residual = tol_residual;
        cfg.max_iter = max_iter;
        cfg.seed = seed;
        cfg.record_history = false;
        const SweepResult sw =
            sweep_alpha(ws, cfg, alphas,
                        objective == "max-i" ? SweepObjective::maximize_I
                                             : SweepObjective::minimize_J);
        py::list rows;
        for (const auto& row : sw.rows) {
          py::dict d;
          d["alpha"] = row.alpha;
          d["lambda"] = row.lambda;
          d["value"] = row.value;
          d["converged"] = row.converged;
          d["iterations"] = row.iterations;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["inf_lambda"] = sw.inf_lambda;
        return out;
      },
      py::arg("workspace"), py::arg("alphas"), py::arg("bc") = "dirichlet",
      py::arg("beta") = py::none(), py::arg("objective") = "min-j",
      py::arg("tol_residual") = 1e-8, py::arg("max_iter") = 5000,
      py::arg("seed") = 42);

  m.def("oracle_p_lower", &oracle_p_lower, py::arg("grid"), py::arg("s"),
        py::arg("p"), py::arg("alpha") = 1.0);

  m.def(
      "run_verify",
      [](const YoungFunction& F, const Grid1D& grid, double s,
         std::size_t samples, std::uint64_t seed) {
        const VerifyReport report = run_verify(F, grid, s, samples, seed);
        py::list props;
        for (const auto& p : report.properties) {
          py::dict d;
          d["name"] = p.name;
          d["samples"] = p.samples;
          d["violations"] = p.violations;
          d["worst_margin"] = p.worst_margin;
          d["hard"] = p.hard;
          d["pass"] = p.pass;
          props.append(d);
        }
        py::dict out;
        out["properties"] = props;
        out["all_hard_pass"] = report.all_hard_pass();
        return out;
      },
      py::arg("young"), py::arg("grid"), py::arg("s"),
      py::arg("samples") = 10000, py::arg("seed") = 42);

  m.attr("__version__") = "0.1.0";
}
