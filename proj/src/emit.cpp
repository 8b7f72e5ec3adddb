#include "fgl/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fgl {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory: " + dir);
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["mode"] = to_string(cfg.mode);
  j["young"]["family"] = cfg.young_family;
  if (cfg.young_family == "power") {
    j["young"]["p"] = cfg.young_p;
  } else {
    json terms = json::array();
    for (const auto& t : cfg.young_terms) {
      terms.push_back({t.coeff, t.exponent});
    }
    j["young"]["terms"] = terms;
  }
  j["domain"] = {{"lo", cfg.domain_lo},
                 {"hi", cfg.domain_hi},
                 {"n_interior", cfg.n_interior},
                 {"collar", cfg.collar}};
  j["s"] = cfg.s;
  switch (cfg.bc) {
    case BoundaryCondition::dirichlet: j["bc"] = "dirichlet"; break;
    case BoundaryCondition::neumann: j["bc"] = "neumann"; break;
    case BoundaryCondition::robin: j["bc"] = "robin"; break;
  }
  if (cfg.bc == BoundaryCondition::robin) {
    if (cfg.beta_constant) {
      j["beta"] = *cfg.beta_constant;
    } else {
      j["beta"] = cfg.beta_table;
    }
  }
  j["alpha"] = cfg.alphas.size() == 1 ? json(cfg.alphas[0]) : json(cfg.alphas);
  j["objective"] =
      cfg.objective == SweepObjective::minimize_J ? "min-j" : "max-i";
  j["seed"] = cfg.seed;
  j["solver"] = {{"tol_residual", cfg.tol_residual},
                 {"tol_constraint", cfg.tol_constraint},
                 {"max_iter", cfg.max_iter},
                 {"step_init", cfg.step_init},
                 {"initial_guess", cfg.initial_guess}};
  j["minimax"] = {{"basis_pairs", cfg.minimax_basis_pairs},
                  {"theta_samples", cfg.minimax_theta_samples}};
  j["verify"] = {{"samples", cfg.verify_samples}};
  return j;
}

json eigenpair_json(const EigenPair& ep) {
  return {{"lambda", ep.lambda},
          {"value_I", ep.value_I},
          {"value_J", ep.value_J},
          {"residual_norm", ep.residual_norm},
          {"iterations", ep.iterations},
          {"converged", ep.converged},
          {"constraint", ep.constraint == ConstraintKind::prescribed_I
                             ? "prescribed-I"
                             : "prescribed-J"},
          {"upper_bound", ep.upper_bound}};
}

void write_results_json(const std::string& out_dir, json body,
                        double wall_seconds) {
  body["version"] = version_string();
  body["wall_time_seconds"] = wall_seconds;
  write_file(out_dir + "/results.json", body.dump(2) + "\n");
}

std::string history_csv(const std::vector<IterationRecord>& history) {
  std::ostringstream out;
  out << "iteration,J,I,lambda,residual\r\n";
  for (const auto& rec : history) {
    out << rec.iteration << "," << fmt17(rec.J) << "," << fmt17(rec.I) << ","
        << fmt17(rec.lambda) << "," << fmt17(rec.residual) << "\r\n";
  }
  return out.str();
}

std::string eigenfunction_csv(const Field& u) {
  std::ostringstream out;
  out << "x,u\r\n";
  const Grid1D& grid = u.grid();
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    out << fmt17(grid.node(i)) << "," << fmt17(u[i]) << "\r\n";
  }
  return out.str();
}

}  // namespace

void write_solve_outputs(const std::string& out_dir, const RunConfig& cfg,
                         const EigenPair& result, double wall_seconds) {
  ensure_dir(out_dir);
  json body;
  body["config"] = config_echo(cfg);
  body["mode"] = to_string(cfg.mode);
  body["result"] = eigenpair_json(result);
  write_results_json(out_dir, std::move(body), wall_seconds);
  write_file(out_dir + "/history.csv", history_csv(result.history));
  write_file(out_dir + "/eigenfunction.csv", eigenfunction_csv(result.u));
}

void write_sweep_outputs(const std::string& out_dir, const RunConfig& cfg,
                         const SweepResult& sweep, double wall_seconds) {
  ensure_dir(out_dir);
  json rows = json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"alpha", row.alpha},
                    {"lambda", row.lambda},
                    {"value", row.value},
                    {"converged", row.converged},
                    {"iterations", row.iterations},
                    {"residual", row.residual}});
  }
  json body;
  body["config"] = config_echo(cfg);
  body["mode"] = to_string(cfg.mode);
  body["rows"] = rows;
  body["inf_lambda"] = sweep.inf_lambda;
  write_results_json(out_dir, std::move(body), wall_seconds);

  std::ostringstream csv;
  csv << "alpha,lambda,value,converged,iterations,residual\r\n";
  for (const auto& row : sweep.rows) {
    csv << fmt17(row.alpha) << "," << fmt17(row.lambda) << ","
        << fmt17(row.value) << "," << (row.converged ? 1 : 0) << ","
        << row.iterations << "," << fmt17(row.residual) << "\r\n";
  }
  write_file(out_dir + "/sweep.csv", csv.str());
  write_file(out_dir + "/history.csv", history_csv(sweep.last_history));
  write_file(out_dir + "/eigenfunction.csv", eigenfunction_csv(sweep.last_u));
}

void write_oracle_outputs(const std::string& out_dir, const RunConfig& cfg,
                          const SpectrumP2& spectrum, double wall_seconds) {
  ensure_dir(out_dir);
  json body;
  body["config"] = config_echo(cfg);
  body["mode"] = to_string(cfg.mode);
  body["eigenvalues"] = spectrum.eigenvalues;
  write_results_json(out_dir, std::move(body), wall_seconds);

  std::ostringstream csv;
  csv << "index,eigenvalue\r\n";
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    csv << k << "," << fmt17(spectrum.eigenvalues[k]) << "\r\n";
  }
  write_file(out_dir + "/eigenvalues.csv", csv.str());
}

void write_verify_outputs(const std::string& out_dir, const RunConfig& cfg,
                          const VerifyReport& report, double wall_seconds) {
  ensure_dir(out_dir);
  json props = json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"samples", p.samples},
                     {"violations", p.violations},
                     {"worst_margin", p.worst_margin},
                     {"hard", p.hard},
                     {"pass", p.pass}});
  }
  json body;
  body["config"] = config_echo(cfg);
  body["mode"] = to_string(cfg.mode);
  body["properties"] = props;
  body["all_hard_pass"] = report.all_hard_pass();
  write_results_json(out_dir, std::move(body), wall_seconds);
  write_file(out_dir + "/verify.txt", render_verify_report(report));
}

std::string render_results_report(const std::string& dir) {
  const std::string path = dir + "/results.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  json body = json::parse(in);

  std::ostringstream out;
  out << "results: " << dir << "\n";
  out << "mode:    " << body.value("mode", std::string("?")) << "\n";
  if (body.contains("result")) {
    const json& r = body["result"];
    char line[200];
    std::snprintf(line, sizeof(line),
                  "lambda=%.12g  I=%.12g  J=%.12g  residual=%.3g\n",
                  r.value("lambda", 0.0), r.value("value_I", 0.0),
                  r.value("value_J", 0.0), r.value("residual_norm", 0.0));
    out << line;
    out << "iterations=" << r.value("iterations", 0)
        << "  converged=" << (r.value("converged", false) ? "yes" : "no");
    if (r.value("upper_bound", false)) out << "  (upper bound)";
    out << "\n";
  }
  if (body.contains("rows")) {
    out << "alpha        lambda            value        converged\n";
    for (const auto& row : body["rows"]) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-10.6g  %-16.12g  %-12.8g  %s\n",
                    row.value("alpha", 0.0), row.value("lambda", 0.0),
                    row.value("value", 0.0),
                    row.value("converged", false) ? "yes" : "no");
      out << line;
    }
    out << "inf_lambda = " << fmt17(body.value("inf_lambda", 0.0)) << "\n";
  }
  if (body.contains("eigenvalues")) {
    const auto& eigs = body["eigenvalues"];
    out << "eigenvalues (" << eigs.size() << "):";
    for (std::size_t k = 0; k < std::min<std::size_t>(eigs.size(), 8); ++k) {
      out << " " << fmt17(eigs[k].get<double>());
    }
    if (eigs.size() > 8) out << " ...";
    out << "\n";
  }
  if (body.contains("properties")) {
    out << "property                          violations  worst margin\n";
    for (const auto& p : body["properties"]) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-32s  %10zu  %12.3e %s\n",
                    p.value("name", std::string("?")).c_str(),
                    static_cast<std::size_t>(p.value("violations", 0)),
                    p.value("worst_margin", 0.0),
                    p.value("pass", false) ? "pass" : "FAIL");
      out << line;
    }
  }
  if (body.contains("wall_time_seconds")) {
    out << "wall time: " << body["wall_time_seconds"].get<double>() << " s\n";
  }
  return out.str();
}

}  // namespace fgl
