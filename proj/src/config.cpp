#include "fgl/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "fgl/errors.hpp"

namespace fgl {

namespace {

struct Value {
  enum class Kind { number, boolean, string, array };
  Kind kind = Kind::number;
  double num = 0.0;
  bool flag = false;
  std::string str;
  std::vector<Value> array;
  int line = 0;
};

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::number: return "number";
    case Value::Kind::boolean: return "boolean";
    case Value::Kind::string: return "string";
    case Value::Kind::array: return "array";
  }
  return "?";
}

// --- line-level value parser -------------------------------------------

struct LineCursor {
  const std::string& text;
  std::size_t pos = 0;
  int line;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char take() {
    skip_ws();
    return pos < text.size() ? text[pos++] : '\0';
  }
  [[noreturn]] void fail(const std::string& message, const std::string& field = "") {
    throw ConfigError(message, line, field);
  }
};

std::string parse_key(LineCursor& c) {
  c.skip_ws();
  std::string key;
  while (c.pos < c.text.size()) {
    const char ch = c.text[c.pos];
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
        ch == '-' || ch == '.') {
      key.push_back(ch);
      ++c.pos;
    } else {
      break;
    }
  }
  if (key.empty()) c.fail("expected a key");
  return key;
}

Value parse_value(LineCursor& c);

Value parse_array(LineCursor& c) {
  Value v;
  v.kind = Value::Kind::array;
  v.line = c.line;
  c.take();  // '['
  if (c.peek() == ']') {
    c.take();
    return v;
  }
  while (true) {
    v.array.push_back(parse_value(c));
    const char ch = c.take();
    if (ch == ']') break;
    if (ch != ',') c.fail("expected ',' or ']' in array");
  }
  return v;
}

Value parse_value(LineCursor& c) {
  const char ch = c.peek();
  if (ch == '\0') c.fail("expected a value");
  Value v;
  v.line = c.line;
  if (ch == '"') {
    c.take();
    v.kind = Value::Kind::string;
    while (c.pos < c.text.size() && c.text[c.pos] != '"') {
      v.str.push_back(c.text[c.pos++]);
    }
    if (c.pos >= c.text.size()) c.fail("unterminated string");
    ++c.pos;  // closing quote
    return v;
  }
  if (ch == '[') return parse_array(c);
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    std::string word;
    while (c.pos < c.text.size() &&
           std::isalpha(static_cast<unsigned char>(c.text[c.pos]))) {
      word.push_back(c.text[c.pos++]);
    }
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::boolean;
      v.flag = word == "true";
      return v;
    }
    c.fail("unquoted value '" + word + "' (strings need quotes)");
  }
  // number
  std::size_t start = c.pos;
  while (c.pos < c.text.size() &&
         (std::isdigit(static_cast<unsigned char>(c.text[c.pos])) ||
          c.text[c.pos] == '+' || c.text[c.pos] == '-' ||
          c.text[c.pos] == '.' || c.text[c.pos] == 'e' ||
          c.text[c.pos] == 'E')) {
    ++c.pos;
  }
  const std::string token = c.text.substr(start, c.pos - start);
  try {
    std::size_t used = 0;
    v.num = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    c.fail("malformed number '" + token + "'");
  }
  v.kind = Value::Kind::number;
  return v;
}

// --- flat key table ------------------------------------------------------

struct FlatConfig {
  std::map<std::string, Value> entries;

  void insert(const std::string& key, Value v, int line) {
    if (entries.count(key)) {
      throw ConfigError("duplicate key", line, key);
    }
    v.line = line;
    entries.emplace(key, std::move(v));
  }

  std::optional<Value> take(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Value v = std::move(it->second);
    entries.erase(it);
    return v;
  }

  void reject_leftovers() const {
    if (!entries.empty()) {
      const auto& [key, value] = *entries.begin();
      throw ConfigError("unknown key", value.line, key);
    }
  }
};

void flatten_into(FlatConfig& flat, const std::string& prefix, LineCursor& c);

// Inline table: { k = v, k = v, ... } expands to dotted keys.
void parse_inline_table(FlatConfig& flat, const std::string& prefix,
                        LineCursor& c) {
  c.take();  // '{'
  if (c.peek() == '}') {
    c.take();
    return;
  }
  while (true) {
    flatten_into(flat, prefix, c);
    const char ch = c.take();
    if (ch == '}') break;
    if (ch != ',') c.fail("expected ',' or '}' in inline table");
  }
}

void flatten_into(FlatConfig& flat, const std::string& prefix, LineCursor& c) {
  const std::string key = parse_key(c);
  if (c.take() != '=') c.fail("expected '=' after key", key);
  const std::string full = prefix.empty() ? key : prefix + "." + key;
  if (c.peek() == '{') {
    parse_inline_table(flat, full, c);
  } else {
    flat.insert(full, parse_value(c), c.line);
  }
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

// --- typed extraction ----------------------------------------------------

double take_number(FlatConfig& flat, const std::string& key, double fallback) {
  auto v = flat.take(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::number) {
    throw ConfigError(std::string("expected a number, got ") + kind_name(v->kind),
                      v->line, key);
  }
  if (!std::isfinite(v->num)) throw ConfigError("non-finite number", v->line, key);
  return v->num;
}

long long take_integer(FlatConfig& flat, const std::string& key,
                       long long fallback) {
  auto v = flat.take(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::number || v->num != std::floor(v->num)) {
    throw ConfigError("expected an integer", v->line, key);
  }
  return static_cast<long long>(v->num);
}

std::string take_string(FlatConfig& flat, const std::string& key,
                        const std::string& fallback, int* line_out = nullptr) {
  auto v = flat.take(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::string) {
    throw ConfigError(std::string("expected a string, got ") + kind_name(v->kind),
                      v->line, key);
  }
  if (line_out != nullptr) *line_out = v->line;
  return v->str;
}

RunMode mode_from_string(const std::string& name, int line) {
  if (name == "solve-minJ") return RunMode::solve_min_j;
  if (name == "solve-maxI") return RunMode::solve_max_i;
  if (name == "minimax-k2") return RunMode::minimax_k2;
  if (name == "sweep") return RunMode::sweep;
  if (name == "verify") return RunMode::verify;
  if (name == "oracle") return RunMode::oracle;
  throw ConfigError("unknown mode '" + name + "'", line, "mode");
}

std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::solve_min_j: return "solve-minJ";
    case RunMode::solve_max_i: return "solve-maxI";
    case RunMode::minimax_k2: return "minimax-k2";
    case RunMode::sweep: return "sweep";
    case RunMode::verify: return "verify";
    case RunMode::oracle: return "oracle";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  FlatConfig flat;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = strip_comment(raw);
    LineCursor c{line, 0, line_no};
    if (c.done()) continue;
    flatten_into(flat, "", c);
    if (!c.done()) c.fail("trailing characters after value");
  }

  RunConfig cfg;

  if (auto v = flat.take("mode")) {
    if (v->kind != Value::Kind::string) {
      throw ConfigError("expected a string", v->line, "mode");
    }
    cfg.mode = mode_from_string(v->str, v->line);
    cfg.mode_explicit = true;
  }

  // young block
  {
    int fam_line = 0;
    cfg.young_family = take_string(flat, "young.family", "power", &fam_line);
    if (cfg.young_family == "power") {
      cfg.young_p = take_number(flat, "young.p", 2.0);
      if (!(cfg.young_p > 1.0)) {
        throw ConfigError("power exponent must be > 1", fam_line, "young.p");
      }
    } else if (cfg.young_family == "powersum") {
      auto terms = flat.take("young.terms");
      if (!terms || terms->kind != Value::Kind::array || terms->array.empty()) {
        throw ConfigError("powersum needs terms = [[coeff, exponent], ...]",
                          terms ? terms->line : fam_line, "young.terms");
      }
      for (const Value& t : terms->array) {
        if (t.kind != Value::Kind::array || t.array.size() != 2 ||
            t.array[0].kind != Value::Kind::number ||
            t.array[1].kind != Value::Kind::number) {
          throw ConfigError("each term must be [coeff, exponent]", terms->line,
                            "young.terms");
        }
        const double a = t.array[0].num;
        const double p = t.array[1].num;
        if (!(a > 0.0)) {
          throw ConfigError("term coefficients must be > 0", terms->line,
                            "young.terms");
        }
        if (!(p > 1.0)) {
          throw ConfigError("term exponents must be > 1", terms->line,
                            "young.terms");
        }
        cfg.young_terms.push_back({a, p});
      }
    } else {
      throw ConfigError("family must be \"power\" or \"powersum\"", fam_line,
                        "young.family");
    }
  }

  // domain block
  cfg.domain_lo = take_number(flat, "domain.lo", cfg.domain_lo);
  cfg.domain_hi = take_number(flat, "domain.hi", cfg.domain_hi);
  cfg.n_interior = static_cast<int>(
      take_integer(flat, "domain.n_interior", cfg.n_interior));
  cfg.collar = take_number(flat, "domain.collar", cfg.collar);
  if (!(cfg.domain_lo < cfg.domain_hi)) {
    throw ConfigError("domain.lo must be < domain.hi", 0, "domain.lo");
  }
  if (cfg.n_interior < 4) {
    throw ConfigError("n_interior must be >= 4", 0, "domain.n_interior");
  }
  if (!(cfg.collar > 0.0)) {
    throw ConfigError("collar must be > 0", 0, "domain.collar");
  }

  cfg.s = take_number(flat, "s", cfg.s);
  if (!(cfg.s > 0.0 && cfg.s < 1.0)) {
    throw ConfigError("s must lie in (0, 1)", 0, "s");
  }

  {
    int bc_line = 0;
    const std::string bc = take_string(flat, "bc", "dirichlet", &bc_line);
    if (bc == "dirichlet") {
      cfg.bc = BoundaryCondition::dirichlet;
    } else if (bc == "neumann") {
      cfg.bc = BoundaryCondition::neumann;
    } else if (bc == "robin") {
      cfg.bc = BoundaryCondition::robin;
    } else {
      throw ConfigError("bc must be dirichlet, neumann or robin", bc_line, "bc");
    }
    if (auto beta = flat.take("beta")) {
      if (cfg.bc != BoundaryCondition::robin) {
        throw ConfigError("beta is only meaningful for the robin bc",
                          beta->line, "beta");
      }
      if (beta->kind == Value::Kind::number) {
        if (!(beta->num >= 0.0)) {
          throw ConfigError("beta must be >= 0", beta->line, "beta");
        }
        cfg.beta_constant = beta->num;
      } else if (beta->kind == Value::Kind::array) {
        for (const Value& b : beta->array) {
          if (b.kind != Value::Kind::number || !(b.num >= 0.0)) {
            throw ConfigError("beta entries must be numbers >= 0", beta->line,
                              "beta");
          }
          cfg.beta_table.push_back(b.num);
        }
      } else {
        throw ConfigError("beta must be a number or an array", beta->line,
                          "beta");
      }
    } else if (cfg.bc == BoundaryCondition::robin) {
      throw ConfigError("robin bc requires beta", bc_line, "beta");
    }
  }

  if (auto alpha = flat.take("alpha")) {
    cfg.alphas.clear();
    if (alpha->kind == Value::Kind::number) {
      cfg.alphas.push_back(alpha->num);
    } else if (alpha->kind == Value::Kind::array) {
      for (const Value& a : alpha->array) {
        if (a.kind != Value::Kind::number) {
          throw ConfigError("alpha entries must be numbers", alpha->line,
                            "alpha");
        }
        cfg.alphas.push_back(a.num);
      }
    } else {
      throw ConfigError("alpha must be a number or an array", alpha->line,
                        "alpha");
    }
    for (std::size_t k = 0; k < cfg.alphas.size(); ++k) {
      if (!(cfg.alphas[k] > 0.0) || !std::isfinite(cfg.alphas[k])) {
        throw ConfigError("alpha must be finite and positive", alpha->line,
                          "alpha");
      }
      if (k > 0 && !(cfg.alphas[k] > cfg.alphas[k - 1])) {
        throw ConfigError("alpha list must be strictly ascending", alpha->line,
                          "alpha");
      }
    }
  }

  {
    int line = 0;
    const std::string obj = take_string(flat, "objective", "min-j", &line);
    if (obj == "min-j") {
      cfg.objective = SweepObjective::minimize_J;
    } else if (obj == "max-i") {
      cfg.objective = SweepObjective::maximize_I;
    } else {
      throw ConfigError("objective must be min-j or max-i", line, "objective");
    }
  }

  cfg.out_dir = take_string(flat, "out", cfg.out_dir);
  {
    const long long seed = take_integer(flat, "seed", 42);
    if (seed < 0) throw ConfigError("seed must be >= 0", 0, "seed");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }

  cfg.tol_residual = take_number(flat, "solver.tol_residual", 1e-8);
  cfg.tol_constraint = take_number(flat, "solver.tol_constraint", 1e-10);
  cfg.max_iter =
      static_cast<int>(take_integer(flat, "solver.max_iter", cfg.max_iter));
  cfg.step_init = take_number(flat, "solver.step_init", cfg.step_init);
  cfg.initial_guess =
      take_string(flat, "solver.initial_guess", cfg.initial_guess);
  if (!(cfg.tol_residual > 0.0) || !(cfg.tol_constraint > 0.0)) {
    throw ConfigError("solver tolerances must be > 0", 0, "solver.tol_residual");
  }
  if (cfg.max_iter < 1) {
    throw ConfigError("max_iter must be >= 1", 0, "solver.max_iter");
  }
  if (!(cfg.step_init > 0.0)) {
    throw ConfigError("step_init must be > 0", 0, "solver.step_init");
  }
  if (cfg.initial_guess != "first-linear-mode" &&
      cfg.initial_guess != "random-symmetric") {
    throw ConfigError(
        "initial_guess must be first-linear-mode or random-symmetric", 0,
        "solver.initial_guess");
  }

  cfg.minimax_basis_pairs = static_cast<int>(
      take_integer(flat, "minimax.basis_pairs", cfg.minimax_basis_pairs));
  cfg.minimax_theta_samples = static_cast<int>(
      take_integer(flat, "minimax.theta_samples", cfg.minimax_theta_samples));
  if (cfg.minimax_basis_pairs < 1) {
    throw ConfigError("basis_pairs must be >= 1", 0, "minimax.basis_pairs");
  }
  if (cfg.minimax_theta_samples < 16) {
    throw ConfigError("theta_samples must be >= 16", 0,
                      "minimax.theta_samples");
  }

  cfg.verify_samples = static_cast<int>(
      take_integer(flat, "verify.samples", cfg.verify_samples));
  if (cfg.verify_samples < 1) {
    throw ConfigError("verify samples must be >= 1", 0, "verify.samples");
  }

  flat.reject_leftovers();
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "mode = \"" << to_string(cfg.mode) << "\"\n";
  if (cfg.young_family == "power") {
    out << "young = { family = \"power\", p = " << fmt_num(cfg.young_p)
        << " }\n";
  } else {
    out << "young = { family = \"powersum\", terms = [";
    for (std::size_t k = 0; k < cfg.young_terms.size(); ++k) {
      if (k) out << ", ";
      out << "[" << fmt_num(cfg.young_terms[k].coeff) << ", "
          << fmt_num(cfg.young_terms[k].exponent) << "]";
    }
    out << "] }\n";
  }
  out << "domain = { lo = " << fmt_num(cfg.domain_lo)
      << ", hi = " << fmt_num(cfg.domain_hi)
      << ", n_interior = " << cfg.n_interior
      << ", collar = " << fmt_num(cfg.collar) << " }\n";
  out << "s = " << fmt_num(cfg.s) << "\n";
  switch (cfg.bc) {
    case BoundaryCondition::dirichlet: out << "bc = \"dirichlet\"\n"; break;
    case BoundaryCondition::neumann: out << "bc = \"neumann\"\n"; break;
    case BoundaryCondition::robin: out << "bc = \"robin\"\n"; break;
  }
  if (cfg.bc == BoundaryCondition::robin) {
    if (cfg.beta_constant) {
      out << "beta = " << fmt_num(*cfg.beta_constant) << "\n";
    } else {
      out << "beta = [";
      for (std::size_t k = 0; k < cfg.beta_table.size(); ++k) {
        if (k) out << ", ";
        out << fmt_num(cfg.beta_table[k]);
      }
      out << "]\n";
    }
  }
  if (cfg.alphas.size() == 1) {
    out << "alpha = " << fmt_num(cfg.alphas[0]) << "\n";
  } else {
    out << "alpha = [";
    for (std::size_t k = 0; k < cfg.alphas.size(); ++k) {
      if (k) out << ", ";
      out << fmt_num(cfg.alphas[k]);
    }
    out << "]\n";
  }
  out << "objective = \""
      << (cfg.objective == SweepObjective::minimize_J ? "min-j" : "max-i")
      << "\"\n";
  out << "out = \"" << cfg.out_dir << "\"\n";
  out << "seed = " << cfg.seed << "\n";
  out << "solver = { tol_residual = " << fmt_num(cfg.tol_residual)
      << ", tol_constraint = " << fmt_num(cfg.tol_constraint)
      << ", max_iter = " << cfg.max_iter
      << ", step_init = " << fmt_num(cfg.step_init)
      << ", initial_guess = \"" << cfg.initial_guess << "\" }\n";
  out << "minimax = { basis_pairs = " << cfg.minimax_basis_pairs
      << ", theta_samples = " << cfg.minimax_theta_samples << " }\n";
  out << "verify = { samples = " << cfg.verify_samples << " }\n";
  return out.str();
}

YoungFunction RunConfig::make_young() const {
  if (young_family == "power") return YoungFunction::power(young_p);
  return YoungFunction::power_sum(young_terms);
}

Grid1D RunConfig::make_grid() const {
  return Grid1D::build(domain_lo, domain_hi,
                       static_cast<std::size_t>(n_interior), collar);
}

BcSpec RunConfig::make_bc(const Grid1D& grid) const {
  switch (bc) {
    case BoundaryCondition::dirichlet: return BcSpec::dirichlet();
    case BoundaryCondition::neumann: return BcSpec::neumann();
    case BoundaryCondition::robin: break;
  }
  if (beta_constant) {
    return BcSpec::robin(RobinWeight::constant(grid, *beta_constant));
  }
  if (beta_table.size() != grid.exterior_count()) {
    throw ConfigError("beta table has " + std::to_string(beta_table.size()) +
                          " entries but the grid has " +
                          std::to_string(grid.exterior_count()) +
                          " exterior nodes",
                      0, "beta");
  }
  return BcSpec::robin(RobinWeight::table(grid, beta_table));
}

SolverConfig RunConfig::make_solver(const Grid1D& grid) const {
  SolverConfig solver;
  solver.alpha = alphas.front();
  solver.bc = make_bc(grid);
  solver.s = s;
  solver.tol_residual = tol_residual;
  solver.tol_constraint = tol_constraint;
  solver.max_iter = max_iter;
  solver.step_init = step_init;
  solver.seed = seed;
  solver.initial_guess = initial_guess == "random-symmetric"
                             ? InitialGuess::random_symmetric
                             : InitialGuess::first_linear_mode;
  return solver;
}

}  // namespace fgl
