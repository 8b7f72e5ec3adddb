#include "fgl/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fgl/errors.hpp"

namespace fgl {

namespace {

void require_nonnegative(double t, const char* what) {
  if (!(t >= 0.0)) {
    throw std::domain_error(std::string(what) + ": argument must be >= 0");
  }
}

// The family evaluators sit inside O(N²) pair sweeps; spell out the small
// integer exponents instead of paying for std::pow.
double pow_fast(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, p);
}

double eval_terms(const std::vector<PowerTerm>& terms, double t) {
  double s = 0.0;
  for (const auto& [a, p] : terms) s += a * pow_fast(t, p);
  return s;
}

double eval_terms_derivative(const std::vector<PowerTerm>& terms, double t) {
  double s = 0.0;
  for (const auto& [a, p] : terms) s += a * p * pow_fast(t, p - 1.0);
  return s;
}

// Adaptive Simpson on [a, b] with a fixed recursion budget.
double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, fa, b, fb, fm, whole, tol, 48);
}

}  // namespace

YoungFunction YoungFunction::power(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("power Young function requires exponent > 1");
  }
  YoungFunction F;
  F.family_name_ = "power";
  F.terms_ = {{1.0, p}};
  F.p_minus_ = p;
  F.p_plus_ = p;
  F.exponents_ok_ = true;
  return F;
}

YoungFunction YoungFunction::power_sum(std::vector<PowerTerm> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("power_sum requires at least one term");
  }
  for (const auto& [a, p] : terms) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("power_sum coefficients must be positive");
    }
    if (!(p > 1.0) || !std::isfinite(p)) {
      throw std::invalid_argument("power_sum exponents must be > 1");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& x, const PowerTerm& y) {
              return x.exponent < y.exponent;
            });
  YoungFunction F;
  F.family_name_ = "powersum";
  F.terms_ = std::move(terms);
  // Ratio t·g/G is a weight average of the exponents, monotone in t, so the
  // bounds are the extreme exponents.
  F.p_minus_ = F.terms_.front().exponent;
  F.p_plus_ = F.terms_.back().exponent;
  F.exponents_ok_ = true;
  return F;
}

YoungFunction YoungFunction::custom(std::function<double(double)> G,
                                    std::function<double(double)> g,
                                    int exponent_samples) {
  if (!G || !g) throw std::invalid_argument("custom Young function needs G and g");
  if (exponent_samples < 2) {
    throw std::invalid_argument("exponent sampling needs at least 2 points");
  }
  YoungFunction F;
  F.family_name_ = "custom";
  F.eval_G_ = std::move(G);
  F.eval_g_ = std::move(g);

  // Log-spaced ratio sweep over [1e-8, 1e8].
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  const double a = -8.0, b = 8.0;
  bool bad = false;
  std::string issue;
  for (int k = 0; k < exponent_samples; ++k) {
    const double t =
        std::pow(10.0, a + (b - a) * k / double(exponent_samples - 1));
    const double Gt = F.eval_G_(t);
    const double gt = F.eval_g_(t);
    if (!(Gt > 0.0) || !std::isfinite(Gt) || !std::isfinite(gt)) {
      bad = true;
      issue = "G or g not finite-positive on the sampling grid";
      break;
    }
    const double r = t * gt / Gt;
    if (!(r > 1.0)) {
      bad = true;
      issue = "sampled ratio t*g(t)/G(t) <= 1";
      break;
    }
    if (r > 1e6) {
      bad = true;
      issue = "sampled ratio t*g(t)/G(t) unbounded";
      break;
    }
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  F.exponents_ok_ = !bad;
  F.exponents_issue_ = issue;
  if (!bad) {
    F.p_minus_ = lo;
    F.p_plus_ = hi;
  }
  return F;
}

double YoungFunction::G(double t) const {
  require_nonnegative(t, "G");
  if (t == 0.0) return 0.0;
  if (!terms_.empty()) return eval_terms(terms_, t);
  return eval_G_(t);
}

double YoungFunction::g(double t) const {
  require_nonnegative(t, "g");
  if (t == 0.0) return 0.0;
  if (!terms_.empty()) return eval_terms_derivative(terms_, t);
  return eval_g_(t);
}

double YoungFunction::invert_g(double y) const {
  require_nonnegative(y, "invert_g");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (g(hi) < y && guard++ < 1100) hi *= 2.0;
  double lo = hi > 1.0 ? hi * 0.5 : 0.0;
  if (hi == 1.0) lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double YoungFunction::invert_G(double y) const {
  require_nonnegative(y, "invert_G");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (G(hi) < y && guard++ < 1100) hi *= 2.0;
  double lo = hi > 1.0 ? hi * 0.5 : 0.0;
  if (hi == 1.0) lo = 0.0;
  const double ftol = 1e-12 * std::max(1.0, y);
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = G(mid);
    if (std::abs(val - y) <= ftol) return mid;
    if (val < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double YoungFunction::gtilde(double t) const {
  require_nonnegative(t, "gtilde");
  if (t == 0.0) return 0.0;
  if (terms_.size() == 1) {
    // c·t^p conjugates to ((p−1)/p)·(c·p)^{−1/(p−1)}·t^{p/(p−1)}.
    const double c = terms_[0].coeff;
    const double p = terms_[0].exponent;
    const double q = p / (p - 1.0);
    return (p - 1.0) / p * std::pow(c * p, -1.0 / (p - 1.0)) * std::pow(t, q);
  }
  // Conjugacy identity: sup_w (t·w − G(w)) is attained at w = g⁻¹(t).
  const double w = invert_g(t);
  return t * w - G(w);
}

double YoungFunction::gtilde_quadrature(double t, double abs_tol) const {
  require_nonnegative(t, "gtilde_quadrature");
  if (t == 0.0) return 0.0;
  return adaptive_simpson([this](double tau) { return invert_g(tau); }, 0.0, t,
                          abs_tol);
}

double YoungFunction::ratio_or_throw_() const {
  if (!exponents_ok_) {
    throw StructureError("growth exponents invalid: " + exponents_issue_);
  }
  return 0.0;
}

double YoungFunction::p_minus() const {
  ratio_or_throw_();
  return p_minus_;
}

double YoungFunction::p_plus() const {
  ratio_or_throw_();
  return p_plus_;
}

std::pair<double, double> YoungFunction::exponents(int sample_count) const {
  if (sample_count < 2) {
    throw std::invalid_argument("exponents: sample_count must be >= 2");
  }
  if (!terms_.empty()) {
    return {terms_.front().exponent, terms_.back().exponent};
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < sample_count; ++k) {
    const double t =
        std::pow(10.0, -8.0 + 16.0 * k / double(sample_count - 1));
    const double Gt = G(t);
    const double r = t * g(t) / Gt;
    if (!(r > 1.0) || r > 1e6 || !std::isfinite(r)) {
      throw StructureError("sampled ratio t*g(t)/G(t) leaves (1, 1e6)");
    }
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

std::pair<double, double> YoungFunction::xi_bounds(double t) const {
  require_nonnegative(t, "xi_bounds");
  const double a = std::pow(t, p_minus());
  const double b = std::pow(t, p_plus());
  return {std::min(a, b), std::max(a, b)};
}

bool YoungFunction::is_power() const { return terms_.size() == 1; }

const std::vector<PowerTerm>* YoungFunction::family_terms() const {
  return terms_.empty() ? nullptr : &terms_;
}

StructureReport verify_structure(const YoungFunction& F, double s, int n,
                                 int convexity_samples, std::uint64_t seed) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("verify_structure: s must lie in (0,1)");
  }
  if (n < 1) throw std::invalid_argument("verify_structure: n must be >= 1");

  StructureReport report;

  // Growth bounds.
  if (F.exponents_ok_) {
    report.p_minus = F.p_minus_;
    report.p_plus = F.p_plus_;
    report.growth_ok = report.p_minus > 1.0 && report.p_plus < 1e6;
  } else {
    report.growth_ok = false;
  }

  // Midpoint convexity of t ↦ G(√t) on random pairs (t₁, midpoint, t₂).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_t(-4.0, 4.0);
  int violations = 0;
  for (int k = 0; k < convexity_samples; ++k) {
    const double t1 = std::pow(10.0, log_t(rng));
    const double t2 = std::pow(10.0, log_t(rng));
    const double gm = F.G(std::sqrt(0.5 * (t1 + t2)));
    const double g1 = F.G(std::sqrt(t1));
    const double g2 = F.G(std::sqrt(t2));
    if (gm > 0.5 * (g1 + g2) + 1e-12 * (g1 + g2)) ++violations;
  }
  report.sqrt_convex_violations = violations;
  report.sqrt_convex_ok = violations == 0;

  // Critical integrals, classified through the local exponent of G⁻¹.
  // Near τ = 0 the integrand behaves like τ^{1/p₀ − (n+s)/n} with p₀ the
  // growth ratio at small argument; near ∞ the same with p_∞.
  auto local_ratio = [&F](double t) { return t * F.g(t) / F.G(t); };
  double p_low, p_high;
  if (const auto* terms = F.family_terms()) {
    p_low = terms->front().exponent;
    p_high = terms->back().exponent;
  } else {
    p_low = local_ratio(1e-8);
    p_high = local_ratio(1e8);
  }
  const double burden = (double(n) + s) / double(n);
  report.low_tail_exponent = 1.0 / p_low - burden;
  report.high_tail_exponent = 1.0 / p_high - burden;
  // Exponent −1 is the borderline; on the power scale it corresponds to
  // s·p = n, which is admitted for the lower integral and divergent (hence
  // passing) for the upper one.
  report.lower_integral_finite = report.low_tail_exponent >= -1.0 - 1e-9;
  report.upper_integral_infinite = report.high_tail_exponent >= -1.0 - 1e-9;
  return report;
}

}  // namespace fgl
