#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fgl {

/// One monomial a·t^p of a power-sum Young function.
struct PowerTerm {
  double coeff;
  double exponent;
};

/// Structural diagnosis of a Young function: growth-exponent bounds,
/// convexity of t ↦ G(√t), and the convergence class of the critical
/// embedding integrals ∫₀¹ and ∫₁^∞ of G⁻¹(τ)/τ^{(n+s)/n} dτ.
struct StructureReport {
  double p_minus = 0.0;
  double p_plus = 0.0;
  bool growth_ok = false;        ///< 1 < p⁻ ≤ p⁺ < ∞ over the sampled ratio
  bool sqrt_convex_ok = false;   ///< t ↦ G(√t) midpoint-convex on random triples
  int sqrt_convex_violations = 0;

  /// Integrand exponents near τ→0⁺ and τ→∞: 1/p_local − (n+s)/n.
  double low_tail_exponent = 0.0;
  double high_tail_exponent = 0.0;
  bool lower_integral_finite = false;
  bool upper_integral_infinite = false;

  /// Solvers admit only functions passing the growth and convexity checks.
  bool solver_admissible() const { return growth_ok && sqrt_convex_ok; }
  bool all_pass() const {
    return growth_ok && sqrt_convex_ok && lower_integral_finite &&
           upper_integral_infinite;
  }
};

/// A Young function G(t) = ∫₀ᵗ g with g(0) = 0, g > 0 and non-decreasing on
/// (0,∞), g → ∞. Built-in families are single powers t^p and positive
/// combinations Σ aₖ·t^{pₖ}; arbitrary (G, g) pairs are accepted but get
/// their growth exponents by sampling and must be vetted with
/// verify_structure() before use in a solver.
///
/// Values are immutable after construction and safe to share across threads;
/// every evaluator is a pure function of (family, t).
class YoungFunction {
 public:
  /// G(t) = t^p, p > 1.
  static YoungFunction power(double p);

  /// G(t) = Σ aₖ·t^{pₖ} with aₖ > 0 and pₖ > 1.
  static YoungFunction power_sum(std::vector<PowerTerm> terms);

  /// User-supplied pair (G, g = G'). g must be strictly increasing.
  static YoungFunction custom(std::function<double(double)> G,
                              std::function<double(double)> g,
                              int exponent_samples = 4096);

  /// G(t); total on [0, ∞), G(0) = 0. Throws std::domain_error for t < 0.
  double G(double t) const;

  /// g(t) = G'(t); same domain contract as G.
  double g(double t) const;

  /// Complementary Young function G̃(t) = ∫₀ᵗ g⁻¹(τ) dτ. Closed form for a
  /// single power; otherwise evaluated through the conjugacy identity
  /// G̃(t) = t·w − G(w) at w = g⁻¹(t) (the quadrature route is kept as
  /// gtilde_quadrature and the two are cross-checked in the test suite).
  double gtilde(double t) const;

  /// Adaptive-Simpson quadrature of g⁻¹ on [0, t] with g inverted by
  /// bisection; the reference route for G̃.
  double gtilde_quadrature(double t, double abs_tol = 1e-12) const;

  /// Inverse of G by monotone bisection: |G(result) − y| ≤ 1e-12·max(1, y).
  double invert_G(double y) const;

  /// Inverse of g by monotone bisection (bracket width ≤ 1e-13·max(1, w)).
  double invert_g(double y) const;

  /// Growth exponents: infimum and supremum of t·g(t)/G(t). Exact for the
  /// built-in families, sampled on a log grid over [1e-8, 1e8] otherwise.
  /// Throws StructureError if the sampled ratio leaves (1, ∞).
  double p_minus() const;
  double p_plus() const;

  /// Re-sample the exponent ratio with a caller-chosen grid size.
  std::pair<double, double> exponents(int sample_count) const;

  /// (min{t^{p⁻}, t^{p⁺}}, max{t^{p⁻}, t^{p⁺}}).
  std::pair<double, double> xi_bounds(double t) const;

  /// Single-term t^p family (λ-homogeneous of degree p)?
  bool is_power() const;

  /// Monomial decomposition when the function is a built-in family,
  /// nullptr for custom functions. Sorted by exponent.
  const std::vector<PowerTerm>* family_terms() const;

  /// Family tag for serialization: "power", "powersum" or "custom".
  const std::string& family_name() const { return family_name_; }

 private:
  YoungFunction() = default;

  double ratio_or_throw_() const;  // validates sampled exponents

  std::string family_name_;
  std::vector<PowerTerm> terms_;  // empty for custom
  std::function<double(double)> eval_G_;
  std::function<double(double)> eval_g_;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
  bool exponents_ok_ = false;
  std::string exponents_issue_;

  friend StructureReport verify_structure(const YoungFunction&, double, int,
                                          int, std::uint64_t);
};

/// Runs the full structural diagnosis for dimension n and order s: growth
/// bounds, midpoint convexity of t ↦ G(√t) on seeded random triples, and the
/// tail-exponent classification of the critical integrals. Failures are
/// report entries, never exceptions.
///
/// The lower integral is classified by the integrand exponent γ₀ at τ→0⁺ and
/// counted finite for γ₀ ≥ −1; the boundary case matches the power-function
/// rule s·p ≤ n (a log-divergent endpoint is not resolvable from sampled
/// exponents and is admitted, as in the power scale).
StructureReport verify_structure(const YoungFunction& F, double s, int n,
                                 int convexity_samples = 2048,
                                 std::uint64_t seed = 42);

}  // namespace fgl
