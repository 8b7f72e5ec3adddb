#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fgl/operator.hpp"

namespace fgl {

/// Outcome of one property suite. worst_margin is the smallest slack seen
/// (bound minus value, sign-adjusted so negative means violated); hard
/// properties gate the process exit code, soft ones are informational.
struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  bool hard = true;
  bool pass = true;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;

  bool all_hard_pass() const {
    for (const auto& p : properties) {
      if (p.hard && !p.pass) return false;
    }
    return true;
  }
};

/// Runs every inequality suite with the given Young function, grid and s:
/// the Young inequality against the complementary function, the growth
/// envelope and sum-splitting bounds, the conjugate-derivative bound, the
/// two-point convexity inequality, the norm/modular sandwich for the bulk
/// and Gagliardo modulars, the Hölder product bound (factor-2 hard form and
/// the constant-free form as a soft report), operator monotonicity, and the
/// discrete integration-by-parts identity at 1e-12 absolute.
VerifyReport run_verify(const YoungFunction& F, const Grid1D& grid, double s,
                        std::size_t samples, std::uint64_t seed);

std::string render_verify_report(const VerifyReport& report);

namespace verify_detail {

/// Young-inequality core with injectable evaluators (the test suite feeds a
/// corrupted complementary function through this hook).
PropertyResult young_inequality_check(
    const std::function<double(double)>& G,
    const std::function<double(double)>& Gtilde, std::size_t samples,
    std::uint64_t seed);

}  // namespace verify_detail

}  // namespace fgl
