#pragma once

#include <string>

#include "fgl/config.hpp"
#include "fgl/oracle.hpp"
#include "fgl/solver.hpp"
#include "fgl/verify.hpp"

namespace fgl {

/// Library version reported in results.json.
inline const char* version_string() { return "fgl 0.1.0"; }

/// Output writers. All files are deterministic for a fixed config and seed
/// except the wall_time_seconds field of results.json. CSV files follow
/// RFC 4180 (CRLF records, '.' decimal separator) with 17 significant
/// digits. IO failures raise std::runtime_error with the path.
void write_solve_outputs(const std::string& out_dir, const RunConfig& cfg,
                         const EigenPair& result, double wall_seconds);
void write_sweep_outputs(const std::string& out_dir, const RunConfig& cfg,
                         const SweepResult& sweep, double wall_seconds);
void write_oracle_outputs(const std::string& out_dir, const RunConfig& cfg,
                          const SpectrumP2& spectrum, double wall_seconds);
void write_verify_outputs(const std::string& out_dir, const RunConfig& cfg,
                          const VerifyReport& report, double wall_seconds);

/// Plain-text summary of a results directory (results.json and friends).
std::string render_results_report(const std::string& dir);

}  // namespace fgl
