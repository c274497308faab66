#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gpesym/verify.hpp"

namespace gpesym {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitRegime = 3,
  kExitNumerical = 4,
};

int exit_code_for(ErrorCode code);

/// One wavefunction and one density CSV per (ν, α, t) plus manifest.txt.
/// Data files are byte-identical for identical configs; only the manifest is timestamped.
std::vector<std::string> run_exact(const RunConfig& cfg, const std::string& out_dir);

/// Evolves the displaced state (first ν, first α). Writes snapshots.csv,
/// moments.csv and report.txt. Returns the report entries.
std::vector<std::pair<std::string, std::string>> run_evolve(const RunConfig& cfg, const std::string& out_dir);

/// Writes verify_report.txt; returns kExitOk iff every check passes.
int run_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

struct SweepRow {
  double value = 0.0;
  std::string status;  // "ok" or an error-code name
  std::string message;
  PointResult result;
};

/// Evaluates every sweep point on up to `workers` threads. Rows come back in
/// the order of sweep.values regardless of completion order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::string& out_dir, int workers);

/// Applies one named model parameter.
void set_model_param(QuadraticModel& model, const std::string& name, double value);

}  // namespace gpesym
