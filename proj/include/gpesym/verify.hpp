#pragma once

#include <string>
#include <vector>

#include "gpesym/config.hpp"

namespace gpesym {

/// Numbers shared by the verify and sweep workflows for one parameter point.
struct PointResult {
  double omega = 0.0;
  double omega_bar = 0.0;
  double kappa_tilde = 0.0;
  double phase_rate = 0.0;            // (ν+½)(κ̃cμ/(2Ω) + Ω) for the first ν
  double phase_rate_rel_error = 0.0;  // split-step measurement against the formula
  double residual_psi_nu = 0.0;       // max over configured ν, 20 times per period
  double residual_displaced = 0.0;    // max over configured ν × α
  double moment_error_first = 0.0;    // evolved displaced state vs closed-form orbit
  double moment_error_second = 0.0;
  double norm_drift = 0.0;
};

PointResult evaluate_point(const RunConfig& cfg);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;  // true: pass iff value > threshold
  bool passed() const { return lower_bound ? value > threshold : value <= threshold; }
};

/// The full check suite at the configured parameters.
std::vector<Check> run_checks(const RunConfig& cfg);

/// Phase rate −d/dt arg⟨Ψ(0), Ψ(t)⟩ of a split-step run: unwrapped, least-squares slope.
double measure_phase_rate(const WaveFunction& psi0, double t_final, const QuadraticModel& model);

/// Largest stable split-step dt on `grid` not exceeding `wanted`.
double safe_dt(const Grid& grid, const QuadraticModel& model, double wanted);

}  // namespace gpesym
