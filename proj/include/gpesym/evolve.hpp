#pragma once

#include <functional>
#include <vector>

#include "gpesym/symmetry.hpp"

namespace gpesym {

/// The grid is taken from the initial state.
struct EvolutionConfig {
  double dt = 1e-3;
  double t_final = 1.0;
  int record_every = 1;
};

struct Snapshot {
  double t = 0.0;
  WaveFunction psi;
};

inline constexpr double kUnstableNormDrift = 1e-4;

/// Strang splitting of the full nonlocal equation. The one-body quadratic
/// part with σ̃ = σ + κ̃a is stepped exactly (chirp, kinetic, chirp); the
/// moment-dependent remainder κ(b·M₁·x + c·M₂/2) is applied as half kicks,
/// each recomputing M₁ = ∫y|ψ|², M₂ = ∫y²|ψ|² from the current state.
class SplitStepPropagator {
 public:
  /// κ̃ = κ‖ψ₀‖² is fixed here for the whole run.
  SplitStepPropagator(const Grid& grid, const QuadraticModel& model, double kappa_tilde, double dt);

  void step(std::vector<cplx>& psi) const;
  double dt() const { return dt_; }

 private:
  void half_kick(std::vector<cplx>& psi) const;

  Grid grid_;
  QuadraticModel model_;
  double dt_;
  std::vector<cplx> chirp_in_;
  std::vector<cplx> chirp_out_;
  std::vector<cplx> kinetic_;
};

/// Records t = 0, every record_every steps, and t_final. Throws Unstable when
/// the relative norm drift exceeds 1e−4, EdgeLeak when the state reaches the edges.
std::vector<Snapshot> split_step_evolve(const WaveFunction& psi0, const EvolutionConfig& cfg,
                                        const QuadraticModel& model);

/// A time-indexed family. Without `time_derivative`, residuals use central
/// differences with step 1e−6.
struct Candidate {
  std::function<WaveFunction(double)> value;
  std::function<WaveFunction(double)> time_derivative;
};

struct MomentErrors {
  double p = 0.0;
  double x = 0.0;
  double d11 = 0.0;
  double d12 = 0.0;
  double d22 = 0.0;

  double first() const;
  double second() const;
  double max() const;
};

struct ResidualReport {
  double relative_residual = 0.0;
  double norm_drift = 0.0;
  MomentErrors moment_errors;
};

/// ‖−iħ∂ₜψ + Ĥψ + κV̂(ψ)ψ‖/‖ψ‖ with the nonlocal term built from the moments of ψ itself.
ResidualReport residual(const Candidate& candidate, double t, const QuadraticModel& model);

/// Residual of the linear equation whose nonlocal coefficients follow the orbit C.
ResidualReport ale_residual(const Candidate& candidate, double t, const ParamSet& C, const EffectiveParams& eff,
                            const QuadraticModel& model);

struct MomentComparison {
  std::vector<double> times;
  std::vector<MomentErrors> per_time;
  MomentErrors max;
};

MomentComparison compare_moments(const std::vector<Snapshot>& evolution, const ParamSet& C,
                                 const EffectiveParams& eff, const QuadraticModel& model);

Candidate psi_nu_candidate(int nu, const EffectiveParams& eff, const QuadraticModel& model, const Grid& grid);
Candidate displaced_candidate(int nu, cplx alpha, const EffectiveParams& eff, const QuadraticModel& model,
                              const Grid& grid);
Candidate ale_fock_candidate(int nu, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& model,
                             const Grid& grid);
/// Intertwiner image of the ALE Fock solution on C_from, mapped to C_to. No analytic ∂ₜ.
Candidate intertwined_candidate(int nu, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                                const QuadraticModel& model, const Grid& grid);

/// Orbit-aware grid for a Fock state on the orbit C.
Grid grid_for_orbit(const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& model);

/// Grid holding ale_fock_solution(ν, ·, C_from) and its intertwiner image on
/// C_to, which is centred at X(t, C_to) − b_x(t). Widths are those of Fock state ν.
Grid grid_for_pair(int nu, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                   const QuadraticModel& model);

}  // namespace gpesym
