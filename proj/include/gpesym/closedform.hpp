#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "gpesym/errors.hpp"
#include "gpesym/grid.hpp"
#include "gpesym/model.hpp"
#include "gpesym/moments.hpp"

namespace gpesym {

inline constexpr int kMaxHermiteOrder = 64;

/// Fundamental matrix of Ḃ = −ρB − σ̃C, Ċ = μB + ρC acting on (B, C), equal
/// to the identity at t = 0.
Eigen::Matrix2d cauchy_matrix(double t, const EffectiveParams& eff, const QuadraticModel& model);

/// Normalized complex solution of the germ system: B C* − C B* = 2i.
struct LadderFrame {
  cplx B;
  cplx C;
};

LadderFrame ladder_frame(double t, const EffectiveParams& eff, const QuadraticModel& model);

/// P Ẋ − H_κ along the orbit C.
double action_integrand(double t, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& model);

/// S(t, C) = ∫₀ᵗ (P Ẋ − H_κ) by adaptive Simpson, absolute tolerance `tol`.
double action_phase(double t, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& model,
                    double tol = 1e-12);

/// Physicists' Hermite polynomial by H_{ν+1} = 2ζH_ν − 2νH_{ν−1}.
template <class T>
T hermite(int nu, T zeta) {
  if (nu < 0) fail(ErrorCode::InvalidArgument, "Hermite order must be non-negative");
  if (nu > kMaxHermiteOrder) fail(ErrorCode::OverflowRisk, "Hermite order above 64");
  T h_prev = T(1);
  if (nu == 0) return h_prev;
  T h = T(2) * zeta;
  for (int k = 1; k < nu; ++k) {
    T next = T(2) * zeta * h - T(2 * k) * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

/// Ground state of the linear equation with stationary constants C₅⁰.
WaveFunction ground_state(double t, double c5_0, const EffectiveParams& eff, const QuadraticModel& model,
                          const Grid& grid);

/// Fock state i^ν (ν!)^{−1/2} 2^{−ν/2} H_ν(√(Ω/ħμ) x) Φ₀(x, t; C₅′) e^{−iΩνt}.
WaveFunction fock_state(int nu, double t, double c5_0p, const EffectiveParams& eff, const QuadraticModel& model,
                        const Grid& grid);

/// Stationary-density GPE solution with C₅ = (ħμ/Ω)(ν + ½).
WaveFunction exact_psi_nu(int nu, double t, const EffectiveParams& eff, const QuadraticModel& model,
                          const Grid& grid);

/// (ħμ/Ω)(ν + ½).
double fock_c5(int nu, const EffectiveParams& eff, const QuadraticModel& model);

/// (ν + ½)(κ̃cμ/(2Ω) + Ω); Ψ_ν(t) = Ψ_ν(0)·exp(−i·rate·t).
double psi_nu_phase_rate(int nu, const EffectiveParams& eff, const QuadraticModel& model);

/// Value and y-derivative of the Fock envelope
///   E_ν(y) = i^ν h_ν(√(Ω/ħμ) y) (Ω/(πħμ))^{1/4} exp{−(Ω + iρ) y² / (2ħμ)},
/// h_ν the orthonormal Hermite function coefficient H_ν/√(2^ν ν!).
struct EnvelopeValue {
  cplx value;
  cplx derivative;
};

EnvelopeValue fock_envelope(int nu, double y, const EffectiveParams& eff, const QuadraticModel& model);

/// K̂(C) applied to the Fock solution of the moment-free linear problem:
///   e^{(i/ħ)(S(t,C) + P(x − X))} E_ν(x − X) e^{−i(ν+½)Ωt}.
/// Solves the linear equation with coefficients frozen on the orbit C, for any C.
WaveFunction ale_fock_solution(int nu, double t, const ParamSet& C, const EffectiveParams& eff,
                               const QuadraticModel& model, const Grid& grid);

/// Exact ∂ₜ of ale_fock_solution.
WaveFunction ale_fock_solution_dt(int nu, double t, const ParamSet& C, const EffectiveParams& eff,
                                  const QuadraticModel& model, const Grid& grid);

/// â(t, C) ψ = [C(t)(p̂ − P) − B(t)(x − X)] ψ / √(2ħ), p̂ realized spectrally.
WaveFunction apply_annihilation(const WaveFunction& psi, double t, const ParamSet& C, const EffectiveParams& eff,
                                const QuadraticModel& model);
/// â⁺(t, C) ψ = [C*(t)(p̂ − P) − B*(t)(x − X)] ψ / √(2ħ).
WaveFunction apply_creation(const WaveFunction& psi, double t, const ParamSet& C, const EffectiveParams& eff,
                            const QuadraticModel& model);

/// Columns x,re,im.
void write_wavefunction_csv(std::ostream& os, const WaveFunction& psi);
/// Columns x,density.
void write_density_csv(std::ostream& os, const WaveFunction& psi);

}  // namespace gpesym
