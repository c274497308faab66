#pragma once

#include "gpesym/closedform.hpp"

namespace gpesym {

struct GermVector {
  double b_p = 0.0;
  double b_x = 0.0;
};

/// First moments of the orbit at t = 0: P₀ = (Ω̄C₁ − ρC₂)/μ, X₀ = C₂.
std::pair<double, double> initial_first_moments(const ParamSet& C, const EffectiveParams& eff,
                                                const QuadraticModel& model);

/// b(t) = 𝒳(t)·(δP₀, δX₀), δ = C_to − C_from.
GermVector germ_vector(double t, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                       const QuadraticModel& model);

/// Fundamental intertwiner K̂(C_to) e^{(i/ħ)b̂} K̂⁻¹(C_from), b̂ = b_x p̂ − b_p x,
/// times the constant exp{(i/2ħ)δX₀(P₀(C_from) + P₀(C_to))} that makes it the
/// identity at t = 0. Maps solutions of the linear equation on the orbit
/// C_from to solutions on C_to. One spectral shift, one pointwise phase.
WaveFunction intertwiner_apply(const WaveFunction& phi, double t, const ParamSet& C_from, const ParamSet& C_to,
                               const EffectiveParams& eff, const QuadraticModel& model);

/// (â⁺)^ν/√ν! on the stationary orbit C₅⁰ = ħμ/(2Ω), then the intertwiner to
/// C₅⁰′ = (ħμ/Ω)(ν + ½). Maps Ψ₀ to Ψ_ν.
WaveFunction ladder_symmetry_apply(const WaveFunction& psi, int nu, double t, const EffectiveParams& eff,
                                   const QuadraticModel& model);

struct DisplacementParams {
  cplx alpha;
  cplx beta0;   // i√(2μ/(ħΩ)) α₂
  cplx gamma0;  // i√2 (ρα₂ + Ωα₁)/√(ħΩμ)
};

struct Displacement {
  DisplacementParams params;
  ParamSet constants;  // orbit of the displaced state
  double x0 = 0.0;     // X(0)
  double p0 = 0.0;     // P(0)
};

Displacement displacement_params(cplx alpha, int nu, const EffectiveParams& eff, const QuadraticModel& model);

/// Displaced Fock state riding the orbit of displacement_params, carrying the
/// Weyl phase e^{(i/2ħ)X₀P₀} so that it equals the shift operator applied to Ψ_ν at t = 0.
WaveFunction displaced_solution(int nu, cplx alpha, double t, const EffectiveParams& eff,
                                const QuadraticModel& model, const Grid& grid);
WaveFunction displaced_solution_dt(int nu, cplx alpha, double t, const EffectiveParams& eff,
                                   const QuadraticModel& model, const Grid& grid);

}  // namespace gpesym
