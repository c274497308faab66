#pragma once

namespace gpesym {

/// Coefficients of the reduced 1D nonlocal GPE
///
///   -iħ∂ₜΨ + ½(μp̂² + ρ(xp̂+p̂x) + σx²)Ψ
///          + (κ/2)∫dy (ax² + 2bxy + cy²)|Ψ(y)|² Ψ = 0.
struct QuadraticModel {
  double mu = 1.0;
  double rho = 0.0;
  double sigma = 1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double kappa = 0.0;
  double hbar = 1.0;

  /// Throws InvalidArgument unless ħ > 0, μ > 0 and all fields are finite.
  void validate() const;
};

/// Quantities that depend on the state only through its conserved norm.
struct EffectiveParams {
  double kappa_tilde = 0.0;  // κ‖ψ‖²
  double sigma0 = 0.0;       // σ + κ̃(a+b), drives the first moments
  double sigma_tilde = 0.0;  // σ + κ̃a, drives the second moments and the germ
  double omega_bar = 0.0;    // √(σ₀μ − ρ²)
  double omega = 0.0;        // √(σ̃μ − ρ²)
};

/// Throws NonOscillatoryRegime when either radicand is ≤ 0. No clamping.
EffectiveParams derive_effective(const QuadraticModel& model, double norm_sq);

/// Same as derive_effective but with κ̃ supplied directly.
EffectiveParams effective_from_kappa_tilde(const QuadraticModel& model, double kappa_tilde);

}  // namespace gpesym
