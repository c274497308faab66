#include "gpesym/symmetry.hpp"

#include <cmath>

#include "gpesym/spectral.hpp"

namespace gpesym {

std::pair<double, double> initial_first_moments(const ParamSet& C, const EffectiveParams& eff,
                                                const QuadraticModel& m) {
  return {(eff.omega_bar * C.c1 - m.rho * C.c2) / m.mu, C.c2};
}

GermVector germ_vector(double t, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                       const QuadraticModel& m) {
  const auto [p_from, x_from] = initial_first_moments(C_from, eff, m);
  const auto [p_to, x_to] = initial_first_moments(C_to, eff, m);
  const Eigen::Vector2d b = cauchy_matrix(t, eff, m) * Eigen::Vector2d(p_to - p_from, x_to - x_from);
  return {b(0), b(1)};
}

namespace {

WaveFunction intertwine(const WaveFunction& phi, double t, const ParamSet& C_from, const ParamSet& C_to,
                        const EffectiveParams& eff, const QuadraticModel& m) {
  const MomentState from = hes_analytic_1d(t, C_from, eff, m);
  const MomentState to = hes_analytic_1d(t, C_to, eff, m);
  const double S_from = action_phase(t, C_from, eff, m);
  const double S_to = action_phase(t, C_to, eff, m);
  const GermVector b = germ_vector(t, C_from, C_to, eff, m);
  const auto [p0_from, x0_from] = initial_first_moments(C_from, eff, m);
  const auto [p0_to, x0_to] = initial_first_moments(C_to, eff, m);
  const double c0 = 0.5 * (x0_to - x0_from) * (p0_from + p0_to);

  const double d = to.x - b.b_x - from.x;
  WaveFunction out(phi.grid, d == 0.0 ? phi.samples : spectral::translate(phi.samples, phi.grid, d));
  const double hb = m.hbar;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double u = phi.grid.x(j) - to.x;
    const double phase = c0 + S_to + to.p * u - b.b_p * u - 0.5 * b.b_p * b.b_x - S_from -
                         from.p * (u + b.b_x);
    out.samples[j] *= std::polar(1.0, phase / hb);
  }
  return out;
}

}  // namespace

WaveFunction intertwiner_apply(const WaveFunction& phi, double t, const ParamSet& C_from, const ParamSet& C_to,
                               const EffectiveParams& eff, const QuadraticModel& m) {
  check_edges(phi, kEdgeThreshold, "intertwiner_apply input");
  WaveFunction out = intertwine(phi, t, C_from, C_to, eff, m);
  check_edges(out, kEdgeThreshold, "intertwiner_apply output");
  return out;
}

WaveFunction ladder_symmetry_apply(const WaveFunction& psi, int nu, double t, const EffectiveParams& eff,
                                   const QuadraticModel& m) {
  if (nu < 0) fail(ErrorCode::InvalidArgument, "ladder power must be non-negative");
  if (nu > kMaxHermiteOrder) fail(ErrorCode::OverflowRisk, "ladder power above 64");
  check_edges(psi, kEdgeThreshold, "ladder_symmetry_apply input");
  const ParamSet ground = ParamSet::stationary(fock_c5(0, eff, m));
  const ParamSet excited = ParamSet::stationary(fock_c5(nu, eff, m));
  WaveFunction out = psi;
  for (int k = 1; k <= nu; ++k) {
    out = apply_creation(out, t, ground, eff, m);
    const double s = 1.0 / std::sqrt(static_cast<double>(k));
    for (auto& v : out.samples) v *= s;
  }
  // Intermediate states carry the FFT roundoff floor amplified by x and p̂,
  // so the edge guard is applied to the input only.
  return intertwine(out, t, ground, excited, eff, m);
}

Displacement displacement_params(cplx alpha, int nu, const EffectiveParams& eff, const QuadraticModel& m) {
  if (!(eff.omega > 0.0) || !(eff.omega_bar > 0.0)) {
    fail(ErrorCode::NonOscillatoryRegime, "Omega and Omega_bar must be positive");
  }
  const double a1 = alpha.real(), a2 = alpha.imag();
  const double w = eff.omega, hb = m.hbar, mu = m.mu, rho = m.rho;
  Displacement d;
  d.params.alpha = alpha;
  d.params.beta0 = cplx(0.0, std::sqrt(2.0 * mu / (hb * w)) * a2);
  d.params.gamma0 = cplx(0.0, std::sqrt(2.0) * (rho * a2 + w * a1) / std::sqrt(hb * w * mu));
  d.x0 = -std::sqrt(2.0 * hb * mu / w) * a2;
  d.p0 = std::sqrt(2.0 * hb / (w * mu)) * (rho * a2 + w * a1);
  d.constants.c2 = d.x0;
  d.constants.c1 = (mu * d.p0 + rho * d.x0) / eff.omega_bar;
  d.constants.c5 = fock_c5(nu, eff, m);
  return d;
}

WaveFunction displaced_solution(int nu, cplx alpha, double t, const EffectiveParams& eff,
                                const QuadraticModel& m, const Grid& grid) {
  const Displacement d = displacement_params(alpha, nu, eff, m);
  WaveFunction psi = ale_fock_solution(nu, t, d.constants, eff, m, grid);
  const cplx weyl = std::polar(1.0, 0.5 * d.x0 * d.p0 / m.hbar);
  for (auto& v : psi.samples) v *= weyl;
  return psi;
}

WaveFunction displaced_solution_dt(int nu, cplx alpha, double t, const EffectiveParams& eff,
                                   const QuadraticModel& m, const Grid& grid) {
  const Displacement d = displacement_params(alpha, nu, eff, m);
  WaveFunction psi = ale_fock_solution_dt(nu, t, d.constants, eff, m, grid);
  const cplx weyl = std::polar(1.0, 0.5 * d.x0 * d.p0 / m.hbar);
  for (auto& v : psi.samples) v *= weyl;
  return psi;
}

}  // namespace gpesym
