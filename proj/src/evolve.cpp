#include "gpesym/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gpesym/spectral.hpp"

namespace gpesym {

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const QuadraticModel& model, double kappa_tilde,
                                         double dt)
    : grid_(grid), model_(model), dt_(dt) {
  grid.validate();
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  const double kmax = grid.k_max();
  if (!(dt * kmax * kmax * model.mu * model.hbar / 2.0 < std::numbers::pi)) {
    std::ostringstream os;
    os << "dt*k_max^2*mu*hbar/2 = " << dt * kmax * kmax * model.mu * model.hbar / 2.0 << " must be < pi";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  const EffectiveParams eff = effective_from_kappa_tilde(model, kappa_tilde);
  const double theta = eff.omega * dt;
  if (!(theta < 0.5 * std::numbers::pi)) fail(ErrorCode::InvalidArgument, "Omega*dt must be below pi/2");

  // Exact flow of μp²/2 + σ̃x²/2 + ρ(xp+px)/2 over dt: x' = A x + B p, p' = C x + D p,
  // with A = cos θ + (ρ/Ω) sin θ, B = (μ/Ω) sin θ, D = cos θ − (ρ/Ω) sin θ.
  // Factored as chirp (A−1)/B, free drift B, chirp (D−1)/B; the chirps are
  // written through tan(θ/2) to avoid the O(θ²) cancellation in A − 1.
  const double w = eff.omega;
  const double B = model.mu / w * std::sin(theta);
  const double half_tan = w * std::tan(0.5 * theta);
  const double c_in = (model.rho - half_tan) / model.mu;
  const double c_out = (-model.rho - half_tan) / model.mu;
  const double hb = model.hbar;
  chirp_in_.resize(grid.n);
  chirp_out_.resize(grid.n);
  kinetic_.resize(grid.n);
  const std::vector<double> k = spectral::wavenumbers(grid);
  const double inv_n = 1.0 / static_cast<double>(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.x(j);
    chirp_in_[j] = std::polar(1.0, c_in * x * x / (2.0 * hb));
    chirp_out_[j] = std::polar(1.0, c_out * x * x / (2.0 * hb));
    // Nyquist keeps the even part of the multiplier; the phase is even in k anyway.
    kinetic_[j] = std::polar(inv_n, -B * hb * k[j] * k[j] / 2.0);
  }
}

void SplitStepPropagator::half_kick(std::vector<cplx>& psi) const {
  const double b = model_.b, c = model_.c, kappa = model_.kappa;
  if (kappa == 0.0 || (b == 0.0 && c == 0.0)) return;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < grid_.n; ++j) {
    const double x = grid_.x(j), r = std::norm(psi[j]);
    m1 += x * r;
    m2 += x * x * r;
  }
  m1 *= grid_.dx;
  m2 *= grid_.dx;
  const double scale = -0.5 * dt_ / model_.hbar * kappa;
  for (std::size_t j = 0; j < grid_.n; ++j) {
    const double x = grid_.x(j);
    psi[j] *= std::polar(1.0, scale * (b * m1 * x + 0.5 * c * m2));
  }
}

void SplitStepPropagator::step(std::vector<cplx>& psi) const {
  half_kick(psi);
  for (std::size_t j = 0; j < grid_.n; ++j) psi[j] *= chirp_in_[j];
  spectral::forward(psi);
  for (std::size_t j = 0; j < grid_.n; ++j) psi[j] *= kinetic_[j];
  // kinetic_ already carries 1/n, so the raw inverse transform is used.
  spectral::backward_unscaled(psi);
  for (std::size_t j = 0; j < grid_.n; ++j) psi[j] *= chirp_out_[j];
  half_kick(psi);
}

std::vector<Snapshot> split_step_evolve(const WaveFunction& psi0, const EvolutionConfig& cfg,
                                        const QuadraticModel& model) {
  model.validate();
  if (!(cfg.dt > 0.0) || !(cfg.t_final >= 0.0) || cfg.record_every < 1) {
    fail(ErrorCode::InvalidArgument, "evolution needs dt > 0, t_final >= 0, record_every >= 1");
  }
  check_edges(psi0, kEdgeThreshold, "split_step_evolve initial state");
  const double n0 = norm_sq(psi0);
  if (!(n0 > 0.0)) fail(ErrorCode::InvalidArgument, "initial state has zero norm");

  const auto steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  const double dt = steps > 0 ? cfg.t_final / static_cast<double>(steps) : cfg.dt;
  const SplitStepPropagator prop(psi0.grid, model, model.kappa * n0, dt);

  std::vector<Snapshot> out;
  out.push_back({0.0, psi0});
  std::vector<cplx> psi = psi0.samples;
  for (long k = 1; k <= steps; ++k) {
    prop.step(psi);
    if (k % cfg.record_every == 0 || k == steps) {
      WaveFunction w(psi0.grid, psi);
      const double drift = std::abs(norm_sq(w) - n0) / n0;
      if (!(drift <= kUnstableNormDrift)) {
        std::ostringstream os;
        os << "norm drift " << drift << " at t = " << static_cast<double>(k) * dt;
        fail(ErrorCode::Unstable, os.str());
      }
      check_edges(w, kEdgeThreshold, "split_step_evolve");
      out.push_back({static_cast<double>(k) * dt, std::move(w)});
    }
  }
  return out;
}

double MomentErrors::first() const { return std::max(p, x); }
double MomentErrors::second() const { return std::max({d11, d12, d22}); }
double MomentErrors::max() const { return std::max(first(), second()); }

namespace {

constexpr double kFdStep = 1e-6;

WaveFunction time_derivative(const Candidate& cand, double t) {
  if (cand.time_derivative) return cand.time_derivative(t);
  const WaveFunction plus = cand.value(t + kFdStep);
  const WaveFunction minus = cand.value(t - kFdStep);
  WaveFunction d(plus.grid);
  for (std::size_t j = 0; j < d.size(); ++j) d.samples[j] = (plus.samples[j] - minus.samples[j]) / (2.0 * kFdStep);
  return d;
}

/// ‖−iħψ_t + Ĥ_quψ + (α x² + β x + γ)ψ‖ / ‖ψ‖.
double relative_norm(const WaveFunction& psi, const WaveFunction& psi_t, const QuadraticModel& m, double quad,
                     double lin, double cst) {
  const Grid& g = psi.grid;
  const std::vector<cplx> p1 = spectral::momentum(psi.samples, g, m.hbar);
  const std::vector<cplx> p2 = spectral::momentum(p1, g, m.hbar);
  const cplx ih(0.0, m.hbar);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double x = g.x(j);
    const cplx v = psi.samples[j];
    const cplx h = 0.5 * (m.mu * p2[j] + m.rho * (2.0 * x * p1[j] - ih * v) + m.sigma * x * x * v);
    const cplx f = -ih * psi_t.samples[j] + h + (quad * x * x + lin * x + cst) * v;
    num += std::norm(f);
    den += std::norm(v);
  }
  return std::sqrt(num / den);
}

}  // namespace

ResidualReport residual(const Candidate& cand, double t, const QuadraticModel& m) {
  const WaveFunction psi = cand.value(t);
  const WaveFunction psi_t = time_derivative(cand, t);
  double n = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double x = psi.grid.x(j), r = std::norm(psi.samples[j]);
    n += r;
    m1 += x * r;
    m2 += x * x * r;
  }
  n *= psi.grid.dx;
  m1 *= psi.grid.dx;
  m2 *= psi.grid.dx;
  ResidualReport rep;
  rep.relative_residual =
      relative_norm(psi, psi_t, m, 0.5 * m.kappa * m.a * n, m.kappa * m.b * m1, 0.5 * m.kappa * m.c * m2);
  const double n_init = norm_sq(cand.value(0.0));
  rep.norm_drift = std::abs(n - n_init) / n_init;
  return rep;
}

ResidualReport ale_residual(const Candidate& cand, double t, const ParamSet& C, const EffectiveParams& eff,
                            const QuadraticModel& m) {
  const WaveFunction psi = cand.value(t);
  const WaveFunction psi_t = time_derivative(cand, t);
  const MomentState s = hes_analytic_1d(t, C, eff, m);
  const double kt = eff.kappa_tilde;
  ResidualReport rep;
  rep.relative_residual =
      relative_norm(psi, psi_t, m, 0.5 * kt * m.a, kt * m.b * s.x, 0.5 * kt * m.c * (s.d22 + s.x * s.x));
  const double n_init = norm_sq(cand.value(0.0));
  rep.norm_drift = std::abs(norm_sq(psi) - n_init) / n_init;
  return rep;
}

MomentComparison compare_moments(const std::vector<Snapshot>& evolution, const ParamSet& C,
                                 const EffectiveParams& eff, const QuadraticModel& m) {
  MomentComparison cmp;
  for (const Snapshot& snap : evolution) {
    const MomentState got = moments_from_wavefunction(snap.psi, m).first;
    const MomentState want = hes_analytic_1d(snap.t, C, eff, m);
    MomentErrors e{std::abs(got.p - want.p), std::abs(got.x - want.x), std::abs(got.d11 - want.d11),
                   std::abs(got.d12 - want.d12), std::abs(got.d22 - want.d22)};
    cmp.times.push_back(snap.t);
    cmp.per_time.push_back(e);
    cmp.max.p = std::max(cmp.max.p, e.p);
    cmp.max.x = std::max(cmp.max.x, e.x);
    cmp.max.d11 = std::max(cmp.max.d11, e.d11);
    cmp.max.d12 = std::max(cmp.max.d12, e.d12);
    cmp.max.d22 = std::max(cmp.max.d22, e.d22);
  }
  return cmp;
}

Candidate psi_nu_candidate(int nu, const EffectiveParams& eff, const QuadraticModel& m, const Grid& grid) {
  const double rate = psi_nu_phase_rate(nu, eff, m);
  Candidate c;
  c.value = [=](double t) { return exact_psi_nu(nu, t, eff, m, grid); };
  c.time_derivative = [=](double t) {
    WaveFunction w = exact_psi_nu(nu, t, eff, m, grid);
    for (auto& v : w.samples) v *= cplx(0.0, -rate);
    return w;
  };
  return c;
}

Candidate displaced_candidate(int nu, cplx alpha, const EffectiveParams& eff, const QuadraticModel& m,
                              const Grid& grid) {
  Candidate c;
  c.value = [=](double t) { return displaced_solution(nu, alpha, t, eff, m, grid); };
  c.time_derivative = [=](double t) { return displaced_solution_dt(nu, alpha, t, eff, m, grid); };
  return c;
}

Candidate ale_fock_candidate(int nu, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m,
                             const Grid& grid) {
  Candidate c;
  c.value = [=](double t) { return ale_fock_solution(nu, t, C, eff, m, grid); };
  c.time_derivative = [=](double t) { return ale_fock_solution_dt(nu, t, C, eff, m, grid); };
  return c;
}

Candidate intertwined_candidate(int nu, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                                const QuadraticModel& m, const Grid& grid) {
  Candidate c;
  c.value = [=](double t) {
    return intertwiner_apply(ale_fock_solution(nu, t, C_from, eff, m, grid), t, C_from, C_to, eff, m);
  };
  return c;
}

Grid grid_for_orbit(const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m) {
  return design_grid(orbit_extent(C, eff, m), m.hbar);
}

Grid grid_for_pair(int nu, const ParamSet& C_from, const ParamSet& C_to, const EffectiveParams& eff,
                   const QuadraticModel& m) {
  OrbitExtent e = orbit_extent(C_from, eff, m);
  const OrbitExtent e2 = orbit_extent(C_to, eff, m);
  // |b(t)| ≤ ‖𝒳(t)‖·|b(0)|; sampled over one period of the germ system.
  double bx = 0.0, bp = 0.0;
  for (int k = 0; k < 256; ++k) {
    const GermVector b = germ_vector(2.0 * std::numbers::pi / eff.omega * k / 256.0, C_from, C_to, eff, m);
    bx = std::max(bx, std::abs(b.b_x));
    bp = std::max(bp, std::abs(b.b_p));
  }
  // Both states are K̂-transported Fock states: their widths are those of Fock state ν.
  const double c5 = fock_c5(nu, eff, m);
  e.x_abs_max = std::max(e.x_abs_max, e2.x_abs_max + bx);
  e.p_abs_max = std::max(e.p_abs_max, e2.p_abs_max + bp);
  e.d22_max = c5;
  e.d11_max = eff.sigma_tilde * c5 / m.mu;
  return design_grid(e, m.hbar);
}

}  // namespace gpesym
