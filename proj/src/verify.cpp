#include "gpesym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gpesym/errors.hpp"

namespace gpesym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double period_of(const EffectiveParams& eff) { return kTwoPi / std::min(eff.omega, eff.omega_bar); }

Grid fock_grid(const RunConfig& cfg, int nu, const EffectiveParams& eff) {
  return cfg.grid_or(grid_for_orbit(ParamSet::stationary(fock_c5(nu, eff, cfg.model)), eff, cfg.model));
}

double hes_error(const MomentState& init, const ParamSet& C, double step, double t_end, const EffectiveParams& eff,
                 const QuadraticModel& m) {
  std::vector<double> times;
  for (int k = 1; k <= 200; ++k) times.push_back(t_end * k / 200.0);
  double err = 0.0;
  for (const auto& pt : integrate_hes_numeric(init, times, step, eff, m)) {
    const auto a = hes_analytic_1d(pt.t, C, eff, m).to_array();
    const auto b = pt.state.to_array();
    for (int i = 0; i < 5; ++i) err = std::max(err, std::abs(a[i] - b[i]));
  }
  return err;
}

}  // namespace

double safe_dt(const Grid& grid, const QuadraticModel& m, double wanted) {
  const double k = grid.k_max();
  return std::min(wanted, 0.9 * kTwoPi / (k * k * m.mu * m.hbar));
}

double measure_phase_rate(const WaveFunction& psi0, double t_final, const QuadraticModel& m) {
  EvolutionConfig cfg;
  cfg.t_final = t_final;
  cfg.dt = safe_dt(psi0.grid, m, t_final / 2000.0);
  cfg.record_every = 1;
  const auto snaps = split_step_evolve(psi0, cfg, m);
  double unwrapped = 0.0, prev = 0.0, stt = 0.0, stp = 0.0;
  for (const auto& s : snaps) {
    const double ph = std::arg(inner(psi0, s.psi));
    const double d = std::remainder(ph - prev, kTwoPi);
    unwrapped += d;
    prev = ph;
    stt += s.t * s.t;
    stp += s.t * unwrapped;
  }
  return -stp / stt;
}

PointResult evaluate_point(const RunConfig& cfg) {
  const QuadraticModel& m = cfg.model;
  const EffectiveParams eff = cfg.effective();
  PointResult r;
  r.omega = eff.omega;
  r.omega_bar = eff.omega_bar;
  r.kappa_tilde = eff.kappa_tilde;
  const int nu0 = cfg.nus.front();
  const cplx alpha0 = cfg.alphas.front();
  r.phase_rate = psi_nu_phase_rate(nu0, eff, m);
  const double period = period_of(eff);

  for (int nu : cfg.nus) {
    const Candidate c = psi_nu_candidate(nu, eff, m, fock_grid(cfg, nu, eff));
    for (int k = 0; k < 20; ++k) {
      r.residual_psi_nu = std::max(r.residual_psi_nu, residual(c, period * k / 20.0, m).relative_residual);
    }
    for (cplx alpha : cfg.alphas) {
      const Displacement d = displacement_params(alpha, nu, eff, m);
      const Candidate dc = displaced_candidate(nu, alpha, eff, m, cfg.grid_or(grid_for_orbit(d.constants, eff, m)));
      for (int k = 0; k < 20; ++k) {
        r.residual_displaced = std::max(r.residual_displaced, residual(dc, period * k / 20.0, m).relative_residual);
      }
    }
  }

  const double measured =
      measure_phase_rate(exact_psi_nu(nu0, 0.0, eff, m, fock_grid(cfg, nu0, eff)), kTwoPi / eff.omega, m);
  r.phase_rate_rel_error = std::abs(measured - r.phase_rate) / std::abs(r.phase_rate);

  const Displacement d = displacement_params(alpha0, nu0, eff, m);
  const Grid g = cfg.grid_or(grid_for_orbit(d.constants, eff, m));
  const WaveFunction psi0 = displaced_solution(nu0, alpha0, 0.0, eff, m, g);
  EvolutionConfig ev;
  ev.t_final = kTwoPi / eff.omega_bar;
  ev.dt = safe_dt(g, m, std::min(cfg.evolution.dt, ev.t_final / 1e4));
  ev.record_every = std::max(1, static_cast<int>(std::ceil(ev.t_final / ev.dt)) / 200);
  const auto snaps = split_step_evolve(psi0, ev, m);
  const MomentComparison cmp = compare_moments(snaps, d.constants, eff, m);
  r.moment_error_first = cmp.max.first();
  r.moment_error_second = cmp.max.second();
  const double n0 = norm_sq(psi0);
  for (const auto& s : snaps) r.norm_drift = std::max(r.norm_drift, std::abs(norm_sq(s.psi) - n0) / n0);
  return r;
}

std::vector<Check> run_checks(const RunConfig& cfg) {
  const QuadraticModel& m = cfg.model;
  const EffectiveParams eff = cfg.effective();
  std::vector<Check> checks;
  auto add = [&](const std::string& name, double value, double threshold, bool lower = false) {
    checks.push_back({name, value, threshold, lower});
  };

  double w = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LadderFrame f = ladder_frame(0.731 * k, eff, m);
    w = std::max(w, std::abs(f.B * std::conj(f.C) - f.C * std::conj(f.B) - cplx(0.0, 2.0)));
  }
  add("ladder_normalization", w, 1e-14);

  const double c5 = fock_c5(0, eff, m);
  double rhs = 0.0;
  for (double v : hes_rhs(0.0, hes_analytic_1d(0.0, ParamSet::stationary(c5), eff, m).to_array(), eff, m)) {
    rhs = std::max(rhs, std::abs(v));
  }
  add("hes_stationary_rhs", rhs, 1e-15);

  ParamSet C = displacement_params(cfg.alphas.front(), cfg.nus.front(), eff, m).constants;
  C.c3 = 0.1 * C.c5;
  C.c4 = -0.15 * C.c5;
  const MomentState init = hes_analytic_1d(0.0, C, eff, m);
  const double t_end = 10.0 / eff.omega;
  add("hes_analytic_vs_rk4", hes_error(init, C, 1e-3, t_end, eff, m), 1e-8);
  const double fast = std::max(eff.omega, eff.omega_bar);
  const double order = std::log2(hes_error(init, C, 0.08 / fast, t_end, eff, m) /
                                 hes_error(init, C, 0.04 / fast, t_end, eff, m));
  add("hes_rk4_order_deviation", std::abs(order - 4.0), 0.3);

  std::vector<double> times;
  for (int k = 1; k <= 400; ++k) times.push_back(t_end * k / 400.0);
  double det = 0.0;
  for (const auto& pt : integrate_hes_numeric(init, times, 1e-3, eff, m)) {
    det = std::max(det, std::abs(pt.state.det() - init.det()) / std::abs(init.det()));
  }
  add("determinant_drift", det, 1e-10);

  const auto [g0, n0] = moments_from_wavefunction(ground_state(0.0, c5, eff, m, fock_grid(cfg, 0, eff)), m);
  const double hb = m.hbar;
  const double gm = std::max({std::abs(g0.p), std::abs(g0.x), std::abs(g0.d22 - hb * m.mu / (2.0 * eff.omega)),
                              std::abs(g0.d11 - hb * (m.rho * m.rho + eff.omega * eff.omega) / (2.0 * eff.omega * m.mu)),
                              std::abs(g0.d12 + hb * m.rho / (2.0 * eff.omega))});
  add("ground_state_moments", gm, 1e-8);
  add("uncertainty_product", std::abs(g0.det() - hb * hb / 4.0), 1e-10);

  const Grid g10 = fock_grid(cfg, 10, eff);
  std::vector<WaveFunction> fock;
  for (int nu = 0; nu <= 10; ++nu) fock.push_back(fock_state(nu, 0.0, fock_c5(nu, eff, m), eff, m, g10));
  double ortho = 0.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) ortho = std::max(ortho, std::abs(inner(fock[i], fock[j]) - (i == j ? 1.0 : 0.0)));
  }
  add("fock_orthonormality", ortho, 1e-8);

  const PointResult pr = evaluate_point(cfg);
  add("residual_psi_nu", pr.residual_psi_nu, 1e-6);
  add("residual_displaced", pr.residual_displaced, 1e-6);

  const Grid gw = fock_grid(cfg, 0, eff);
  const double width = 2.0 * std::sqrt(hb * m.mu / eff.omega);
  const double rate0 = psi_nu_phase_rate(0, eff, m);
  Candidate neg;
  neg.value = [=](double t) {
    WaveFunction v(gw);
    for (std::size_t j = 0; j < gw.n; ++j) {
      const double x = gw.x(j);
      v.samples[j] = std::exp(-x * x / (2.0 * width * width)) * std::polar(1.0, -rate0 * t);
    }
    return v;
  };
  add("residual_negative_control", residual(neg, 0.3, m).relative_residual, 1e-2, true);

  double ladder = 0.0, disp0 = 0.0;
  for (int nu : cfg.nus) {
    if (nu > 10) continue;
    const Grid g = fock_grid(cfg, nu, eff);
    const WaveFunction want = exact_psi_nu(nu, 0.45, eff, m, g);
    const WaveFunction got = ladder_symmetry_apply(exact_psi_nu(0, 0.45, eff, m, g), nu, 0.45, eff, m);
    const WaveFunction d0 = displaced_solution(nu, cplx(0.0, 0.0), 0.45, eff, m, g);
    const double peak = max_abs(want);
    for (std::size_t j = 0; j < g.n; ++j) {
      ladder = std::max(ladder, std::abs(got.samples[j] - want.samples[j]) / peak);
      disp0 = std::max(disp0, std::abs(d0.samples[j] - want.samples[j]) / peak);
    }
  }
  add("ladder_reproduction_sup_rel", ladder, 1e-8);
  add("displaced_alpha0_vs_psi_nu", disp0, 1e-12);

  add("phase_rate_rel_error", pr.phase_rate_rel_error, 1e-8);
  add("split_step_norm_drift", pr.norm_drift, 1e-10);
  add("moment_consistency_first", pr.moment_error_first, 1e-5);
  add("moment_consistency_second", pr.moment_error_second, 1e-5);

  const ParamSet from = displacement_params(cfg.alphas.front(), 0, eff, m).constants;
  ParamSet to = ParamSet::stationary(1.3 * c5);
  to.c1 = -0.4;
  to.c3 = 0.1 * c5;
  const Grid gp = cfg.grid_or(grid_for_pair(1, from, to, eff, m));
  const Candidate image = intertwined_candidate(1, from, to, eff, m, gp);
  double inter = 0.0;
  for (double t : {0.0, 0.7, 2.1}) inter = std::max(inter, ale_residual(image, t, to, eff, m).relative_residual);
  add("intertwiner_residual", inter, 1e-6);

  QuadraticModel weak = m, lin = m;
  weak.kappa = 1e-8;
  lin.kappa = 0.0;
  const EffectiveParams eff_w = derive_effective(weak, 1.0), eff_l = derive_effective(lin, 1.0);
  double cont = 0.0;
  for (int nu : cfg.nus) {
    const Grid g = cfg.grid_or(grid_for_orbit(ParamSet::stationary(fock_c5(nu, eff_l, lin)), eff_l, lin));
    for (double t : {0.0, 1.0, 5.0, 10.0}) {
      cont = std::max(cont, distance(exact_psi_nu(nu, t, eff_w, weak, g), exact_psi_nu(nu, t, eff_l, lin, g)));
    }
  }
  add("kappa_continuity", cont, 1e-6);
  return checks;
}

}  // namespace gpesym
