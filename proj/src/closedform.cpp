#include "gpesym/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "gpesym/csv.hpp"
#include "gpesym/spectral.hpp"

namespace gpesym {

namespace {

void require_omega(const EffectiveParams& eff) {
  if (!(eff.omega > 0.0)) fail(ErrorCode::NonOscillatoryRegime, "Omega must be positive");
}

void require_order(int nu) {
  if (nu < 0) fail(ErrorCode::InvalidArgument, "Fock index must be non-negative");
  if (nu > kMaxHermiteOrder) fail(ErrorCode::OverflowRisk, "Fock index above 64");
}

cplx i_pow(int nu) {
  switch (nu % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}


template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        double noise_density, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  // Below noise_density·|b − a| the difference is rounding and halving cannot reduce it.
  if (depth <= 0 || std::abs(diff) <= std::max(15.0 * tol, noise_density * std::abs(b - a))) {
    return left + right + diff / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, noise_density, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, noise_density, depth - 1);
}

}  // namespace

Eigen::Matrix2d cauchy_matrix(double t, const EffectiveParams& eff, const QuadraticModel& m) {
  require_omega(eff);
  const double w = eff.omega, s = std::sin(w * t), c = std::cos(w * t);
  Eigen::Matrix2d X;
  X << c - m.rho / w * s, -(w * w + m.rho * m.rho) / (m.mu * w) * s,
       m.mu / w * s,      c + m.rho / w * s;
  return X;
}

LadderFrame ladder_frame(double t, const EffectiveParams& eff, const QuadraticModel& m) {
  require_omega(eff);
  const double w = eff.omega;
  const cplx e = std::polar(1.0, w * t);
  return {e * cplx(-m.rho, w) / std::sqrt(w * m.mu), e * std::sqrt(m.mu / w)};
}

double action_integrand(double t, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m) {
  const MomentState s = hes_analytic_1d(t, C, eff, m);
  const double xdot = m.mu * s.p + m.rho * s.x;
  const double h = 0.5 * m.mu * s.p * s.p + 0.5 * s.x * s.x * (eff.sigma0 + eff.kappa_tilde * (m.b + m.c)) +
                   m.rho * s.p * s.x + 0.5 * eff.kappa_tilde * m.c * s.d22;
  return s.p * xdot - h;
}

double action_phase(double t, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m, double tol) {
  require_omega(eff);
  if (t == 0.0) return 0.0;
  auto f = [&](double s) { return action_integrand(s, C, eff, m); };
  // Panels of a quarter of the fastest period keep Simpson from converging
  // spuriously on an oscillating integrand.
  const double fastest = std::max(eff.omega_bar, 2.0 * eff.omega);
  const double panel = 0.25 * 2.0 * std::numbers::pi / fastest;
  const auto panels = static_cast<long>(std::ceil(std::abs(t) / panel));
  const double h = t / static_cast<double>(panels);
  const double panel_tol = tol / static_cast<double>(panels);
  // The integrand is a difference of terms of this size, so it carries
  // absolute rounding error of about ε times it.
  const OrbitExtent ext = orbit_extent(C, eff, m);
  const double term_scale = 1.5 * m.mu * ext.p_abs_max * ext.p_abs_max +
                            2.0 * std::abs(m.rho) * ext.p_abs_max * ext.x_abs_max +
                            0.5 * ext.x_abs_max * ext.x_abs_max * std::abs(eff.sigma0 + eff.kappa_tilde * (m.b + m.c)) +
                            0.5 * std::abs(eff.kappa_tilde * m.c) * ext.d22_max;
  const double noise_density = 64.0 * std::numeric_limits<double>::epsilon() * term_scale;
  double total = 0.0;
  for (long k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) * h;
    const double b = (k + 1 == panels) ? t : a + h;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(f, a, b, fa, fm, fb, whole, panel_tol, noise_density, 50);
  }
  return total;
}

double fock_c5(int nu, const EffectiveParams& eff, const QuadraticModel& m) {
  require_omega(eff);
  return m.hbar * m.mu / eff.omega * (nu + 0.5);
}

double psi_nu_phase_rate(int nu, const EffectiveParams& eff, const QuadraticModel& m) {
  require_omega(eff);
  return (nu + 0.5) * (eff.kappa_tilde * m.c * m.mu / (2.0 * eff.omega) + eff.omega);
}

EnvelopeValue fock_envelope(int nu, double y, const EffectiveParams& eff, const QuadraticModel& m) {
  require_order(nu);
  require_omega(eff);
  const double w = eff.omega, hm = m.hbar * m.mu;
  const double scale = std::sqrt(w / hm);
  const double zeta = scale * y;
  double h_prev = 0.0, h = 1.0;
  for (int k = 0; k < nu; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * zeta * h - std::sqrt(static_cast<double>(k) / (k + 1)) * h_prev;
    h_prev = h;
    h = next;
  }
  const double dh = nu > 0 ? std::sqrt(2.0 * nu) * h_prev : 0.0;
  const double norm = std::pow(w / (std::numbers::pi * hm), 0.25);
  const cplx a(w, m.rho);
  const cplx g = std::exp(-a * (y * y / (2.0 * hm)));
  const cplx pre = i_pow(nu) * norm;
  return {pre * h * g, pre * g * (dh * scale - h * a * (y / hm))};
}

WaveFunction ground_state(double t, double c5_0, const EffectiveParams& eff, const QuadraticModel& m,
                          const Grid& grid) {
  return fock_state(0, t, c5_0, eff, m, grid);
}

WaveFunction fock_state(int nu, double t, double c5_0p, const EffectiveParams& eff, const QuadraticModel& m,
                        const Grid& grid) {
  require_order(nu);
  require_omega(eff);
  grid.validate();
  const double phase = -((nu + 0.5) * eff.omega + eff.kappa_tilde * m.c * c5_0p / (2.0 * m.hbar)) * t;
  const cplx rot = std::polar(1.0, phase);
  WaveFunction psi(grid);
  for (std::size_t j = 0; j < grid.n; ++j) psi.samples[j] = fock_envelope(nu, grid.x(j), eff, m).value * rot;
  check_edges(psi, kEdgeThreshold, "fock_state");
  return psi;
}

WaveFunction exact_psi_nu(int nu, double t, const EffectiveParams& eff, const QuadraticModel& m, const Grid& grid) {
  return fock_state(nu, t, fock_c5(nu, eff, m), eff, m, grid);
}

WaveFunction ale_fock_solution(int nu, double t, const ParamSet& C, const EffectiveParams& eff,
                               const QuadraticModel& m, const Grid& grid) {
  require_order(nu);
  grid.validate();
  const MomentState s = hes_analytic_1d(t, C, eff, m);
  const double S = action_phase(t, C, eff, m);
  const double w0 = (nu + 0.5) * eff.omega;
  WaveFunction psi(grid);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double y = grid.x(j) - s.x;
    psi.samples[j] = fock_envelope(nu, y, eff, m).value * std::polar(1.0, (S + s.p * y) / m.hbar - w0 * t);
  }
  check_edges(psi, kEdgeThreshold, "ale_fock_solution");
  return psi;
}

WaveFunction ale_fock_solution_dt(int nu, double t, const ParamSet& C, const EffectiveParams& eff,
                                  const QuadraticModel& m, const Grid& grid) {
  require_order(nu);
  grid.validate();
  const MomentState s = hes_analytic_1d(t, C, eff, m);
  const double S = action_phase(t, C, eff, m);
  const double S_dot = action_integrand(t, C, eff, m);
  const double x_dot = m.mu * s.p + m.rho * s.x;
  const double p_dot = -m.rho * s.p - eff.sigma0 * s.x;
  const double w0 = (nu + 0.5) * eff.omega;
  WaveFunction out(grid);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double y = grid.x(j) - s.x;
    const EnvelopeValue e = fock_envelope(nu, y, eff, m);
    const cplx pre = std::polar(1.0, (S + s.p * y) / m.hbar - w0 * t);
    const cplx rate(0.0, -w0 + (S_dot + p_dot * y - s.p * x_dot) / m.hbar);
    out.samples[j] = pre * (-x_dot * e.derivative + rate * e.value);
  }
  return out;
}

namespace {

WaveFunction apply_ladder(const WaveFunction& psi, cplx coef_p, cplx coef_x, const MomentState& s,
                          const QuadraticModel& m) {
  const std::vector<cplx> p = spectral::momentum(psi.samples, psi.grid, m.hbar);
  const double inv = 1.0 / std::sqrt(2.0 * m.hbar);
  WaveFunction out(psi.grid);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const cplx v = psi.samples[j];
    out.samples[j] = inv * (coef_p * (p[j] - s.p * v) - coef_x * ((psi.grid.x(j) - s.x) * v));
  }
  return out;
}

}  // namespace

WaveFunction apply_annihilation(const WaveFunction& psi, double t, const ParamSet& C, const EffectiveParams& eff,
                                const QuadraticModel& m) {
  const LadderFrame f = ladder_frame(t, eff, m);
  return apply_ladder(psi, f.C, f.B, hes_analytic_1d(t, C, eff, m), m);
}

WaveFunction apply_creation(const WaveFunction& psi, double t, const ParamSet& C, const EffectiveParams& eff,
                            const QuadraticModel& m) {
  const LadderFrame f = ladder_frame(t, eff, m);
  return apply_ladder(psi, std::conj(f.C), std::conj(f.B), hes_analytic_1d(t, C, eff, m), m);
}

void write_wavefunction_csv(std::ostream& os, const WaveFunction& psi) {
  os << "x,re,im\n";
  for (std::size_t j = 0; j < psi.size(); ++j) {
    os << fmt17(psi.grid.x(j)) << ',' << fmt17(psi.samples[j].real()) << ',' << fmt17(psi.samples[j].imag())
       << '\n';
  }
}

void write_density_csv(std::ostream& os, const WaveFunction& psi) {
  os << "x,density\n";
  for (std::size_t j = 0; j < psi.size(); ++j) {
    os << fmt17(psi.grid.x(j)) << ',' << fmt17(std::norm(psi.samples[j])) << '\n';
  }
}

}  // namespace gpesym
