#include "gpesym/moments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "gpesym/csv.hpp"
#include "gpesym/errors.hpp"
#include "gpesym/spectral.hpp"

namespace gpesym {

namespace {

void require_oscillatory(const EffectiveParams& eff) {
  if (!(eff.omega > 0.0) || !(eff.omega_bar > 0.0)) {
    fail(ErrorCode::NonOscillatoryRegime, "Omega and Omega_bar must be positive");
  }
}

MomentVector axpy(const MomentVector& y, double h, const MomentVector& k) {
  MomentVector r;
  for (std::size_t i = 0; i < 5; ++i) r[i] = y[i] + h * k[i];
  return r;
}

}  // namespace

MomentVector hes_rhs(double, const MomentVector& s, const EffectiveParams& eff, const QuadraticModel& m) {
  const double p = s[0], x = s[1], d11 = s[2], d12 = s[3], d22 = s[4];
  return {
      -m.rho * p - eff.sigma0 * x,
      m.mu * p + m.rho * x,
      -2.0 * m.rho * d11 - 2.0 * eff.sigma_tilde * d12,
      m.mu * d11 - eff.sigma_tilde * d22,
      2.0 * m.mu * d12 + 2.0 * m.rho * d22,
  };
}

MomentState hes_analytic_1d(double t, const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m) {
  require_oscillatory(eff);
  const double wb = eff.omega_bar, w = eff.omega, mu = m.mu, rho = m.rho;
  const double s1 = std::sin(wb * t), c1 = std::cos(wb * t);
  const double s2 = std::sin(2.0 * w * t), c2 = std::cos(2.0 * w * t);

  MomentState r;
  r.x = C.c1 * s1 + C.c2 * c1;
  r.p = ((wb * C.c1 - rho * C.c2) * c1 - (wb * C.c2 + rho * C.c1) * s1) / mu;
  r.d22 = C.c3 * s2 + C.c4 * c2 + C.c5;
  r.d12 = ((w * C.c3 - rho * C.c4) * c2 - (w * C.c4 + rho * C.c3) * s2) / mu - rho * C.c5 / mu;
  const double q = rho * rho - w * w;
  r.d11 = ((q * C.c3 + 2.0 * rho * w * C.c4) * s2 + (q * C.c4 - 2.0 * rho * w * C.c3) * c2) / (mu * mu) +
          eff.sigma_tilde * C.c5 / mu;
  return r;
}

double default_hes_step(const EffectiveParams& eff) {
  require_oscillatory(eff);
  return std::min(1e-3, 0.01 / std::max(eff.omega, eff.omega_bar));
}

std::vector<TrajectoryPoint> integrate_hes_numeric(const MomentState& initial, const std::vector<double>& times,
                                                   double step, const EffectiveParams& eff,
                                                   const QuadraticModel& model) {
  if (!(step > 0.0)) fail(ErrorCode::InvalidArgument, "RK4 step must be positive");
  require_oscillatory(eff);
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  MomentVector y = initial.to_array();
  double t = 0.0;
  for (double target : times) {
    if (!(target >= t)) fail(ErrorCode::InvalidArgument, "requested times must be non-negative and sorted");
    const double span = target - t;
    const auto nsteps = static_cast<long>(std::ceil(span / step - 1e-12));
    if (nsteps > 0) {
      const double h = span / static_cast<double>(nsteps);
      for (long i = 0; i < nsteps; ++i) {
        const double ti = t + static_cast<double>(i) * h;
        const MomentVector k1 = hes_rhs(ti, y, eff, model);
        const MomentVector k2 = hes_rhs(ti + 0.5 * h, axpy(y, 0.5 * h, k1), eff, model);
        const MomentVector k3 = hes_rhs(ti + 0.5 * h, axpy(y, 0.5 * h, k2), eff, model);
        const MomentVector k4 = hes_rhs(ti + h, axpy(y, h, k3), eff, model);
        for (std::size_t j = 0; j < 5; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
    }
    t = target;
    out.push_back({t, MomentState::from_array(y)});
  }
  return out;
}

std::pair<MomentState, double> moments_from_wavefunction(const WaveFunction& psi, const QuadraticModel& model,
                                                         double edge_threshold) {
  check_edges(psi, edge_threshold, "moments_from_wavefunction");
  const Grid& g = psi.grid;
  const auto& s = psi.samples;
  const std::vector<cplx> ppsi = spectral::momentum(s, g, model.hbar);

  double n0 = 0.0, x1 = 0.0;
  cplx p1{};
  for (std::size_t j = 0; j < g.n; ++j) {
    const double rho = std::norm(s[j]);
    n0 += rho;
    x1 += g.x(j) * rho;
    p1 += std::conj(s[j]) * ppsi[j];
  }
  if (!(n0 > 0.0)) fail(ErrorCode::InvalidArgument, "wavefunction has zero norm");
  MomentState m;
  m.x = x1 / n0;
  m.p = p1.real() / n0;

  // Centered second moments avoid cancellation for displaced states.
  double xx = 0.0, pp = 0.0, xp = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    const double dxj = g.x(j) - m.x;
    const cplx dp = ppsi[j] - m.p * s[j];
    xx += dxj * dxj * std::norm(s[j]);
    pp += std::norm(dp);
    xp += dxj * (std::conj(s[j]) * dp).real();
  }
  m.d22 = xx / n0;
  m.d11 = pp / n0;
  m.d12 = xp / n0;
  return {m, n0 * g.dx};
}

ParamSet fit_constants(const MomentState& in, const EffectiveParams& eff, const QuadraticModel& model) {
  if (!(eff.omega > 0.0) || !(eff.omega_bar > 0.0)) fail(ErrorCode::SingularFit, "Omega vanishes");
  const double scale = std::max({std::abs(in.d11 * in.d22), in.d12 * in.d12, 1e-300});
  if (in.d11 < 0.0 || in.d22 < 0.0 || in.det() < -1e-12 * scale) {
    std::ostringstream os;
    os << "initial covariance is not positive semidefinite (d11=" << in.d11 << ", d12=" << in.d12
       << ", d22=" << in.d22 << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  const double mu = model.mu, rho = model.rho, w = eff.omega;

  ParamSet C;
  C.c2 = in.x;
  C.c1 = (mu * in.p + rho * in.x) / eff.omega_bar;
  // Closed-form solution of the 3×3 system Δ(0, C) = (d11, d12, d22).
  C.c3 = (mu * in.d12 + rho * in.d22) / w;
  C.c5 = (mu * mu * in.d11 - (rho * rho - w * w) * in.d22 + 2.0 * rho * w * C.c3) / (2.0 * w * w);
  C.c4 = in.d22 - C.c5;
  return C;
}

OrbitExtent orbit_extent(const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& m) {
  require_oscillatory(eff);
  const double wb = eff.omega_bar, w = eff.omega, mu = m.mu, rho = m.rho;
  const double q = rho * rho - w * w;
  OrbitExtent e;
  e.x_abs_max = std::hypot(C.c1, C.c2);
  e.p_abs_max = std::hypot(wb * C.c1 - rho * C.c2, wb * C.c2 + rho * C.c1) / mu;
  e.d22_max = std::hypot(C.c3, C.c4) + C.c5;
  e.d11_max = std::hypot(q * C.c3 + 2.0 * rho * w * C.c4, q * C.c4 - 2.0 * rho * w * C.c3) / (mu * mu) +
              eff.sigma_tilde * C.c5 / mu;
  e.width = std::sqrt(m.hbar * mu / w);
  return e;
}

Eigen::MatrixXd MatrixHes::symplectic() const {
  const Eigen::Index n = dim() / 2;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return J;
}

void MatrixHes::rhs(const Eigen::VectorXd& z, const Eigen::MatrixXd& delta, Eigen::VectorXd& dz,
                    Eigen::MatrixXd& ddelta) const {
  const Eigen::MatrixXd J = symplectic();
  const Eigen::MatrixXd M = h_zz + kappa_tilde * w_zz;
  dz = J * (h_z + (h_zz + kappa_tilde * (w_zz + w_zw)) * z);
  ddelta = J * M * delta - delta * M * J;
}

MatrixHes matrix_hes_1d(const QuadraticModel& model, double kappa_tilde) {
  MatrixHes s;
  s.h_z = Eigen::VectorXd::Zero(2);
  s.h_zz.resize(2, 2);
  s.h_zz << model.mu, model.rho, model.rho, model.sigma;
  s.w_zz = Eigen::MatrixXd::Zero(2, 2);
  s.w_zw = Eigen::MatrixXd::Zero(2, 2);
  s.w_zz(1, 1) = model.a;
  s.w_zw(1, 1) = model.b;
  s.kappa_tilde = kappa_tilde;
  return s;
}

MatrixMoments to_matrix(const MomentState& m) {
  MatrixMoments r;
  r.z.resize(2);
  r.z << m.p, m.x;
  r.delta.resize(2, 2);
  r.delta << m.d11, m.d12, m.d12, m.d22;
  return r;
}

MomentState from_matrix(const MatrixMoments& m) {
  return {m.z(0), m.z(1), m.delta(0, 0), 0.5 * (m.delta(0, 1) + m.delta(1, 0)), m.delta(1, 1)};
}

std::vector<std::pair<double, MatrixMoments>> integrate_matrix_hes(const MatrixMoments& initial,
                                                                   const std::vector<double>& times, double step,
                                                                   const MatrixHes& sys) {
  if (!(step > 0.0)) fail(ErrorCode::InvalidArgument, "RK4 step must be positive");
  std::vector<std::pair<double, MatrixMoments>> out;
  Eigen::VectorXd z = initial.z;
  Eigen::MatrixXd d = initial.delta;
  Eigen::VectorXd k1z, k2z, k3z, k4z;
  Eigen::MatrixXd k1d, k2d, k3d, k4d;
  double t = 0.0;
  for (double target : times) {
    if (!(target >= t)) fail(ErrorCode::InvalidArgument, "requested times must be non-negative and sorted");
    const double span = target - t;
    const auto nsteps = static_cast<long>(std::ceil(span / step - 1e-12));
    if (nsteps > 0) {
      const double h = span / static_cast<double>(nsteps);
      for (long i = 0; i < nsteps; ++i) {
        sys.rhs(z, d, k1z, k1d);
        sys.rhs(z + 0.5 * h * k1z, d + 0.5 * h * k1d, k2z, k2d);
        sys.rhs(z + 0.5 * h * k2z, d + 0.5 * h * k2d, k3z, k3d);
        sys.rhs(z + h * k3z, d + h * k3d, k4z, k4d);
        z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        d += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      }
    }
    t = target;
    out.push_back({t, MatrixMoments{z, d}});
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory) {
  os << "t,p,x,d11,d12,d22\n";
  for (const auto& pt : trajectory) {
    os << fmt17(pt.t) << ',' << fmt17(pt.state.p) << ',' << fmt17(pt.state.x) << ',' << fmt17(pt.state.d11)
       << ',' << fmt17(pt.state.d12) << ',' << fmt17(pt.state.d22) << '\n';
  }
}

}  // namespace gpesym
