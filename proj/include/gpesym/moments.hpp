#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "gpesym/grid.hpp"
#include "gpesym/model.hpp"

namespace gpesym {

/// First moments (p, x) and centered second moments; d11 is the momentum
/// variance, d22 the position variance, d12 = d21 the symmetrized covariance.
struct MomentState {
  double p = 0.0;
  double x = 0.0;
  double d11 = 0.0;
  double d12 = 0.0;
  double d22 = 0.0;

  std::array<double, 5> to_array() const { return {p, x, d11, d12, d22}; }
  static MomentState from_array(const std::array<double, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }
  double det() const { return d11 * d22 - d12 * d12; }
};

/// Integration constants labelling a phase orbit.
struct ParamSet {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;

  static ParamSet stationary(double c5) { return {0.0, 0.0, 0.0, 0.0, c5}; }
};

using MomentVector = std::array<double, 5>;

MomentVector hes_rhs(double t, const MomentVector& state, const EffectiveParams& eff,
                     const QuadraticModel& model);

MomentState hes_analytic_1d(double t, const ParamSet& C, const EffectiveParams& eff,
                            const QuadraticModel& model);

struct TrajectoryPoint {
  double t = 0.0;
  MomentState state;
};

/// Classical RK4 from t = 0. Each requested time is hit exactly: the interval
/// to it is split into the fewest equal steps no longer than `step`.
/// `times` must be non-negative and non-decreasing.
std::vector<TrajectoryPoint> integrate_hes_numeric(const MomentState& initial, const std::vector<double>& times,
                                                   double step, const EffectiveParams& eff,
                                                   const QuadraticModel& model);

/// min(1e−3, 0.01/Ω).
double default_hes_step(const EffectiveParams& eff);

/// Moments by trapezoidal quadrature in x and spectral differentiation in p.
/// Throws EdgeLeak when the edge amplitude is above `edge_threshold`.
std::pair<MomentState, double> moments_from_wavefunction(const WaveFunction& psi, const QuadraticModel& model,
                                                         double edge_threshold = kEdgeThreshold);

/// Inverts the closed form at t = 0. Throws SingularFit if Ω̄ or Ω vanishes,
/// InvalidArgument if the covariance is not positive semidefinite.
ParamSet fit_constants(const MomentState& initial, const EffectiveParams& eff, const QuadraticModel& model);

/// Samples max |X|, |P|, Δ₁₁, Δ₂₂ over one period of the slower frequency.
OrbitExtent orbit_extent(const ParamSet& C, const EffectiveParams& eff, const QuadraticModel& model);

/// Matrix Hamilton–Ehrenfest system in n degrees of freedom, z = (p, x):
///   ż = J{ℋ_z + [ℋ_zz + κ̃(W_zz + W_zw)] z},   Δ̇ = J M Δ − Δ M J,
/// with M = ℋ_zz + κ̃ W_zz and J = [[0, −I], [I, 0]].
struct MatrixHes {
  Eigen::VectorXd h_z;
  Eigen::MatrixXd h_zz;
  Eigen::MatrixXd w_zz;
  Eigen::MatrixXd w_zw;
  double kappa_tilde = 0.0;

  Eigen::Index dim() const { return h_zz.rows(); }
  Eigen::MatrixXd symplectic() const;
  void rhs(const Eigen::VectorXd& z, const Eigen::MatrixXd& delta, Eigen::VectorXd& dz,
           Eigen::MatrixXd& ddelta) const;
};

/// The one-dimensional model written in matrix form.
MatrixHes matrix_hes_1d(const QuadraticModel& model, double kappa_tilde);

struct MatrixMoments {
  Eigen::VectorXd z;
  Eigen::MatrixXd delta;
};

MatrixMoments to_matrix(const MomentState& m);
MomentState from_matrix(const MatrixMoments& m);

std::vector<std::pair<double, MatrixMoments>> integrate_matrix_hes(const MatrixMoments& initial,
                                                                   const std::vector<double>& times, double step,
                                                                   const MatrixHes& system);

/// Rows t,p,x,d11,d12,d22 at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory);

}  // namespace gpesym
