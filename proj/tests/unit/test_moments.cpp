#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "../support/oracles.hpp"
#include "helpers.hpp"

using namespace gpesym;

namespace {

double max_diff(const MomentState& a, const MomentState& b) {
  const auto x = a.to_array(), y = b.to_array();
  double d = 0.0;
  for (int i = 0; i < 5; ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace

TEST_CASE("hes_rhs: stationary point and direct substitution") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const double c5 = 0.8;
  const MomentVector st{0.0, 0.0, eff.sigma_tilde * c5 / m.mu, -m.rho * c5 / m.mu, c5};
  for (double v : hes_rhs(0.0, st, eff, m)) CHECK(std::abs(v) < 1e-15);

  const QuadraticModel h = testing::harmonic_model();
  const auto r = hes_rhs(0.0, {1.0, 0.0, 0.0, 0.0, 0.0}, derive_effective(h, 1.0), h);
  CHECK(r == MomentVector{0.0, 1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("property: hes_rhs matches central differences of the analytic solution") {
  oracle::ModelGen gen(11);
  for (int s = 0; s < 40; ++s) {
    const QuadraticModel m = gen.model();
    const EffectiveParams eff = derive_effective(m, 1.0);
    const ParamSet C = gen.params(0.5);
    const double t = gen.uniform(0.0, 20.0), h = 1e-6;
    const auto plus = hes_analytic_1d(t + h, C, eff, m).to_array();
    const auto minus = hes_analytic_1d(t - h, C, eff, m).to_array();
    const auto rhs = hes_rhs(t, hes_analytic_1d(t, C, eff, m).to_array(), eff, m);
    for (int i = 0; i < 5; ++i) CHECK(std::abs((plus[i] - minus[i]) / (2.0 * h) - rhs[i]) < 1e-8);
  }
}

TEST_CASE("hes_analytic_1d: stationary constants and t = 0 values") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const double c5 = 0.37;
  for (double t : {0.0, 0.3, 7.0, 123.4}) {
    const MomentState s = hes_analytic_1d(t, ParamSet::stationary(c5), eff, m);
    CHECK(s.x == 0.0);
    CHECK(s.p == 0.0);
    CHECK(s.d22 == doctest::Approx(c5).epsilon(1e-14));
    CHECK(s.d12 == doctest::Approx(-m.rho * c5 / m.mu).epsilon(1e-14));
    CHECK(s.d11 == doctest::Approx(eff.sigma_tilde * c5 / m.mu).epsilon(1e-14));
  }
  const ParamSet C{0.4, -0.7, 0.05, 0.1, 0.6};
  const MomentState s0 = hes_analytic_1d(0.0, C, eff, m);
  CHECK(s0.x == doctest::Approx(C.c2));
  CHECK(s0.p == doctest::Approx((eff.omega_bar * C.c1 - m.rho * C.c2) / m.mu));
  CHECK(s0.d22 == doctest::Approx(C.c4 + C.c5));
}

TEST_CASE("analytic solution against an independent RK4 at t = 0.7") {
  oracle::ModelGen gen(12);
  for (int s = 0; s < 10; ++s) {
    const QuadraticModel m = gen.model();
    const EffectiveParams eff = derive_effective(m, 1.0);
    const ParamSet C = gen.params(0.5);
    const std::function<std::array<double, 5>(const std::array<double, 5>&)> f = [&](const auto& y) {
      return hes_rhs(0.0, y, eff, m);
    };
    const auto want = hes_analytic_1d(0.7, C, eff, m);
    const auto oracle_end = oracle::rk4<5>(f, hes_analytic_1d(0.0, C, eff, m).to_array(), 0.7, 700);
    CHECK(max_diff(MomentState::from_array(oracle_end), want) < 1e-9);
    const auto traj = integrate_hes_numeric(hes_analytic_1d(0.0, C, eff, m), {0.7}, 1e-3, eff, m);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0].t == 0.7);
    CHECK(max_diff(traj[0].state, want) < 1e-9);
  }
}

TEST_CASE("integrate_hes_numeric: stationary trajectory is constant") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const MomentState st = hes_analytic_1d(0.0, ParamSet::stationary(0.5), eff, m);
  const auto traj = integrate_hes_numeric(st, {1.0, 5.0, 10.0}, default_hes_step(eff), eff, m);
  for (const auto& pt : traj) CHECK(max_diff(pt.state, st) < 1e-14);
}

TEST_CASE("property: determinant of the covariance is invariant") {
  oracle::ModelGen gen(13);
  for (int s = 0; s < 10; ++s) {
    const QuadraticModel m = gen.model();
    const EffectiveParams eff = derive_effective(m, 1.0);
    const ParamSet C = gen.params(0.5);
    const MomentState init = hes_analytic_1d(0.0, C, eff, m);
    const auto traj = integrate_hes_numeric(init, {2.0, 5.0, 10.0 / eff.omega}, 1e-3, eff, m);
    for (const auto& pt : traj) {
      CHECK(std::abs(pt.state.det() - init.det()) / init.det() < 1e-10);
      CHECK(std::abs(hes_analytic_1d(pt.t, C, eff, m).det() - init.det()) / init.det() < 1e-12);
    }
  }
}

TEST_CASE("RK4 converges at fourth order") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const ParamSet C{0.7, -0.4, 0.05, -0.08, 0.6};
  auto err = [&](double step) {
    const auto traj = integrate_hes_numeric(hes_analytic_1d(0.0, C, eff, m), {5.0}, step, eff, m);
    return max_diff(traj[0].state, hes_analytic_1d(5.0, C, eff, m));
  };
  const double ratio = err(0.1) / err(0.05);
  CHECK(ratio > 13.0);
  CHECK(ratio < 19.0);
}

TEST_CASE("first moments do not see the second-moment constants") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const ParamSet a{0.3, -0.2, 0.0, 0.0, 0.5};
  const ParamSet b{0.3, -0.2, 0.07, -0.1, 0.9};
  for (double t : {0.0, 0.9, 4.2}) {
    CHECK(hes_analytic_1d(t, a, eff, m).x == hes_analytic_1d(t, b, eff, m).x);
    CHECK(hes_analytic_1d(t, a, eff, m).p == hes_analytic_1d(t, b, eff, m).p);
  }
}

TEST_CASE("property: fit_constants inverts the analytic solution at t = 0") {
  oracle::ModelGen gen(14);
  for (int s = 0; s < 200; ++s) {
    const QuadraticModel m = gen.model();
    const EffectiveParams eff = derive_effective(m, 1.0);
    const ParamSet C = gen.params(gen.uniform(0.2, 2.0));
    const ParamSet f = fit_constants(hes_analytic_1d(0.0, C, eff, m), eff, m);
    const double scale = std::max({1.0, std::abs(C.c1), std::abs(C.c5)});
    CHECK(std::abs(f.c1 - C.c1) < 1e-10 * scale);
    CHECK(std::abs(f.c2 - C.c2) < 1e-10 * scale);
    CHECK(std::abs(f.c3 - C.c3) < 1e-10 * scale);
    CHECK(std::abs(f.c4 - C.c4) < 1e-10 * scale);
    CHECK(std::abs(f.c5 - C.c5) < 1e-10 * scale);
  }
}

TEST_CASE("fit_constants rejects an indefinite covariance") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  try {
    fit_constants(MomentState{0.0, 0.0, 1.0, 2.0, 1.0}, eff, m);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("matrix HES agrees with the five-component system") {
  oracle::ModelGen gen(15);
  for (int s = 0; s < 5; ++s) {
    const QuadraticModel m = gen.model();
    const EffectiveParams eff = derive_effective(m, 1.0);
    const ParamSet C = gen.params(0.5);
    const MatrixHes sys = matrix_hes_1d(m, eff.kappa_tilde);
    const MomentState init = hes_analytic_1d(0.0, C, eff, m);
    const MatrixMoments mm = to_matrix(init);
    CHECK(max_diff(from_matrix(mm), init) == 0.0);
    // The right-hand sides agree pointwise.
    Eigen::VectorXd dz;
    Eigen::MatrixXd dd;
    sys.rhs(mm.z, mm.delta, dz, dd);
    const auto r = hes_rhs(0.0, init.to_array(), eff, m);
    const MomentState rs = from_matrix({dz, dd});
    CHECK(max_diff(rs, MomentState::from_array(r)) < 1e-14);
    const auto traj = integrate_matrix_hes(mm, {1.0, 3.0}, 1e-3, sys);
    for (const auto& [t, state] : traj) CHECK(max_diff(from_matrix(state), hes_analytic_1d(t, C, eff, m)) < 1e-9);
  }
}

TEST_CASE("moments of the ground state") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const double w = eff.omega, c5 = m.hbar * m.mu / (2.0 * w);
  const Grid g = grid_for_orbit(ParamSet::stationary(c5), eff, m);
  const auto [mom, n] = moments_from_wavefunction(ground_state(0.0, c5, eff, m, g), m);
  CHECK(std::abs(n - 1.0) < 1e-10);
  CHECK(std::abs(mom.x) < 1e-8);
  CHECK(std::abs(mom.p) < 1e-8);
  CHECK(std::abs(mom.d22 - c5) < 1e-8);
  CHECK(std::abs(mom.d11 - m.hbar * (m.rho * m.rho + w * w) / (2.0 * w * m.mu)) < 1e-8);
  CHECK(std::abs(mom.d12 + m.hbar * m.rho / (2.0 * w)) < 1e-8);
  const ParamSet f = fit_constants(mom, eff, m);
  CHECK(std::abs(f.c1) < 1e-8);
  CHECK(std::abs(f.c2) < 1e-8);
  CHECK(std::abs(f.c3) < 1e-8);
  CHECK(std::abs(f.c4) < 1e-8);
  CHECK(std::abs(f.c5 - c5) < 1e-8);
}

TEST_CASE("moments of Fock states scale as 2nu + 1") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const double c5_0 = fock_c5(0, eff, m);
  const Grid g = grid_for_orbit(ParamSet::stationary(fock_c5(6, eff, m)), eff, m);
  const MomentState ground = moments_from_wavefunction(fock_state(0, 0.0, c5_0, eff, m, g), m).first;
  for (int nu = 1; nu <= 6; ++nu) {
    const MomentState s = moments_from_wavefunction(fock_state(nu, 0.2, fock_c5(nu, eff, m), eff, m, g), m).first;
    CHECK(std::abs(s.d22 - (2 * nu + 1) * ground.d22) < 1e-8);
    CHECK(std::abs(s.d11 - (2 * nu + 1) * ground.d11) < 1e-8);
    CHECK(std::abs(s.d12 - (2 * nu + 1) * ground.d12) < 1e-8);
    const ParamSet f = fit_constants(s, eff, m);
    CHECK(std::abs(f.c5 - fock_c5(nu, eff, m)) < 1e-8);
    CHECK(std::abs(f.c3) + std::abs(f.c4) < 1e-8);
  }
}

TEST_CASE("a momentum kick shifts the first momentum moment") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const double c5 = fock_c5(0, eff, m), p0 = 0.8;
  const Grid g = Grid::symmetric(14.0, 512);
  WaveFunction psi = ground_state(0.0, c5, eff, m, g);
  for (std::size_t j = 0; j < g.n; ++j) psi.samples[j] *= std::polar(1.0, p0 * g.x(j) / m.hbar);
  CHECK(std::abs(moments_from_wavefunction(psi, m).first.p - p0) < 1e-8);
}

TEST_CASE("ground-state moments scale with hbar") {
  QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const Grid g = Grid::symmetric(16.0, 1024);
  const MomentState s1 = moments_from_wavefunction(ground_state(0.0, fock_c5(0, eff, m), eff, m, g), m).first;
  m.hbar = 2.0;
  const MomentState s2 = moments_from_wavefunction(ground_state(0.0, fock_c5(0, eff, m), eff, m, g), m).first;
  CHECK(std::abs(s2.d22 - 2.0 * s1.d22) < 1e-8);
  CHECK(std::abs(s2.d11 - 2.0 * s1.d11) < 1e-8);
  CHECK(std::abs(s2.det() - 4.0 * s1.det()) < 1e-8);
}

TEST_CASE("a grid that cuts the tails raises EdgeLeak") {
  const QuadraticModel m = testing::reference_model();
  const EffectiveParams eff = derive_effective(m, 1.0);
  const Grid g = Grid::symmetric(3.0, 128);
  WaveFunction psi(g);
  for (std::size_t j = 0; j < g.n; ++j) psi.samples[j] = std::exp(-0.5 * g.x(j) * g.x(j));
  try {
    moments_from_wavefunction(psi, m);
    FAIL("no EdgeLeak");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EdgeLeak);
  }
}

TEST_CASE("trajectory CSV has the documented columns and round-trip precision") {
  std::ostringstream os;
  write_trajectory_csv(os, {{0.1, MomentState{1.0 / 3.0, -2.0, 0.5, 0.0, 1e-20}}});
  const std::string s = os.str();
  CHECK(s.rfind("t,p,x,d11,d12,d22\n", 0) == 0);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("-0,") == std::string::npos);
}
