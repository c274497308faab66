#include "gpesym/model.hpp"

#include <cmath>
#include <sstream>

#include "gpesym/errors.hpp"

namespace gpesym {

void QuadraticModel::validate() const {
  for (double v : {mu, rho, sigma, a, b, c, kappa, hbar}) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "model coefficients must be finite");
  }
  if (!(hbar > 0.0)) fail(ErrorCode::InvalidArgument, "hbar must be positive");
  // The Gaussian width √(ħμ/Ω) and the (Ω/μ)^{1/4} prefactor need μ > 0.
  if (!(mu > 0.0)) fail(ErrorCode::InvalidArgument, "mu must be positive");
}

EffectiveParams effective_from_kappa_tilde(const QuadraticModel& model, double kappa_tilde) {
  model.validate();
  if (!std::isfinite(kappa_tilde)) fail(ErrorCode::InvalidArgument, "kappa_tilde must be finite");

  EffectiveParams eff;
  eff.kappa_tilde = kappa_tilde;
  eff.sigma0 = model.sigma + kappa_tilde * (model.a + model.b);
  eff.sigma_tilde = model.sigma + kappa_tilde * model.a;

  const double rho2 = model.rho * model.rho;
  const double bar_radicand = eff.sigma0 * model.mu - rho2;
  const double radicand = eff.sigma_tilde * model.mu - rho2;
  if (!(bar_radicand > 0.0) || !(radicand > 0.0)) {
    std::ostringstream os;
    os << "sigma0*mu - rho^2 = " << bar_radicand << ", sigma_tilde*mu - rho^2 = " << radicand
       << "; both must be > 0";
    fail(ErrorCode::NonOscillatoryRegime, os.str());
  }
  eff.omega_bar = std::sqrt(bar_radicand);
  eff.omega = std::sqrt(radicand);
  return eff;
}

EffectiveParams derive_effective(const QuadraticModel& model, double norm_sq) {
  if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
    fail(ErrorCode::InvalidArgument, "norm_sq must be positive");
  }
  return effective_from_kappa_tilde(model, model.kappa * norm_sq);
}

}  // namespace gpesym
