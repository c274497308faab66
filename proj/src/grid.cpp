#include "gpesym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gpesym/errors.hpp"

namespace gpesym {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double Grid::k_max() const { return std::numbers::pi / dx; }

void Grid::validate() const {
  if (!is_power_of_two(n)) fail(ErrorCode::InvalidArgument, "grid size must be a power of two >= 2");
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min)) {
    fail(ErrorCode::InvalidArgument, "grid step must be positive and finite");
  }
}

Grid Grid::symmetric(double half_width, std::size_t points) {
  if (!(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "grid half width must be positive");
  Grid g{-half_width, 2.0 * half_width / static_cast<double>(points), points};
  g.validate();
  return g;
}

WaveFunction::WaveFunction(const Grid& g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.n) fail(ErrorCode::InvalidArgument, "sample count does not match grid");
}

Grid design_grid(const OrbitExtent& e, double hbar) {
  if (!(e.width > 0.0) || !(hbar > 0.0)) fail(ErrorCode::InvalidArgument, "grid design needs width > 0");
  const double half = e.x_abs_max + kGridMargin * std::sqrt(std::max(e.d22_max, 0.0));
  const double k_needed = (e.p_abs_max + kGridMargin * std::sqrt(std::max(e.d11_max, 0.0))) / hbar;
  std::size_t n = 16;
  for (;;) {
    const double dx = 2.0 * half / static_cast<double>(n);
    const bool resolves_width = e.width / dx >= static_cast<double>(kPointsPerWidth);
    const bool resolves_momentum = std::numbers::pi / dx >= k_needed;
    if (resolves_width && resolves_momentum) break;
    if (n >= (std::size_t{1} << 24)) fail(ErrorCode::InvalidArgument, "grid design exceeds 2^24 points");
    n *= 2;
  }
  return Grid::symmetric(half, n);
}

double norm_sq(const WaveFunction& psi) {
  double s = 0.0;
  for (const auto& v : psi.samples) s += std::norm(v);
  return s * psi.grid.dx;
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  cplx s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a.samples[j]) * b.samples[j];
  return s * a.grid.dx;
}

double max_abs(const WaveFunction& psi) {
  double m = 0.0;
  for (const auto& v : psi.samples) m = std::max(m, std::abs(v));
  return m;
}

double edge_ratio(const WaveFunction& psi) {
  const double peak = max_abs(psi);
  if (peak == 0.0) return 0.0;
  const std::size_t n = psi.size();
  const double edge = std::max({std::abs(psi.samples[0]), std::abs(psi.samples[1]),
                                std::abs(psi.samples[n - 2]), std::abs(psi.samples[n - 1])});
  return edge / peak;
}

void check_edges(const WaveFunction& psi, double threshold, const char* context) {
  const double r = edge_ratio(psi);
  if (!(r <= threshold)) {
    std::ostringstream os;
    os << context << ": edge amplitude " << r << " exceeds " << threshold << " of peak";
    fail(ErrorCode::EdgeLeak, os.str());
  }
}

void check_finite(const WaveFunction& psi, const char* context) {
  for (const auto& v : psi.samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      fail(ErrorCode::Unstable, std::string(context) + ": non-finite sample");
    }
  }
}

void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (a.grid.n != b.grid.n || a.grid.dx != b.grid.dx || a.grid.x_min != b.grid.x_min) {
    fail(ErrorCode::InvalidArgument, "wavefunctions live on different grids");
  }
}

double distance(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a.samples[j] - b.samples[j]);
  return std::sqrt(s * a.grid.dx);
}

}  // namespace gpesym
