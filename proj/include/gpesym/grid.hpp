#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gpesym {

using cplx = std::complex<double>;

/// Uniform periodic grid x_j = x_min + j·dx, j = 0..n-1, n a power of two.
struct Grid {
  double x_min = 0.0;
  double dx = 0.0;
  std::size_t n = 0;

  double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx; }
  double length() const { return dx * static_cast<double>(n); }
  /// Nyquist wavenumber π/dx.
  double k_max() const;
  void validate() const;

  /// Symmetric grid [−half_width, half_width) with `points` samples.
  static Grid symmetric(double half_width, std::size_t points);
};

struct WaveFunction {
  Grid grid;
  std::vector<cplx> samples;

  WaveFunction() = default;
  WaveFunction(const Grid& g, std::vector<cplx> s);
  explicit WaveFunction(const Grid& g) : grid(g), samples(g.n, cplx{}) {}

  std::size_t size() const { return samples.size(); }
  double grid_min() const { return grid.x_min; }
  double grid_step() const { return grid.dx; }
};

/// Bounds of a phase orbit used to size a grid.
struct OrbitExtent {
  double x_abs_max = 0.0;    // max |X(t)|
  double p_abs_max = 0.0;    // max |P(t)|
  double d22_max = 0.0;      // max Δ₂₂(t)
  double d11_max = 0.0;      // max Δ₁₁(t)
  double width = 0.0;        // oscillator width √(ħμ/Ω)
};

/// Tail margin in standard deviations on each side of the orbit.
inline constexpr double kGridMargin = 12.0;
inline constexpr std::size_t kPointsPerWidth = 16;
inline constexpr double kEdgeThreshold = 1e-12;

/// Smallest power-of-two grid covering |X|max + margin·√Δ₂₂max in space,
/// |P|max + margin·√Δ₁₁max in momentum, with at least 16 points per width.
Grid design_grid(const OrbitExtent& extent, double hbar);

bool is_power_of_two(std::size_t n);

/// ‖ψ‖² by the periodic trapezoidal rule.
double norm_sq(const WaveFunction& psi);
cplx inner(const WaveFunction& a, const WaveFunction& b);
double max_abs(const WaveFunction& psi);
/// Largest |ψ| over the first and last samples, relative to max |ψ|.
double edge_ratio(const WaveFunction& psi);
/// Throws EdgeLeak if edge_ratio exceeds `threshold`.
void check_edges(const WaveFunction& psi, double threshold = kEdgeThreshold,
                 const char* context = "wavefunction");
void check_finite(const WaveFunction& psi, const char* context = "wavefunction");
void require_same_grid(const WaveFunction& a, const WaveFunction& b);

/// ‖a − b‖ on the shared grid.
double distance(const WaveFunction& a, const WaveFunction& b);

}  // namespace gpesym
