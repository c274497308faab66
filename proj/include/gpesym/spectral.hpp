#pragma once

#include <vector>

#include "gpesym/grid.hpp"

namespace gpesym::spectral {

/// Angular wavenumbers in FFT order: 0, 1, …, n/2−1, −n/2, …, −1 times 2π/(n·dx).
std::vector<double> wavenumbers(const Grid& grid);

/// Unnormalized forward DFT, in place.
void forward(std::vector<cplx>& data);
/// Inverse DFT including the 1/n factor, in place.
void backward(std::vector<cplx>& data);
/// Inverse DFT without the 1/n factor, in place.
void backward_unscaled(std::vector<cplx>& data);

/// Applies the Fourier multiplier m(k) to the samples. The Nyquist mode gets
/// the even part ½(m(k_N) + m(−k_N)) so real data stays real.
template <class Multiplier>
std::vector<cplx> apply_multiplier(const std::vector<cplx>& samples, const Grid& grid, Multiplier m) {
  std::vector<cplx> work = samples;
  forward(work);
  const std::vector<double> k = wavenumbers(grid);
  const std::size_t nyq = grid.n / 2;
  for (std::size_t j = 0; j < grid.n; ++j) {
    work[j] *= (j == nyq) ? 0.5 * (cplx(m(k[j])) + cplx(m(-k[j]))) : cplx(m(k[j]));
  }
  backward(work);
  return work;
}

/// d^order ψ / dx^order.
std::vector<cplx> derivative(const std::vector<cplx>& samples, const Grid& grid, int order = 1);
/// p̂ψ = −iħ ψ′.
std::vector<cplx> momentum(const std::vector<cplx>& samples, const Grid& grid, double hbar);
/// ψ(x − shift), exact for band-limited data.
std::vector<cplx> translate(const std::vector<cplx>& samples, const Grid& grid, double shift);

}  // namespace gpesym::spectral
