#pragma once

#include <algorithm>
#include <cmath>

#include "gpesym/evolve.hpp"

namespace testing {

inline gpesym::QuadraticModel reference_model() { return {1.0, 0.3, 1.2, 0.4, 0.3, 0.5, 0.6, 1.0}; }

inline gpesym::QuadraticModel harmonic_model() { return {1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0}; }

/// max_j |a_j − b_j| / max_j |b_j|.
inline double sup_rel(const gpesym::WaveFunction& a, const gpesym::WaveFunction& b) {
  double diff = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) diff = std::max(diff, std::abs(a.samples[j] - b.samples[j]));
  return diff / gpesym::max_abs(b);
}

}  // namespace testing
