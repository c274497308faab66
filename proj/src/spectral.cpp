#include "gpesym/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "gpesym/errors.hpp"

namespace gpesym::spectral {
namespace {

static_assert(sizeof(cplx) == sizeof(fftw_complex));

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are cached per (size, direction) for the process lifetime.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) fail(ErrorCode::InvalidArgument, "FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::vector<cplx>& data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(data.size(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

std::vector<double> wavenumbers(const Grid& grid) {
  const std::size_t n = grid.n;
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.dx);
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = signed_j * dk;
  }
  return k;
}

void forward(std::vector<cplx>& data) { execute(data, FFTW_FORWARD); }

void backward_unscaled(std::vector<cplx>& data) { execute(data, FFTW_BACKWARD); }

void backward(std::vector<cplx>& data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<cplx> derivative(const std::vector<cplx>& samples, const Grid& grid, int order) {
  if (order < 0) fail(ErrorCode::InvalidArgument, "derivative order must be non-negative");
  return apply_multiplier(samples, grid, [order](double k) {
    cplx f{1.0, 0.0};
    for (int i = 0; i < order; ++i) f *= cplx(0.0, k);
    return f;
  });
}

std::vector<cplx> momentum(const std::vector<cplx>& samples, const Grid& grid, double hbar) {
  return apply_multiplier(samples, grid, [hbar](double k) { return cplx(hbar * k, 0.0); });
}

std::vector<cplx> translate(const std::vector<cplx>& samples, const Grid& grid, double shift) {
  return apply_multiplier(samples, grid, [shift](double k) { return std::polar(1.0, -k * shift); });
}

}  // namespace gpesym::spectral
