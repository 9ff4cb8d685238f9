#include "oldroyd/spectral/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace oldroyd::spectral {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Transform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

Transform::Transform(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int n = grid_.n();
  std::vector<double> real(grid_.physical_size());
  std::vector<Complex> cplx(grid_.spectral_size());
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_2d(n, n, real.data(), c, flags);
  plans_->c2r = fftw_plan_dft_c2r_2d(n, n, c, real.data(), flags);
  if (!plans_->r2c || !plans_->c2r) throw std::runtime_error("fftw planning failed");
}

Transform::~Transform() = default;
Transform::Transform(Transform&&) noexcept = default;
Transform& Transform::operator=(Transform&&) noexcept = default;

void Transform::forward(std::span<const double> samples, std::span<Complex> out) const {
  if (samples.size() != grid_.physical_size() || out.size() != grid_.spectral_size()) {
    throw std::invalid_argument("transform: size mismatch");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw std::domain_error("transform: non-finite sample");
  }
  // out-of-place r2c preserves its input
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(samples.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = grid_.length() / (static_cast<double>(grid_.n()) * grid_.n());
  for (auto& z : out) z *= scale;
}

Spectrum Transform::forward(std::span<const double> samples) const {
  Spectrum out(grid_.spectral_size());
  forward(samples, out);
  return out;
}

void Transform::inverse(std::span<const Complex> coefficients, std::span<double> out) const {
  if (coefficients.size() != grid_.spectral_size() || out.size() != grid_.physical_size()) {
    throw std::invalid_argument("transform: size mismatch");
  }
  // c2r overwrites its input
  Spectrum scratch(coefficients.begin(), coefficients.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double scale = 1.0 / grid_.length();
  for (auto& v : out) v *= scale;
}

Samples Transform::inverse(std::span<const Complex> coefficients) const {
  Samples out(grid_.physical_size());
  inverse(coefficients, out);
  return out;
}

}  // namespace oldroyd::spectral
