#pragma once

#include <memory>
#include <span>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::spectral {

/// FFTW-backed real <-> half-plane transforms for one grid, using the
/// normalization documented on Grid. Plans are created once; execution is
/// reentrant, so a single Transform may be shared between threads.
class Transform {
 public:
  explicit Transform(const Grid& grid);
  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;
  Transform(Transform&&) noexcept;
  Transform& operator=(Transform&&) noexcept;

  const Grid& grid() const { return grid_; }

  /// Physical -> spectral. Throws std::domain_error on non-finite samples.
  Spectrum forward(std::span<const double> samples) const;
  void forward(std::span<const double> samples, std::span<Complex> out) const;

  /// Spectral -> physical. Conjugate symmetry is implied by the half-plane
  /// storage, so the result is real by construction.
  Samples inverse(std::span<const Complex> coefficients) const;
  void inverse(std::span<const Complex> coefficients, std::span<double> out) const;

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace oldroyd::spectral
