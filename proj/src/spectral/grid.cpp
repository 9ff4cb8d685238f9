#include "oldroyd/spectral/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oldroyd::spectral {

Grid::Grid(int n, double box_length) : n_(n), length_(box_length) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid: mode count must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("grid: box length must be positive and finite");
  }
  fundamental_ = 2.0 * std::numbers::pi / length_;
  // strict |j| < n/3
  max_retained_ = (n_ - 1) / 3;

  wavenumbers_.resize(n_);
  for (int j = -n_ / 2; j < n_ / 2; ++j) {
    wavenumbers_[j + n_ / 2] = fundamental_ * j;
  }

  mask_.assign(spectral_size(), 0);
  for (int row = 0; row < n_; ++row) {
    const int j2 = std::abs(row_index(row));
    for (int col = 0; col < cols(); ++col) {
      const bool keep = 3 * j2 < n_ && 3 * col < n_;
      mask_[spectral_offset(row, col)] = keep ? 1 : 0;
    }
  }
}

std::size_t Grid::retained_mode_count() const {
  const auto per_axis = static_cast<std::size_t>(2 * max_retained_ + 1);
  return per_axis * per_axis;
}

Grid make_grid(int n, double box_length) { return Grid(n, box_length); }

}  // namespace oldroyd::spectral
