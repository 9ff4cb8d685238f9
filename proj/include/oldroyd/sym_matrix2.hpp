#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace oldroyd {

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMatrix2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static constexpr SymMatrix2 identity() { return {1.0, 0.0, 1.0}; }

  constexpr double trace() const { return xx + yy; }
  constexpr double det() const { return xx * yy - xy * xy; }

  /// Eigenvalues in ascending order.
  std::array<double, 2> eigenvalues() const {
    const double mean = 0.5 * (xx + yy);
    const double half_gap = std::hypot(0.5 * (xx - yy), xy);
    return {mean - half_gap, mean + half_gap};
  }

  /// Largest |eigenvalue|.
  double spectral_norm() const {
    const auto e = eigenvalues();
    return std::max(std::abs(e[0]), std::abs(e[1]));
  }

  double frobenius() const { return std::sqrt(xx * xx + 2.0 * xy * xy + yy * yy); }

  SymMatrix2 inverse() const {
    const double d = det();
    return {yy / d, -xy / d, xx / d};
  }

  friend constexpr SymMatrix2 operator*(double s, const SymMatrix2& m) {
    return {s * m.xx, s * m.xy, s * m.yy};
  }
  friend constexpr SymMatrix2 operator+(const SymMatrix2& a, const SymMatrix2& b) {
    return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
  }
};

}  // namespace oldroyd
