#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace oldroyd::spectral {

/// Periodic n x n box of side L.
///
/// Layout. Physical samples are stored row-major as `f[iy * n + ix]` with
/// x1 = ix * L / n and x2 = iy * L / n. Spectral coefficients use the
/// real-to-complex half plane: `fhat[row * (n/2 + 1) + col]`, where `col` is
/// the (nonnegative) x1 index and `row` the wrapped x2 index.
///
/// Normalization. Coefficients are fhat = (L / n^2) * DFT(f), so that
///   f(x) = (1/L) sum_xi fhat(xi) e^{i xi.x},   ||f||_{L2}^2 = sum_xi |fhat(xi)|^2,
/// and the continuum transform of the box-restricted field is F(xi) = L fhat(xi)
/// (in particular F(0) is the box integral). Every spectral sum in the library
/// uses this convention; half-plane sums weight interior columns twice.
class Grid {
 public:
  Grid(int n, double box_length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_area() const { return spacing() * spacing(); }
  /// Smallest nonzero wavenumber 2 pi / L.
  double fundamental() const { return fundamental_; }

  int cols() const { return n_ / 2 + 1; }
  std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * cols(); }

  /// Signed mode index of a spectral row, in [-n/2, n/2).
  int row_index(int row) const { return row < n_ / 2 ? row : row - n_; }
  int col_index(int col) const { return col; }

  double kx(int col) const { return fundamental_ * col; }
  double ky(int row) const { return fundamental_ * row_index(row); }
  double k2(int row, int col) const {
    const double a = kx(col), b = ky(row);
    return a * a + b * b;
  }

  /// Wavenumber xi = 2 pi j / L for each signed index j in [-n/2, n/2), in index order.
  const std::vector<double>& wavenumbers() const { return wavenumbers_; }
  double wavenumber(int j) const { return fundamental_ * j; }

  /// True iff |j1| < n/3 and |j2| < n/3 (2/3 rule).
  bool retained(int row, int col) const {
    return mask_[static_cast<std::size_t>(row) * cols() + col] != 0;
  }
  const std::vector<unsigned char>& dealias_mask() const { return mask_; }
  /// Largest |j| kept by the mask along one axis.
  int max_retained_index() const { return max_retained_; }
  /// Number of full-plane modes kept by the mask.
  std::size_t retained_mode_count() const;

  /// Either index sits on the Nyquist line j = -n/2.
  bool nyquist(int row, int col) const { return col == n_ / 2 || row == n_ / 2; }

  /// Multiplicity of a half-plane coefficient in the full spectrum (1 or 2).
  double column_weight(int col) const { return (col == 0 || col == n_ / 2) ? 1.0 : 2.0; }

  std::size_t spectral_offset(int row, int col) const {
    return static_cast<std::size_t>(row) * cols() + col;
  }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  int n_;
  double length_;
  double fundamental_;
  int max_retained_;
  std::vector<double> wavenumbers_;
  std::vector<unsigned char> mask_;
};

/// Validating factory: n even and >= 8, L > 0.
Grid make_grid(int n, double box_length);

}  // namespace oldroyd::spectral
