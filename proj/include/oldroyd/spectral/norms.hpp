#pragma once

#include <optional>
#include <span>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/grid.hpp"
#include "oldroyd/spectral/transform.hpp"

namespace oldroyd::spectral {

/// sum over all modes of |fhat|^2, i.e. ||f||_{L2}^2 by Plancherel.
double l2_squared(const Grid& grid, const Spectrum& f);
/// ||grad f||_{L2}^2 = sum |xi|^2 |fhat|^2 (derivative wavenumbers).
double gradient_l2_squared(const Grid& grid, const Spectrum& f);
/// sum (1 + |xi|^2)^order |fhat|^2; order 1 -> H1^2, order 2 -> H2^2.
double sobolev_squared(const Grid& grid, const Spectrum& f, int order);

/// Rectangle-rule quadrature over the box.
double l1_norm(const Grid& grid, std::span<const double> samples);
double linf_norm(std::span<const double> samples);
/// Physical-space L2 by quadrature (used for the Plancherel cross-check).
double l2_squared_physical(const Grid& grid, std::span<const double> samples);

/// Energy of the modes with |xi| <= r, in the Plancherel normalization.
double ball_energy(const Grid& grid, const Spectrum& f, double r);
/// Weighted sum over components (e.g. kTensorWeights for a symmetric tensor).
double ball_energy(const Grid& grid, std::span<const Spectrum> components,
                   std::span<const double> weights, double r);
/// Number of full-plane modes with |xi| <= r.
std::size_t ball_mode_count(const Grid& grid, double r);

struct NormRequest {
  bool l1 = false;
  bool l2 = false;
  bool linf = false;
  bool h1 = false;
  bool h2 = false;

  static NormRequest all() { return {true, true, true, true, true}; }
};

struct NormValues {
  std::optional<double> l1, l2, linf, h1, h2;
};

/// Norms of a multi-component field. Pointwise magnitudes are
/// sqrt(sum_c w_c f_c^2), spectral ones sum_c w_c (...). Empty weights means 1.
NormValues norms(const Transform& transform, std::span<const Spectrum> components,
                 std::span<const double> weights, NormRequest which);

inline NormValues norms(const Transform& transform, const Spectrum& f, NormRequest which) {
  return norms(transform, std::span<const Spectrum>(&f, 1), {}, which);
}

}  // namespace oldroyd::spectral
