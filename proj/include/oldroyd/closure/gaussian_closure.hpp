#pragma once

#include <array>
#include <cstddef>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/transform.hpp"
#include "oldroyd/sym_matrix2.hpp"

namespace oldroyd::closure {

using spectral::Samples;

/// Gaussian-in-m kinetic density represented by its macroscopic moments
///   f(x, m) = rho^2 / (2 pi sqrt(det sigma)) exp(-1/2 m^T rho sigma^{-1} m),
/// i.e. f = rho N(0, Sigma) with conformation Sigma = sigma / rho.
struct GaussianClosure {
  Samples rho;
  std::array<Samples, 3> sigma;  ///< xx, xy, yy

  std::size_t size() const { return rho.size(); }
  SymMatrix2 sigma_at(std::size_t cell) const {
    return {sigma[0][cell], sigma[1][cell], sigma[2][cell]};
  }
  SymMatrix2 conformation_at(std::size_t cell) const {
    return (1.0 / rho[cell]) * sigma_at(cell);
  }

  /// sigma = tau + rho I sampled from spectral fields.
  static GaussianClosure from_fields(const spectral::Transform& transform,
                                     const spectral::SymTensorField2& tau,
                                     const spectral::ScalarField& rho);
};

/// Cells with rho <= kVacuumFraction * max rho carry no kinetic mass in the
/// discrete closure: Sigma = sigma / rho there is round-off over round-off.
/// Their contribution to any rho-weighted integral is below that fraction of
/// the total and they are skipped.
inline constexpr double kVacuumFraction = 1e-10;

/// Point value of the Gaussian density. Throws std::domain_error when rho <= 0
/// or det sigma <= 1e-300.
double gaussian_density(double rho, const SymMatrix2& sigma, std::array<double, 2> m);
double gaussian_density(const GaussianClosure& closure, std::size_t cell, std::array<double, 2> m);

/// Standard Gaussian equilibrium exp(-|m|^2/2) / (2 pi).
double equilibrium_density(std::array<double, 2> m);

/// E[m1^a m2^b] for m ~ N(0, Sigma) by Isserlis' theorem. a + b <= 8.
double wick_moment(const SymMatrix2& conformation, int a, int b);

/// M_{a,b}(x) = integral m1^a m2^b f(x, m) dm = rho E[m1^a m2^b].
/// Orders 0 and 2 return rho and sigma themselves; higher orders are set to 0
/// on vacuum cells (they scale like sigma^p / rho^(p-1) ~ rho).
Samples moment(const GaussianClosure& closure, int a, int b);

}  // namespace oldroyd::closure
