#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::spectral {

using Complex = std::complex<double>;

/// Half-plane spectral coefficients of one real scalar component.
using Spectrum = std::vector<Complex>;
/// Real samples of one component on the n x n grid.
using Samples = std::vector<double>;

using ScalarField = Spectrum;
using VectorField2 = std::array<Spectrum, 2>;
/// Symmetric 2x2 tensor, components (xx, xy, yy); xy is stored once.
using SymTensorField2 = std::array<Spectrum, 3>;

enum TensorComponent : std::size_t { kXX = 0, kXY = 1, kYY = 2 };

/// Frobenius multiplicity of each stored tensor component.
inline constexpr std::array<double, 3> kTensorWeights{1.0, 2.0, 1.0};

inline Spectrum zero_spectrum(const Grid& grid) { return Spectrum(grid.spectral_size()); }
inline Samples zero_samples(const Grid& grid) { return Samples(grid.physical_size()); }

inline VectorField2 zero_vector(const Grid& grid) {
  return {zero_spectrum(grid), zero_spectrum(grid)};
}
inline SymTensorField2 zero_tensor(const Grid& grid) {
  return {zero_spectrum(grid), zero_spectrum(grid), zero_spectrum(grid)};
}

/// a += s * b
inline void axpy(Spectrum& a, double s, const Spectrum& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

}  // namespace oldroyd::spectral
