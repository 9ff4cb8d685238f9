#pragma once

#include <array>
#include <cstdint>

#include "oldroyd/solver/model.hpp"
#include "oldroyd/spectral/transform.hpp"
#include "oldroyd/sym_matrix2.hpp"

namespace oldroyd::solver {

/// Localized data on the periodic box:
///   psi   = A g(x; ell_u),          u0 = perp-grad psi,
///   rho0  = g(x; ell_rho) / int g,  sigma0 = rho0 (I + eps B),  tau0 = eps rho0 B,
/// with g the periodized Gaussian exp(-|x - c|^2 / (2 ell^2)).
struct InitialDataSpec {
  double amplitude = 0.0;
  double velocity_width = 16.0;
  double density_width = 4.0;
  double epsilon = 0.25;
  SymMatrix2 direction{0.8, 0.6, -0.8};
  std::array<double, 2> center{100.0, 100.0};
};

/// Minimum samples per Gaussian width accepted by build_initial_state.
inline constexpr double kMinPointsPerWidth = 8.0;

/// Throws std::invalid_argument for under-resolved widths or ||eps B|| > 1/2.
void validate(const InitialDataSpec& spec, const Grid& grid);

/// Periodized Gaussian exp(-|x - c|^2 / (2 ell^2)) sampled on the grid.
spectral::Samples periodized_gaussian(const Grid& grid, std::array<double, 2> center,
                                      double width);

OldroydState build_initial_state(const InitialDataSpec& spec, const spectral::Transform& transform,
                                 const OldroydParams& params);

/// Amplitude giving ||u0||^2 + mu * entropy = target, using the continuum
/// values ||perp-grad(A g)||^2 = pi A^2 and entropy = (tr(eps B) - log det(I + eps B)) / 2.
double amplitude_for_free_energy(const InitialDataSpec& spec, const OldroydParams& params,
                                 double target);

/// Symmetric matrix with spectral norm 1 drawn deterministically from a seed.
SymMatrix2 random_direction(std::uint64_t seed);

}  // namespace oldroyd::solver
