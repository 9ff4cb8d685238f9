#pragma once

#include <random>

#include "oldroyd/solver/model.hpp"
#include "oldroyd/sym_matrix2.hpp"

namespace oldroyd::verify {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// Real field with random coefficients on modes |j1|, |j2| <= max_index
/// (clipped to the dealiased set), amplitude scaled by `scale`.
spectral::Spectrum random_field(const spectral::Grid& grid, Rng& rng, int max_index,
                                double scale = 1.0);

/// Leray-projected random velocity.
spectral::VectorField2 random_velocity(const spectral::Grid& grid, Rng& rng, int max_index,
                                       double scale = 1.0);

/// Symmetric positive definite matrix with eigenvalues in [lo, hi].
SymMatrix2 random_spd(Rng& rng, double lo, double hi);

/// Smooth nonlinear state: random velocity, positive density, small stress.
solver::OldroydState random_state(const spectral::Grid& grid, Rng& rng, double velocity_scale);

}  // namespace oldroyd::verify
