#pragma once

#include "oldroyd/solver/integrator.hpp"

namespace oldroyd::verify {

struct ExplicitTerms {
  spectral::VectorField2 u;
  spectral::SymTensorField2 tau;
  spectral::ScalarField rho;
};

/// Explicit tendencies by brute-force truncated convolution over the
/// retained modes, in advective form (-u.grad f) with full wavenumbers.
/// O(M^2) in the retained mode count M; meant for n <= 32.
ExplicitTerms galerkin_explicit(const spectral::Grid& grid, const solver::OldroydState& state,
                                const solver::OldroydParams& params);

}  // namespace oldroyd::verify
