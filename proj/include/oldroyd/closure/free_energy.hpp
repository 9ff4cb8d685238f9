#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oldroyd/closure/gaussian_closure.hpp"
#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::closure {

/// Relative entropy of N(0, Sigma) against N(0, I): (tr Sigma - 2 - log det Sigma) / 2.
/// Nonnegative, zero iff Sigma = I. Throws std::domain_error unless Sigma is
/// positive definite.
double conformation_entropy(const SymMatrix2& conformation);

struct FreeEnergy {
  double kinetic = 0.0;   ///< ||u||_{L2}^2
  double entropy = 0.0;   ///< integral rho (tr Sigma - 2 - log det Sigma) / 2 dx
  double total = 0.0;     ///< kinetic + mu * entropy
  std::size_t vacuum_cells = 0;
};

/// ||u||^2 + mu * integral f log(f / (M00 f_E)) dm dx in closed form for the
/// Gaussian closure. Throws std::domain_error if Sigma is not positive definite
/// on a non-vacuum cell.
FreeEnergy free_energy(const spectral::Grid& grid, const spectral::VectorField2& u,
                       const GaussianClosure& closure, double mu);

struct LedgerSample {
  double t = 0.0;
  double free_energy = 0.0;
  double dissipation = 0.0;  ///< nu1 integral_0^t ||grad u||^2 ds
  bool defined = true;       ///< false once conformation positivity is lost
};

struct LedgerEntry {
  double t = 0.0;
  double value = 0.0;     ///< F(t) + nu1 integral ||grad u||^2
  double increase = 0.0;  ///< value - previous value
  bool flagged = false;   ///< increase above tolerance
};

struct LedgerReport {
  std::vector<LedgerEntry> entries;
  double initial = 0.0;
  double tolerance = 0.0;  ///< absolute, relative_tolerance * F(0)
  bool non_increasing = true;
  std::optional<double> undefined_from;  ///< ledger undefined from this time on
};

/// Running left-hand side of the free-energy inequality with a flag on every
/// record that rises above the previous one by more than relative_tolerance * F(0).
LedgerReport free_energy_dissipation_check(std::span<const LedgerSample> trajectory,
                                           double relative_tolerance = 1e-6);

}  // namespace oldroyd::closure
