#include "oldroyd/closure/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oldroyd/spectral/norms.hpp"

namespace oldroyd::closure {

double conformation_entropy(const SymMatrix2& s) {
  const double det = s.det();
  if (!(s.xx > 0.0 && det > 0.0)) {
    throw std::domain_error("conformation is not positive definite");
  }
  const double excess = s.trace() - 2.0;
  return 0.5 * (excess - std::log(det));
}

FreeEnergy free_energy(const spectral::Grid& grid, const spectral::VectorField2& u,
                       const GaussianClosure& closure, double mu) {
  FreeEnergy out;
  out.kinetic = spectral::l2_squared(grid, u[0]) + spectral::l2_squared(grid, u[1]);

  const double rho_max = closure.rho.empty()
                             ? 0.0
                             : *std::max_element(closure.rho.begin(), closure.rho.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const double rho = closure.rho[i];
    if (!(rho > kVacuumFraction * rho_max) || rho_max <= 0.0) {
      ++out.vacuum_cells;
      continue;
    }
    const SymMatrix2 conformation = closure.conformation_at(i);
    try {
      sum += rho * conformation_entropy(conformation);
    } catch (const std::domain_error&) {
      throw std::domain_error("free energy undefined: conformation not positive definite at cell " +
                              std::to_string(i));
    }
  }
  out.entropy = sum * grid.cell_area();
  out.total = out.kinetic + mu * out.entropy;
  return out;
}

LedgerReport free_energy_dissipation_check(std::span<const LedgerSample> trajectory,
                                           double relative_tolerance) {
  LedgerReport report;
  if (trajectory.empty()) return report;
  report.initial = trajectory.front().free_energy + trajectory.front().dissipation;
  report.tolerance = relative_tolerance * std::abs(trajectory.front().free_energy);

  double previous = report.initial;
  for (const auto& s : trajectory) {
    if (!s.defined) {
      report.undefined_from = s.t;
      break;
    }
    LedgerEntry e;
    e.t = s.t;
    e.value = s.free_energy + s.dissipation;
    e.increase = e.value - previous;
    e.flagged = e.increase > report.tolerance;
    if (e.flagged) report.non_increasing = false;
    previous = e.value;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace oldroyd::closure
