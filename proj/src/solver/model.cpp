#include "oldroyd/solver/model.hpp"

#include <algorithm>
#include <cmath>

namespace oldroyd::solver {

void validate(const OldroydParams& p) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (p.nu2 == 0.0) {
    throw std::invalid_argument("nu2 = 0: non-diffusive case out of scope");
  }
  if (!positive(p.nu1)) throw std::invalid_argument("nu1 must be > 0");
  if (!positive(p.nu2)) throw std::invalid_argument("nu2 must be > 0");
  if (!positive(p.mu)) throw std::invalid_argument("mu must be > 0");
  if (!positive(p.k)) throw std::invalid_argument("k must be > 0");
}

OldroydState zero_state(const Grid& grid) {
  return {spectral::zero_vector(grid), spectral::zero_tensor(grid),
          spectral::zero_spectrum(grid), 0.0};
}

std::string to_string(CompanionForcing forcing) {
  return forcing == CompanionForcing::kProjected ? "projected" : "literal";
}

CompanionForcing companion_forcing_from_string(const std::string& name) {
  if (name == "projected") return CompanionForcing::kProjected;
  if (name == "literal") return CompanionForcing::kLiteral;
  throw std::invalid_argument("companion forcing must be 'projected' or 'literal', got '" +
                              name + "'");
}

double trusted_horizon(double box_length, const OldroydParams& params) {
  const double reach = box_length / 8.0;
  return reach * reach / std::max(params.nu1, params.nu2);
}

}  // namespace oldroyd::solver
