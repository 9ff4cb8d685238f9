#include "verify/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::verify {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

spectral::Spectrum random_field(const spectral::Grid& g, Rng& rng, int max_index, double scale) {
  const int m = std::min(max_index, g.max_retained_index());
  auto f = spectral::zero_spectrum(g);
  for (int row = 0; row < g.n(); ++row) {
    const int j2 = g.row_index(row);
    if (std::abs(j2) > m) continue;
    for (int col = 0; col <= m; ++col) {
      // coefficient L a gives physical amplitude a
      f[g.spectral_offset(row, col)] = {scale * g.length() * uniform(rng, -1.0, 1.0),
                                        scale * g.length() * uniform(rng, -1.0, 1.0)};
    }
  }
  spectral::enforce_conjugate_symmetry(g, f);
  return f;
}

spectral::VectorField2 random_velocity(const spectral::Grid& g, Rng& rng, int max_index,
                                       double scale) {
  spectral::VectorField2 u{random_field(g, rng, max_index, scale),
                           random_field(g, rng, max_index, scale)};
  u[0][0] = u[1][0] = 0.0;
  spectral::leray_project_inplace(g, u);
  return u;
}

SymMatrix2 random_spd(Rng& rng, double lo, double hi) {
  const double a = uniform(rng, lo, hi), b = uniform(rng, lo, hi);
  const double th = uniform(rng, 0.0, std::numbers::pi);
  const double c = std::cos(th), s = std::sin(th);
  return {a * c * c + b * s * s, (a - b) * c * s, a * s * s + b * c * c};
}

solver::OldroydState random_state(const spectral::Grid& g, Rng& rng, double velocity_scale) {
  auto s = solver::zero_state(g);
  s.u = random_velocity(g, rng, 3, velocity_scale);
  s.rho = random_field(g, rng, 2, 0.01);
  s.rho[0] = g.length() * 0.5;  // mean 0.5
  for (auto& c : s.tau) c = random_field(g, rng, 3, 0.005);
  return s;
}

}  // namespace oldroyd::verify
