#include "oldroyd/solver/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::solver {

using spectral::Samples;
using spectral::Spectrum;

void validate(const InitialDataSpec& spec, const Grid& grid) {
  const double dx = grid.spacing();
  auto check_width = [&](double width, const char* name) {
    if (!(width > 0.0) || width / dx < kMinPointsPerWidth) {
      throw std::invalid_argument(std::string(name) + " = " + std::to_string(width) +
                                  " is under-resolved: need at least " +
                                  std::to_string(kMinPointsPerWidth) +
                                  " grid points per width (dx = " + std::to_string(dx) + ")");
    }
  };
  check_width(spec.velocity_width, "velocity width");
  check_width(spec.density_width, "density width");
  if (!std::isfinite(spec.amplitude)) throw std::invalid_argument("amplitude must be finite");
  const double stress_norm = std::abs(spec.epsilon) * spec.direction.spectral_norm();
  if (!(stress_norm <= 0.5)) {
    throw std::invalid_argument("||eps B|| = " + std::to_string(stress_norm) +
                                " exceeds 1/2; sigma0 = rho0 (I + eps B) would not be safely "
                                "positive definite");
  }
}

Samples periodized_gaussian(const Grid& grid, std::array<double, 2> center, double width) {
  const int n = grid.n();
  const double L = grid.length();
  const double dx = grid.spacing();
  const int images = static_cast<int>(std::ceil(8.0 * width / L)) + 1;
  const double inv2w2 = 1.0 / (2.0 * width * width);

  // separable: g(x) = gx(x1) gy(x2)
  auto profile = [&](double c) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) {
      double d = std::remainder(i * dx - c, L);
      double sum = 0.0;
      for (int m = -images; m <= images; ++m) {
        const double s = d + m * L;
        sum += std::exp(-s * s * inv2w2);
      }
      p[i] = sum;
    }
    return p;
  };
  const auto gx = profile(center[0]);
  const auto gy = profile(center[1]);
  Samples g(grid.physical_size());
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) g[static_cast<std::size_t>(iy) * n + ix] = gx[ix] * gy[iy];
  }
  return g;
}

OldroydState build_initial_state(const InitialDataSpec& spec,
                                 const spectral::Transform& transform,
                                 const OldroydParams& params) {
  const Grid& grid = transform.grid();
  validate(params);
  validate(spec, grid);

  OldroydState state = zero_state(grid);

  if (spec.amplitude != 0.0) {
    auto psi = periodized_gaussian(grid, spec.center, spec.velocity_width);
    for (auto& v : psi) v *= spec.amplitude;
    auto psi_hat = transform.forward(psi);
    spectral::dealias_inplace(grid, psi_hat);
    state.u = spectral::perp_gradient(grid, psi_hat);
  }

  auto rho = periodized_gaussian(grid, spec.center, spec.density_width);
  double mass = 0.0;
  for (double v : rho) mass += v;
  mass *= grid.cell_area();
  for (auto& v : rho) v /= mass;
  state.rho = transform.forward(rho);
  spectral::dealias_inplace(grid, state.rho);

  const SymMatrix2 b = spec.epsilon * spec.direction;
  const std::array<double, 3> coeff{b.xx, b.xy, b.yy};
  for (std::size_t c = 0; c < 3; ++c) {
    state.tau[c] = state.rho;
    for (auto& z : state.tau[c]) z *= coeff[c];
  }
  state.t = 0.0;
  return state;
}

double amplitude_for_free_energy(const InitialDataSpec& spec, const OldroydParams& params,
                                 double target) {
  const SymMatrix2 b = spec.epsilon * spec.direction;
  const SymMatrix2 conformation = SymMatrix2::identity() + b;
  const double entropy = 0.5 * (b.trace() - std::log(conformation.det()));
  const double kinetic = target - params.mu * entropy;
  if (kinetic < 0.0) {
    throw std::invalid_argument("target free energy is below the stress entropy alone");
  }
  return std::sqrt(kinetic / std::numbers::pi);
}

SymMatrix2 random_direction(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  // explicit mapping keeps the draw identical across standard libraries
  auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  SymMatrix2 m{uniform(), uniform(), uniform()};
  double norm = m.spectral_norm();
  if (norm == 0.0) return {1.0, 0.0, 0.0};
  return (1.0 / norm) * m;
}

}  // namespace oldroyd::solver
