#include "oldroyd/closure/gaussian_closure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oldroyd::closure {

GaussianClosure GaussianClosure::from_fields(const spectral::Transform& transform,
                                             const spectral::SymTensorField2& tau,
                                             const spectral::ScalarField& rho) {
  GaussianClosure c;
  c.rho = transform.inverse(rho);
  for (std::size_t k = 0; k < 3; ++k) c.sigma[k] = transform.inverse(tau[k]);
  for (std::size_t i = 0; i < c.rho.size(); ++i) {
    c.sigma[0][i] += c.rho[i];
    c.sigma[2][i] += c.rho[i];
  }
  return c;
}

double gaussian_density(double rho, const SymMatrix2& sigma, std::array<double, 2> m) {
  if (!(rho > 0.0)) throw std::domain_error("gaussian_density: rho must be positive");
  const double det = sigma.det();
  if (!(det > 1e-300)) throw std::domain_error("gaussian_density: degenerate sigma");
  const SymMatrix2 inv = sigma.inverse();
  const double quad = inv.xx * m[0] * m[0] + 2.0 * inv.xy * m[0] * m[1] + inv.yy * m[1] * m[1];
  return rho * rho / (2.0 * std::numbers::pi * std::sqrt(det)) * std::exp(-0.5 * rho * quad);
}

double gaussian_density(const GaussianClosure& closure, std::size_t cell, std::array<double, 2> m) {
  return gaussian_density(closure.rho[cell], closure.sigma_at(cell), m);
}

double equilibrium_density(std::array<double, 2> m) {
  return std::exp(-0.5 * (m[0] * m[0] + m[1] * m[1])) / (2.0 * std::numbers::pi);
}

double wick_moment(const SymMatrix2& s, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("wick_moment: negative exponent");
  if (a + b > 8) throw std::invalid_argument("wick_moment: a + b > 8 is unsupported");
  if ((a + b) % 2 != 0) return 0.0;
  // Stein recursion: E[m1 g] = S11 E[d1 g] + S12 E[d2 g]
  double table[9][9] = {};
  table[0][0] = 1.0;
  for (int total = 2; total <= a + b; total += 2) {
    for (int i = 0; i <= total; ++i) {
      const int j = total - i;
      double v = 0.0;
      if (i >= 1) {
        if (i >= 2) v += (i - 1) * s.xx * table[i - 2][j];
        if (j >= 1) v += j * s.xy * table[i - 1][j - 1];
      } else {
        v = (j - 1) * s.yy * table[0][j - 2];
      }
      table[i][j] = v;
    }
  }
  return table[a][b];
}

Samples moment(const GaussianClosure& c, int a, int b) {
  if (a < 0 || b < 0 || a + b > 8) {
    throw std::invalid_argument("moment: need nonnegative exponents with a + b <= 8");
  }
  const std::size_t n = c.size();
  if ((a + b) % 2 != 0) return Samples(n, 0.0);
  if (a + b == 0) return c.rho;
  if (a + b == 2) {
    if (a == 2) return c.sigma[0];
    if (a == 1) return c.sigma[1];
    return c.sigma[2];
  }
  const double rho_max = *std::max_element(c.rho.begin(), c.rho.end());
  Samples out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.rho[i] <= kVacuumFraction * rho_max) continue;
    out[i] = c.rho[i] * wick_moment(c.conformation_at(i), a, b);
  }
  return out;
}

}  // namespace oldroyd::closure
