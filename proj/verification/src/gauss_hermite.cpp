#include "verify/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oldroyd::verify {

HermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  // Roots of H_n with weight exp(-x^2); Newton from the usual asymptotic guesses.
  std::vector<double> x(n), w(n);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  double z = 0.0;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  // standard normal: node sqrt(2) x, weight w / sqrt(pi)
  HermiteRule r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(std::sqrt(2.0) * x[i]);
    r.weights.push_back(w[i] / std::sqrt(std::numbers::pi));
  }
  return r;
}

double gaussian_expectation(const SymMatrix2& cov, const std::function<double(double, double)>& g,
                            int nodes) {
  if (!(cov.xx > 0.0) || !(cov.det() > 0.0)) {
    throw std::invalid_argument("gaussian_expectation: covariance not positive definite");
  }
  // cov = C C^T, C lower triangular
  const double c11 = std::sqrt(cov.xx);
  const double c21 = cov.xy / c11;
  const double c22 = std::sqrt(cov.yy - c21 * c21);
  const auto rule = gauss_hermite(nodes);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      const double z1 = rule.nodes[i], z2 = rule.nodes[j];
      sum += rule.weights[i] * rule.weights[j] * g(c11 * z1, c21 * z1 + c22 * z2);
    }
  }
  return sum;
}

double moment_quadrature(const SymMatrix2& cov, int a, int b, int nodes) {
  return gaussian_expectation(
      cov, [a, b](double m1, double m2) { return std::pow(m1, a) * std::pow(m2, b); }, nodes);
}

double relative_entropy_quadrature(double rho, const SymMatrix2& sigma, int nodes) {
  const SymMatrix2 cov = (1.0 / rho) * sigma;
  const double det = cov.det();
  const double i11 = cov.yy / det, i12 = -cov.xy / det, i22 = cov.xx / det;
  auto log_ratio = [&](double m1, double m2) {
    // log f - log(rho f_E) with f = rho N(0, cov)
    const double quad = i11 * m1 * m1 + 2.0 * i12 * m1 * m2 + i22 * m2 * m2;
    const double log_n = -0.5 * quad - std::log(2.0 * std::numbers::pi) - 0.5 * std::log(det);
    const double log_e = -0.5 * (m1 * m1 + m2 * m2) - std::log(2.0 * std::numbers::pi);
    return log_n - log_e;
  };
  return rho * gaussian_expectation(cov, log_ratio, nodes);
}

}  // namespace oldroyd::verify
