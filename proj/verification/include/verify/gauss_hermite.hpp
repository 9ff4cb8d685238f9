#pragma once

#include <functional>
#include <vector>

#include "oldroyd/sym_matrix2.hpp"

namespace oldroyd::verify {

/// Nodes and weights for E[g(Z)], Z ~ N(0, 1).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule (physicists' Hermite by Newton iteration, then rescaled).
HermiteRule gauss_hermite(int n);

/// E[g(m)] for m ~ N(0, cov), tensor-product rule after Cholesky whitening.
double gaussian_expectation(const SymMatrix2& cov, const std::function<double(double, double)>& g,
                            int nodes = 64);

/// E[m1^a m2^b] by quadrature.
double moment_quadrature(const SymMatrix2& cov, int a, int b, int nodes = 64);

/// integral f log(f / (rho f_E)) dm for f = rho N(0, sigma / rho), with f
/// evaluated from the density formula at every node.
double relative_entropy_quadrature(double rho, const SymMatrix2& sigma, int nodes = 64);

}  // namespace oldroyd::verify
