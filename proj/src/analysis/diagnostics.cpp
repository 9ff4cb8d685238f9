#include "oldroyd/analysis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oldroyd/closure/free_energy.hpp"
#include "oldroyd/closure/gaussian_closure.hpp"
#include "oldroyd/spectral/norms.hpp"
#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::analysis {

using spectral::Grid;
using spectral::kTensorWeights;

double ball_radius_S(double t, const solver::OldroydParams& params) {
  return std::sqrt(2.0 / (params.nu1 * (t + 1.0)));
}

double ball_radius_A(double t, const solver::OldroydParams& params) {
  return std::sqrt(2.0 / (params.nu2 * (t + 1.0)));
}

PointwiseRatios pointwise_bound_ratios(const Grid& g, const VectorField2& u,
                                       const SymTensorField2& tau, double tau_l1) {
  PointwiseRatios out;
  const double L = g.length();
  const auto omega = spectral::curl(g, u);
  double tau_sup = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const std::size_t i = g.spectral_offset(row, col);
      double t2 = 0.0;
      for (std::size_t c = 0; c < 3; ++c) t2 += kTensorWeights[c] * std::norm(tau[c][i]);
      tau_sup = std::max(tau_sup, L * std::sqrt(t2));
      const double k2 = g.k2(row, col);
      if (k2 == 0.0) continue;
      const double xi = std::sqrt(k2);
      const double weight = 1.0 / xi + 1.0;
      const double uh = L * std::sqrt(std::norm(u[0][i]) + std::norm(u[1][i]));
      out.uhat = std::max(out.uhat, uh / weight);
      out.omegahat = std::max(out.omegahat, L * std::abs(omega[i]) / (xi * weight));
    }
  }
  out.tauhat = tau_l1 > 0.0 ? tau_sup / tau_l1 : 0.0;
  return out;
}

namespace {

std::array<spectral::Samples, 3> to_physical(const spectral::Transform& tr,
                                             const SymTensorField2& tau) {
  return {tr.inverse(tau[0]), tr.inverse(tau[1]), tr.inverse(tau[2])};
}

double frobenius_at(const std::array<spectral::Samples, 3>& t, std::size_t i) {
  return std::sqrt(t[0][i] * t[0][i] + 2.0 * t[1][i] * t[1][i] + t[2][i] * t[2][i]);
}

double tensor_l2_squared(const Grid& g, const SymTensorField2& tau) {
  double s = 0.0;
  for (std::size_t c = 0; c < 3; ++c) s += kTensorWeights[c] * spectral::l2_squared(g, tau[c]);
  return s;
}

double tensor_gradient_squared(const Grid& g, const SymTensorField2& tau) {
  double s = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    s += kTensorWeights[c] * spectral::gradient_l2_squared(g, tau[c]);
  }
  return s;
}

double lady_from(const Grid& g, const std::array<spectral::Samples, 3>& phys, double l2,
                 double grad) {
  if (!(l2 > 0.0) || !(grad > 0.0)) {
    throw std::invalid_argument("ladyzhenskaya_ratio: field has zero norm or zero gradient");
  }
  double s4 = 0.0;
  for (std::size_t i = 0; i < phys[0].size(); ++i) {
    const double m = frobenius_at(phys, i);
    s4 += m * m * m * m;
  }
  return std::sqrt(s4 * g.cell_area()) / (l2 * grad);
}

}  // namespace

double ladyzhenskaya_ratio(const spectral::Transform& transform, const SymTensorField2& tau) {
  const auto& g = transform.grid();
  return lady_from(g, to_physical(transform, tau), std::sqrt(tensor_l2_squared(g, tau)),
                   std::sqrt(tensor_gradient_squared(g, tau)));
}

double heat_equivalence_gap(const Grid& g, const VectorField2& u, double t_u,
                            const VectorField2& v, double t_v) {
  if (t_u != t_v) throw std::logic_error("heat_equivalence_gap: clock mismatch");
  double gap = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    spectral::Spectrum d = u[c];
    spectral::axpy(d, -1.0, v[c]);
    gap += spectral::l2_squared(g, d);
  }
  const double t = t_u;
  const double lg = std::log(t + std::numbers::e);
  return gap * (t + 1.0) * (t + 1.0) / (lg * lg);
}

DiagnosticsRecord record(const spectral::Transform& transform, const solver::OldroydState& state,
                         const solver::HeatCompanionState& companion, const VectorField2& forcing,
                         const solver::OldroydParams& params, double dissipation_cum) {
  const Grid& g = transform.grid();
  const double L = g.length();
  DiagnosticsRecord r;
  r.t = state.t;
  r.dissipation_cum = dissipation_cum;

  // velocity
  r.u_l2 = std::sqrt(spectral::l2_squared(g, state.u[0]) + spectral::l2_squared(g, state.u[1]));
  r.grad_u_l2 = std::sqrt(spectral::gradient_l2_squared(g, state.u[0]) +
                          spectral::gradient_l2_squared(g, state.u[1]));
  const auto omega = spectral::curl(g, state.u);
  r.omega_l2 = std::sqrt(spectral::l2_squared(g, omega));
  r.grad_omega_l2 = std::sqrt(spectral::gradient_l2_squared(g, omega));
  r.ball_omega_S = spectral::ball_energy(g, omega, ball_radius_S(state.t, params));

  // stress
  const auto tau = to_physical(transform, state.tau);
  double l1 = 0.0;
  for (std::size_t i = 0; i < tau[0].size(); ++i) l1 += frobenius_at(tau, i);
  r.tau_l1 = l1 * g.cell_area();
  r.tau_l2 = std::sqrt(tensor_l2_squared(g, state.tau));
  r.grad_tau_l2 = std::sqrt(tensor_gradient_squared(g, state.tau));
  r.trace_tau_int = L * (state.tau[0][0].real() + state.tau[2][0].real());
  try {
    r.lady_ratio = lady_from(g, tau, r.tau_l2, r.grad_tau_l2);
  } catch (const std::invalid_argument&) {
    r.lady_ratio.reset();
  }

  // density
  const auto rho = transform.inverse(state.rho);
  r.rho_l2 = std::sqrt(spectral::l2_squared(g, state.rho));
  r.rho_linf = spectral::linf_norm(rho);
  r.grad_rho_l2 = std::sqrt(spectral::gradient_l2_squared(g, state.rho));
  r.ball_rho_A = spectral::ball_energy(g, state.rho, ball_radius_A(state.t, params));
  r.mass = L * state.rho[0].real();

  // conformation
  closure::GaussianClosure c;
  c.rho = rho;
  c.sigma = tau;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    c.sigma[0][i] += rho[i];
    c.sigma[2][i] += rho[i];
  }
  r.sigma_min_eig = c.size() ? c.sigma_at(0).eigenvalues()[0] : 0.0;
  r.sigma_max_eig = c.size() ? c.sigma_at(0).eigenvalues()[1] : 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto e = c.sigma_at(i).eigenvalues();
    r.sigma_min_eig = std::min(r.sigma_min_eig, e[0]);
    r.sigma_max_eig = std::max(r.sigma_max_eig, e[1]);
  }
  try {
    r.free_energy = closure::free_energy(g, state.u, c, params.mu).total;
  } catch (const std::domain_error&) {
    r.free_energy.reset();
  }

  const auto ratios = pointwise_bound_ratios(g, state.u, state.tau, r.tau_l1);
  r.ratio_uhat = ratios.uhat;
  r.ratio_omegahat = ratios.omegahat;
  r.ratio_tauhat = ratios.tauhat;

  r.heat_gap = heat_equivalence_gap(g, state.u, state.t, companion.v, companion.t);
  r.v_l2 = std::sqrt(spectral::l2_squared(g, companion.v[0]) +
                     spectral::l2_squared(g, companion.v[1]));
  r.forcing_l2 = std::sqrt(spectral::l2_squared(g, forcing[0]) +
                           spectral::l2_squared(g, forcing[1]));
  return r;
}

}  // namespace oldroyd::analysis
