#pragma once

#include <array>
#include <optional>

#include "oldroyd/solver/model.hpp"
#include "oldroyd/spectral/transform.hpp"

namespace oldroyd::analysis {

using spectral::SymTensorField2;
using spectral::VectorField2;

/// One snapshot of every monitored quantity. Norms are plain (not squared)
/// unless the name says otherwise. Tensor norms use the Frobenius magnitude
/// (xy counted twice). Optional fields are undefined after positivity loss.
struct DiagnosticsRecord {
  double t = 0.0;
  double u_l2 = 0.0, grad_u_l2 = 0.0, omega_l2 = 0.0, grad_omega_l2 = 0.0;
  double tau_l1 = 0.0, tau_l2 = 0.0, grad_tau_l2 = 0.0;
  double rho_l2 = 0.0, rho_linf = 0.0, grad_rho_l2 = 0.0;
  double trace_tau_int = 0.0;
  std::optional<double> free_energy;
  double dissipation_cum = 0.0;
  double ball_omega_S = 0.0, ball_rho_A = 0.0;
  double sigma_min_eig = 0.0;
  double ratio_uhat = 0.0, ratio_omegahat = 0.0, ratio_tauhat = 0.0;
  double heat_gap = 0.0;
  std::optional<double> lady_ratio;

  // not part of the CSV
  double sigma_max_eig = 0.0;
  double mass = 0.0;
  double v_l2 = 0.0;        ///< heat companion
  double forcing_l2 = 0.0;  ///< companion forcing
};

/// r_S(t) = sqrt(2 / (nu1 (t + 1))) and r_A(t) = sqrt(2 / (nu2 (t + 1))).
double ball_radius_S(double t, const solver::OldroydParams& params);
double ball_radius_A(double t, const solver::OldroydParams& params);

struct PointwiseRatios {
  double uhat = 0.0;      ///< sup |U| / (1/|xi| + 1)
  double omegahat = 0.0;  ///< sup |W| / (|xi| (1/|xi| + 1))
  double tauhat = 0.0;    ///< sup |T| / ||tau||_{L1}
};

/// Sups over nonzero modes (all modes for tau) of the continuum transforms
/// U = L uhat etc. tau_l1 <= 0 gives tauhat = 0.
PointwiseRatios pointwise_bound_ratios(const spectral::Grid& grid, const VectorField2& u,
                                       const SymTensorField2& tau, double tau_l1);

/// ||tau||_{L4}^2 / (||tau||_{L2} ||grad tau||_{L2}). Throws
/// std::invalid_argument for a zero (or constant) field.
double ladyzhenskaya_ratio(const spectral::Transform& transform, const SymTensorField2& tau);

/// ||u - v||^2 (t+1)^2 / log(t+e)^2. Throws std::logic_error when t_u != t_v.
double heat_equivalence_gap(const spectral::Grid& grid, const VectorField2& u, double t_u,
                            const VectorField2& v, double t_v);

/// Gather a full record from one snapshot. `forcing` is the companion
/// forcing at the same instant.
DiagnosticsRecord record(const spectral::Transform& transform, const solver::OldroydState& state,
                         const solver::HeatCompanionState& companion, const VectorField2& forcing,
                         const solver::OldroydParams& params, double dissipation_cum);

}  // namespace oldroyd::analysis
