#pragma once

#include <vector>

#include "oldroyd/solver/model.hpp"
#include "oldroyd/spectral/transform.hpp"

namespace oldroyd::solver {

/// Right-hand side split into the stiff linear part (handled by exact
/// integrating factors) and the explicit part (quadratic products formed in
/// physical space from dealiased factors, then dealiased).
struct Tendencies {
  VectorField2 u_stiff;        ///< nu1 Lap u
  SymTensorField2 tau_stiff;   ///< nu2 Lap tau - 2k tau
  ScalarField rho_stiff;       ///< nu2 Lap rho
  VectorField2 u_explicit;     ///< P(-u.grad u + mu div tau)
  SymTensorField2 tau_explicit;  ///< -u.grad tau + (grad u) tau + tau (grad u)^T + rho (grad u + grad u^T)
  ScalarField rho_explicit;    ///< -u.grad rho
};

/// Time integrator for the diffusive Oldroyd-B system on one grid.
///
/// Scheme: integrating-factor midpoint. With w' = -lambda w + N(w) per mode,
///   w_half = E(h/2) (w_n + h/2 N(w_n)),
///   w_next = E(h) w_n + h E(h/2) N(w_half),      E(s) = exp(-lambda s),
/// where lambda = nu1|xi|^2 (u), nu2|xi|^2 + 2k (tau), nu2|xi|^2 (rho).
class OldroydSolver {
 public:
  OldroydSolver(const Grid& grid, const OldroydParams& params,
                CompanionForcing forcing = CompanionForcing::kProjected);

  const Grid& grid() const { return transform_.grid(); }
  const spectral::Transform& transform() const { return transform_; }
  const OldroydParams& params() const { return params_; }
  CompanionForcing companion_forcing_mode() const { return forcing_; }

  Tendencies rhs(const OldroydState& state) const;

  /// dt = cfl * min(dx / max(|u|_inf, 1e-6), 1 / max(|grad u|_inf, 1e-6), dt_max).
  double compute_dt(const OldroydState& state, double cfl, double dt_max) const;

  /// Advance state by dt in place. Returns the companion forcing evaluated at
  /// the midpoint stage, which is what heat_companion_step consumes.
  /// Throws SolverAbort on a CFL breach (dt above the cfl = 1 bound) or a
  /// non-finite result; the state is left untouched in that case.
  VectorField2 step(OldroydState& state, double dt);

  /// Forcing of the heat companion for a given stress.
  VectorField2 companion_forcing(const SymTensorField2& tau) const;

 private:
  struct Explicit {
    VectorField2 u;
    SymTensorField2 tau;
    ScalarField rho;
    double max_speed = 0.0;
    double max_gradient = 0.0;
  };
  Explicit explicit_terms(const OldroydState& state) const;
  void refresh_factors(double dt);

  spectral::Transform transform_;
  OldroydParams params_;
  CompanionForcing forcing_;

  double cached_dt_ = -1.0;
  // exp(-lambda dt/2) and exp(-lambda dt) for velocity, stress, density
  std::vector<double> half_u_, full_u_, half_tau_, full_tau_, half_rho_, full_rho_;
};

/// Advance the heat companion by dt with the same integrating-factor midpoint
/// rule: v_next = E(dt) v + dt E(dt/2) f_half. `paired_time` is the Oldroyd
/// clock before the step; a mismatch throws std::logic_error.
void heat_companion_step(HeatCompanionState& companion, const VectorField2& midpoint_forcing,
                         double dt, const OldroydParams& params, const Grid& grid,
                         double paired_time);

}  // namespace oldroyd::solver
