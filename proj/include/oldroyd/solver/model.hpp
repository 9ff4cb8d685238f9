#pragma once

#include <stdexcept>
#include <string>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::solver {

using spectral::Grid;
using spectral::ScalarField;
using spectral::SymTensorField2;
using spectral::VectorField2;

/// Coefficients of the diffusive Oldroyd-B system
///   u_t + u.grad u = nu1 Lap u - grad p + mu div tau,   div u = 0,
///   tau_t + u.grad tau = (grad u) tau + tau (grad u)^T - 2k tau + rho (grad u + grad u^T) + nu2 Lap tau,
///   rho_t + u.grad rho = nu2 Lap rho.
struct OldroydParams {
  double nu1 = 0.5;  ///< viscosity
  double nu2 = 0.5;  ///< centre-of-mass diffusivity
  double mu = 1.0;   ///< polymer stress coupling
  double k = 1.0;    ///< relaxation rate
};

/// Throws std::invalid_argument naming the violated constraint.
void validate(const OldroydParams& params);

/// Spectral (dealiased) unknowns. Pressure is eliminated by projection.
struct OldroydState {
  VectorField2 u;
  SymTensorField2 tau;
  ScalarField rho;
  double t = 0.0;
};

OldroydState zero_state(const Grid& grid);

/// Heat-equation companion v_t - nu1 Lap v = f, v(0) = u0, stepped in lockstep.
struct HeatCompanionState {
  VectorField2 v;
  double t = 0.0;
};

/// Forcing fed to the heat companion.
enum class CompanionForcing {
  kProjected,  ///< P(mu div tau), the forcing the velocity actually sees
  kLiteral,    ///< div tau, unprojected and without mu
};

std::string to_string(CompanionForcing forcing);
CompanionForcing companion_forcing_from_string(const std::string& name);

/// (L/8)^2 / max(nu1, nu2): time for the diffusion length to reach L/8.
double trusted_horizon(double box_length, const OldroydParams& params);

/// Raised when the run cannot continue (non-finite values, CFL breach,
/// positivity loss). Carries the time of failure.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

}  // namespace oldroyd::solver
