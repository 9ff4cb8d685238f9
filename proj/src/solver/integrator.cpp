#include "oldroyd/solver/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::solver {

using spectral::Complex;
using spectral::kXX;
using spectral::kXY;
using spectral::kYY;
using spectral::Samples;
using spectral::Spectrum;

namespace {

constexpr double kSpeedFloor = 1e-6;
constexpr double kGradientFloor = 1e-6;

bool all_finite(const Spectrum& f) {
  for (const auto& z : f) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool all_finite(const OldroydState& s) {
  return all_finite(s.u[0]) && all_finite(s.u[1]) && all_finite(s.tau[0]) &&
         all_finite(s.tau[1]) && all_finite(s.tau[2]) && all_finite(s.rho);
}

}  // namespace

OldroydSolver::OldroydSolver(const Grid& grid, const OldroydParams& params,
                             CompanionForcing forcing)
    : transform_(grid), params_(params), forcing_(forcing) {
  validate(params_);
}

OldroydSolver::Explicit OldroydSolver::explicit_terms(const OldroydState& s) const {
  const Grid& g = grid();
  const std::size_t np = g.physical_size();
  auto inv = [&](const Spectrum& f) { return transform_.inverse(f); };

  const Samples u1 = inv(s.u[0]);
  const Samples u2 = inv(s.u[1]);
  // G_ij = d_j u_i
  const Samples g11 = inv(spectral::partial_x(g, s.u[0]));
  const Samples g12 = inv(spectral::partial_y(g, s.u[0]));
  const Samples g21 = inv(spectral::partial_x(g, s.u[1]));
  const Samples g22 = inv(spectral::partial_y(g, s.u[1]));
  const Samples txx = inv(s.tau[kXX]);
  const Samples txy = inv(s.tau[kXY]);
  const Samples tyy = inv(s.tau[kYY]);
  const Samples rho = inv(s.rho);

  Explicit out;
  for (std::size_t i = 0; i < np; ++i) {
    out.max_speed = std::max(out.max_speed, std::hypot(u1[i], u2[i]));
    out.max_gradient = std::max(
        out.max_gradient,
        std::sqrt(g11[i] * g11[i] + g12[i] * g12[i] + g21[i] * g21[i] + g22[i] * g22[i]));
  }

  auto product = [&](auto&& value) {
    Samples p(np);
    for (std::size_t i = 0; i < np; ++i) p[i] = value(i);
    auto hat = transform_.forward(p);
    spectral::dealias_inplace(g, hat);
    return hat;
  };
  // flux divergence d1(u1 f) + d2(u2 f); equals u.grad f because div u = 0
  auto advection = [&](const Samples& f) {
    auto a = spectral::partial_x(g, product([&](std::size_t i) { return u1[i] * f[i]; }));
    const auto b = spectral::partial_y(g, product([&](std::size_t i) { return u2[i] * f[i]; }));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };

  // momentum: -div(u (x) u) + mu div tau, projected
  {
    const auto uu11 = product([&](std::size_t i) { return u1[i] * u1[i]; });
    const auto uu12 = product([&](std::size_t i) { return u1[i] * u2[i]; });
    const auto uu22 = product([&](std::size_t i) { return u2[i] * u2[i]; });
    const auto inertia = spectral::divergence(g, spectral::SymTensorField2{uu11, uu12, uu22});
    auto stress = spectral::divergence(g, s.tau);
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < stress[c].size(); ++i) {
        stress[c][i] = params_.mu * stress[c][i] - inertia[c][i];
      }
    }
    spectral::leray_project_inplace(g, stress);
    out.u = std::move(stress);
  }

  // stress: (grad u) tau + tau (grad u)^T + rho (grad u + grad u^T) - u.grad tau
  {
    auto sxx = product([&](std::size_t i) {
      return 2.0 * (g11[i] * txx[i] + g12[i] * txy[i]) + 2.0 * rho[i] * g11[i];
    });
    auto sxy = product([&](std::size_t i) {
      return g11[i] * txy[i] + g12[i] * tyy[i] + txx[i] * g21[i] + txy[i] * g22[i] +
             rho[i] * (g12[i] + g21[i]);
    });
    auto syy = product([&](std::size_t i) {
      return 2.0 * (g21[i] * txy[i] + g22[i] * tyy[i]) + 2.0 * rho[i] * g22[i];
    });
    const auto axx = advection(txx);
    const auto axy = advection(txy);
    const auto ayy = advection(tyy);
    for (std::size_t i = 0; i < sxx.size(); ++i) {
      sxx[i] -= axx[i];
      sxy[i] -= axy[i];
      syy[i] -= ayy[i];
    }
    out.tau = {std::move(sxx), std::move(sxy), std::move(syy)};
  }

  out.rho = advection(rho);
  for (auto& z : out.rho) z = -z;
  return out;
}

Tendencies OldroydSolver::rhs(const OldroydState& s) const {
  const Grid& g = grid();
  Tendencies t;
  auto ex = explicit_terms(s);
  t.u_explicit = std::move(ex.u);
  t.tau_explicit = std::move(ex.tau);
  t.rho_explicit = std::move(ex.rho);

  auto scaled_laplacian = [&](const Spectrum& f, double nu, double decay) {
    auto out = spectral::laplacian(g, f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = nu * out[i] - decay * f[i];
    return out;
  };
  t.u_stiff = {scaled_laplacian(s.u[0], params_.nu1, 0.0),
               scaled_laplacian(s.u[1], params_.nu1, 0.0)};
  for (std::size_t c = 0; c < 3; ++c) {
    t.tau_stiff[c] = scaled_laplacian(s.tau[c], params_.nu2, 2.0 * params_.k);
  }
  t.rho_stiff = scaled_laplacian(s.rho, params_.nu2, 0.0);
  return t;
}

double OldroydSolver::compute_dt(const OldroydState& s, double cfl, double dt_max) const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
  const Grid& g = grid();
  const double dx = g.spacing();

  // |u(x)| <= (1/L) sum |uhat| and |grad u(x)| <= (1/L) sum |xi| |uhat|. When
  // these bounds already leave dt_max active the exact maxima cannot change
  // the answer, so the transforms are skipped.
  double speed_bound = 0.0, gradient_bound = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const auto i = g.spectral_offset(row, col);
      const double a = std::sqrt(std::norm(s.u[0][i]) + std::norm(s.u[1][i]));
      const double w = g.column_weight(col);
      speed_bound += w * a;
      gradient_bound += w * a * std::sqrt(g.k2(row, col));
    }
  }
  speed_bound /= g.length();
  gradient_bound /= g.length();
  auto formula = [&](double speed, double gradient) {
    return cfl * std::min({dx / std::max(speed, kSpeedFloor),
                           1.0 / std::max(gradient, kGradientFloor), dt_max});
  };
  if (dx / std::max(speed_bound, kSpeedFloor) >= dt_max &&
      1.0 / std::max(gradient_bound, kGradientFloor) >= dt_max) {
    return cfl * dt_max;
  }

  const Samples u1 = transform_.inverse(s.u[0]);
  const Samples u2 = transform_.inverse(s.u[1]);
  const Samples g11 = transform_.inverse(spectral::partial_x(g, s.u[0]));
  const Samples g12 = transform_.inverse(spectral::partial_y(g, s.u[0]));
  const Samples g21 = transform_.inverse(spectral::partial_x(g, s.u[1]));
  const Samples g22 = transform_.inverse(spectral::partial_y(g, s.u[1]));
  double speed = 0.0, gradient = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    speed = std::max(speed, std::hypot(u1[i], u2[i]));
    gradient = std::max(gradient, std::sqrt(g11[i] * g11[i] + g12[i] * g12[i] +
                                            g21[i] * g21[i] + g22[i] * g22[i]));
  }
  return formula(speed, gradient);
}

void OldroydSolver::refresh_factors(double dt) {
  if (dt == cached_dt_) return;
  const Grid& g = grid();
  const std::size_t ns = g.spectral_size();
  for (auto* v : {&half_u_, &full_u_, &half_tau_, &full_tau_, &half_rho_, &full_rho_}) {
    v->resize(ns);
  }
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const auto i = g.spectral_offset(row, col);
      const double k2 = g.k2(row, col);
      const double lu = params_.nu1 * k2;
      const double lt = params_.nu2 * k2 + 2.0 * params_.k;
      const double lr = params_.nu2 * k2;
      half_u_[i] = std::exp(-0.5 * lu * dt);
      full_u_[i] = std::exp(-lu * dt);
      half_tau_[i] = std::exp(-0.5 * lt * dt);
      full_tau_[i] = std::exp(-lt * dt);
      half_rho_[i] = std::exp(-0.5 * lr * dt);
      full_rho_[i] = std::exp(-lr * dt);
    }
  }
  cached_dt_ = dt;
}

VectorField2 OldroydSolver::companion_forcing(const SymTensorField2& tau) const {
  auto f = spectral::divergence(grid(), tau);
  if (forcing_ == CompanionForcing::kProjected) {
    for (auto& c : f) {
      for (auto& z : c) z *= params_.mu;
    }
    spectral::leray_project_inplace(grid(), f);
  }
  return f;
}

VectorField2 OldroydSolver::step(OldroydState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be positive");
  const Grid& g = grid();
  refresh_factors(dt);
  const std::size_t ns = g.spectral_size();

  Explicit n0;
  try {
    n0 = explicit_terms(s);
  } catch (const std::domain_error& e) {
    throw SolverAbort(std::string("non-finite state: ") + e.what(), s.t);
  }
  const double courant = dt * std::max(n0.max_speed / g.spacing(), n0.max_gradient);
  if (courant > 1.0 + 1e-12) {
    throw SolverAbort("CFL violation: dt = " + std::to_string(dt) +
                          " exceeds the stability bound (Courant number " +
                          std::to_string(courant) + ")",
                      s.t);
  }

  const double h = dt;
  OldroydState half = zero_state(g);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t c = 0; c < 2; ++c) half.u[c][i] = half_u_[i] * (s.u[c][i] + 0.5 * h * n0.u[c][i]);
    for (std::size_t c = 0; c < 3; ++c) {
      half.tau[c][i] = half_tau_[i] * (s.tau[c][i] + 0.5 * h * n0.tau[c][i]);
    }
    half.rho[i] = half_rho_[i] * (s.rho[i] + 0.5 * h * n0.rho[i]);
  }
  half.t = s.t + 0.5 * h;

  Explicit n1;
  try {
    n1 = explicit_terms(half);
  } catch (const std::domain_error& e) {
    throw SolverAbort(std::string("non-finite state: ") + e.what(), half.t);
  }

  OldroydState next = zero_state(g);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t c = 0; c < 2; ++c) {
      next.u[c][i] = full_u_[i] * s.u[c][i] + h * half_u_[i] * n1.u[c][i];
    }
    for (std::size_t c = 0; c < 3; ++c) {
      next.tau[c][i] = full_tau_[i] * s.tau[c][i] + h * half_tau_[i] * n1.tau[c][i];
    }
    next.rho[i] = full_rho_[i] * s.rho[i] + h * half_rho_[i] * n1.rho[i];
  }
  spectral::leray_project_inplace(g, next.u);
  for (auto& c : next.u) spectral::enforce_conjugate_symmetry(g, c);
  for (auto& c : next.tau) spectral::enforce_conjugate_symmetry(g, c);
  spectral::enforce_conjugate_symmetry(g, next.rho);
  next.t = s.t + h;

  if (!all_finite(next)) throw SolverAbort("non-finite state after step", s.t);

  auto forcing = companion_forcing(half.tau);
  s = std::move(next);
  return forcing;
}

void heat_companion_step(HeatCompanionState& companion, const VectorField2& midpoint_forcing,
                         double dt, const OldroydParams& params, const Grid& g,
                         double paired_time) {
  if (companion.t != paired_time) {
    throw std::logic_error("heat companion clock " + std::to_string(companion.t) +
                           " does not match the paired state clock " +
                           std::to_string(paired_time));
  }
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const auto i = g.spectral_offset(row, col);
      const double lambda = params.nu1 * g.k2(row, col);
      const double full = std::exp(-lambda * dt);
      const double half = std::exp(-0.5 * lambda * dt);
      for (std::size_t c = 0; c < 2; ++c) {
        companion.v[c][i] = full * companion.v[c][i] + dt * half * midpoint_forcing[c][i];
      }
    }
  }
  companion.t = paired_time + dt;
}

}  // namespace oldroyd::solver
