#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oldroyd/solver/initial_data.hpp"
#include "oldroyd/solver/integrator.hpp"
#include "oldroyd/spectral/norms.hpp"
#include "oldroyd/spectral/operators.hpp"
#include "verify/galerkin.hpp"
#include "verify/generators.hpp"

using namespace oldroyd;
using namespace oldroyd::solver;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_abs(const spectral::Spectrum& f) {
  double m = 0.0;
  for (auto c : f) m = std::max(m, std::abs(c));
  return m;
}

InitialDataSpec small_spec() {
  InitialDataSpec s;
  s.amplitude = 0.3;
  s.velocity_width = 5.0;
  s.density_width = 4.0;
  s.epsilon = 0.25;
  s.center = {16.0, 16.0};
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  OldroydParams p;
  CHECK_NOTHROW(validate(p));
  p.nu2 = 0.0;
  CHECK_THROWS_WITH(validate(p), Catch::Matchers::ContainsSubstring("non-diffusive case out of scope"));
  p = {};
  p.k = -1.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("trusted horizon") {
  CHECK_THAT(trusted_horizon(200.0, {}), WithinRel(1250.0, 1e-15));
  CHECK_THAT(trusted_horizon(80.0, {0.2, 0.4, 1.0, 1.0}), WithinRel(100.0 / 0.4, 1e-15));
}

TEST_CASE("initial data factory") {
  const spectral::Grid g(64, 32.0);
  const spectral::Transform tr(g);
  const OldroydParams params;

  SECTION("eps = 0 gives tau = 0") {
    auto spec = small_spec();
    spec.epsilon = 0.0;
    const auto s = build_initial_state(spec, tr, params);
    for (const auto& c : s.tau) CHECK(max_abs(c) == 0.0);
  }
  SECTION("A = 0 gives u = 0") {
    auto spec = small_spec();
    spec.amplitude = 0.0;
    const auto s = build_initial_state(spec, tr, params);
    CHECK(max_abs(s.u[0]) == 0.0);
    CHECK(max_abs(s.u[1]) == 0.0);
    CHECK(max_abs(spectral::curl(g, s.u)) == 0.0);
  }
  SECTION("generic data: divergence-free, unit mass, sigma positive definite") {
    const auto s = build_initial_state(small_spec(), tr, params);
    CHECK(max_abs(spectral::divergence(g, s.u)) <= 1e-12);
    CHECK_THAT(g.length() * s.rho[0].real(), WithinAbs(1.0, 1e-12));
    const auto rho = tr.inverse(s.rho);
    const auto txx = tr.inverse(s.tau[0]), txy = tr.inverse(s.tau[1]), tyy = tr.inverse(s.tau[2]);
    double lo = 1.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const SymMatrix2 sig{txx[i] + rho[i], txy[i], tyy[i] + rho[i]};
      lo = std::min(lo, sig.eigenvalues()[0]);
    }
    CHECK(lo > 0.0);
  }
  SECTION("dealiased") {
    const auto s = build_initial_state(small_spec(), tr, params);
    for (int row = 0; row < g.n(); ++row) {
      for (int col = 0; col < g.cols(); ++col) {
        if (g.retained(row, col)) continue;
        const auto i = g.spectral_offset(row, col);
        CHECK(s.rho[i] == spectral::Complex{});
        CHECK(s.u[0][i] == spectral::Complex{});
      }
    }
  }
  SECTION("rejections") {
    auto spec = small_spec();
    spec.density_width = 3.0;  // 6 points per width
    CHECK_THROWS_AS(validate(spec, g), std::invalid_argument);
    spec = small_spec();
    spec.epsilon = 0.6;  // ||eps B|| = 0.6
    CHECK_THROWS_AS(validate(spec, g), std::invalid_argument);
    spec.epsilon = 0.5;
    CHECK_NOTHROW(validate(spec, g));
  }
}

TEST_CASE("amplitude for unit free energy") {
  InitialDataSpec spec;
  const double a = amplitude_for_free_energy(spec, {}, 1.0);
  // pi A^2 + (0 - log det(I + 0.25 B)) / 2 = 1, det = 1 - 0.0625
  CHECK_THAT(a, WithinRel(std::sqrt((1.0 + 0.5 * std::log(0.9375)) / std::numbers::pi), 1e-14));
}

TEST_CASE("random direction is deterministic with unit norm") {
  const auto a = random_direction(42), b = random_direction(42), c = random_direction(43);
  CHECK(a.xx == b.xx);
  CHECK(a.xy == b.xy);
  CHECK_THAT(a.spectral_norm(), WithinRel(1.0, 1e-14));
  CHECK((a.xx != c.xx || a.xy != c.xy));
}

TEST_CASE("rhs on trivial states") {
  const spectral::Grid g(16, 4.0);
  const OldroydParams params{0.5, 0.5, 1.0, 1.5};
  const OldroydSolver solver(g, params);

  SECTION("u = 0, rho constant, tau = 0") {
    auto s = zero_state(g);
    s.rho[0] = 2.0 * g.length();
    const auto t = solver.rhs(s);
    for (const auto& c : t.tau_explicit) CHECK(max_abs(c) == 0.0);
    for (const auto& c : t.tau_stiff) CHECK(max_abs(c) == 0.0);
    CHECK(max_abs(t.rho_explicit) == 0.0);
    CHECK(max_abs(t.rho_stiff) == 0.0);
    CHECK(max_abs(t.u_explicit[0]) == 0.0);
  }
  SECTION("u = 0, constant tau relaxes at rate 2k") {
    auto s = zero_state(g);
    s.tau[0][0] = 0.3;
    s.tau[1][0] = -0.1;
    s.tau[2][0] = 0.2;
    const auto t = solver.rhs(s);
    for (int c = 0; c < 3; ++c) {
      const auto total = t.tau_stiff[c][0] + t.tau_explicit[c][0];
      CHECK(std::abs(total - (-2.0 * params.k) * s.tau[c][0]) <= 1e-15);
    }
  }
}

TEST_CASE("rhs matches the convolution oracle on a single mode and on random states") {
  const spectral::Grid g(16, 2.0 * std::numbers::pi);
  const OldroydParams params{0.5, 0.5, 0.7, 1.0};
  const OldroydSolver solver(g, params);
  auto s = zero_state(g);
  SECTION("single divergence-free mode") {
    // u = a (-xi2, xi1) cos(xi . x), xi = (1, 2)
    const auto i = g.spectral_offset(2, 1);
    const double L = g.length();
    s.u[0][i] = {-2.0 * 0.5 * L / 2.0, 0.0};
    s.u[1][i] = {1.0 * 0.5 * L / 2.0, 0.0};
  }
  SECTION("random") {
    verify::Rng rng(99);
    s.u = verify::random_velocity(g, rng, 5, 0.4);
    s.rho = verify::random_field(g, rng, 5, 0.2);
    for (auto& c : s.tau) c = verify::random_field(g, rng, 5, 0.2);
  }
  const auto fast = solver.rhs(s);
  const auto slow = verify::galerkin_explicit(g, s, params);
  double scale = 1e-300;
  for (int c = 0; c < 2; ++c) scale = std::max(scale, max_abs(s.u[c]));
  for (int c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < slow.u[c].size(); ++k) {
      CHECK(std::abs(fast.u_explicit[c][k] - slow.u[c][k]) <= 1e-12 * scale * scale);
    }
  }
  for (int c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < slow.tau[c].size(); ++k) {
      CHECK(std::abs(fast.tau_explicit[c][k] - slow.tau[c][k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("step uses exact factors for linear evolution") {
  const spectral::Grid g(16, 3.0);
  const OldroydParams params{0.4, 0.3, 1.0, 0.8};
  OldroydSolver solver(g, params);

  SECTION("constant tau, u = 0") {
    auto s = zero_state(g);
    s.tau[0][0] = 1.0;
    s.tau[1][0] = 0.25;
    s.tau[2][0] = -0.5;
    const auto t0 = s.tau;
    const double dt = 0.37;
    solver.step(s, dt);
    for (int c = 0; c < 3; ++c) {
      CHECK_THAT(s.tau[c][0].real(), WithinRel(std::exp(-2.0 * params.k * dt) * t0[c][0].real(), 1e-10));
    }
    CHECK_THAT(s.t, WithinRel(dt, 1e-15));
  }
  SECTION("single density mode, u = 0") {
    auto s = zero_state(g);
    const auto i = g.spectral_offset(1, 2);
    s.rho[i] = {0.5, -0.25};
    const double dt = 0.2;
    solver.step(s, dt);
    const auto expect = std::exp(-params.nu2 * g.k2(1, 2) * dt) * spectral::Complex{0.5, -0.25};
    CHECK(std::abs(s.rho[i] - expect) <= 1e-15);
  }
}

TEST_CASE("step keeps divergence and mass") {
  const spectral::Grid g(32, 8.0);
  verify::Rng rng(17);
  const OldroydParams params{0.1, 0.1, 1.0, 1.0};
  OldroydSolver solver(g, params);
  auto s = verify::random_state(g, rng, 0.1);
  const double mass0 = s.rho[0].real();
  for (int i = 0; i < 20; ++i) {
    solver.step(s, solver.compute_dt(s, 0.5, 0.1));
    CHECK(max_abs(spectral::divergence(g, s.u)) <= 1e-10);
  }
  CHECK_THAT(s.rho[0].real(), WithinRel(mass0, 1e-10));
}

TEST_CASE("compute_dt") {
  const spectral::Grid g(64, 16.0);  // dx = 0.25
  const OldroydSolver solver(g, {});
  auto s = zero_state(g);
  CHECK_THAT(solver.compute_dt(s, 0.5, 3.0), WithinRel(1.5, 1e-15));

  // u1 = sin(2 pi y / L): max |u| = 1, max |grad u| = 2 pi / 16
  const spectral::Transform tr(g);
  spectral::Samples u1(g.physical_size());
  for (int iy = 0; iy < 64; ++iy) {
    for (int ix = 0; ix < 64; ++ix) u1[iy * 64 + ix] = std::sin(2.0 * std::numbers::pi * iy / 64.0);
  }
  s.u[0] = tr.forward(u1);
  CHECK_THAT(solver.compute_dt(s, 0.5, 100.0), WithinRel(0.125, 1e-12));

  // halving dx halves the advective bound
  const spectral::Grid g2(128, 16.0);
  const OldroydSolver solver2(g2, {});
  const spectral::Transform tr2(g2);
  spectral::Samples v1(g2.physical_size());
  for (int iy = 0; iy < 128; ++iy) {
    for (int ix = 0; ix < 128; ++ix) v1[iy * 128 + ix] = std::sin(2.0 * std::numbers::pi * iy / 128.0);
  }
  auto s2 = zero_state(g2);
  s2.u[0] = tr2.forward(v1);
  CHECK_THAT(solver2.compute_dt(s2, 0.5, 100.0), WithinRel(0.0625, 1e-12));
}

TEST_CASE("step aborts on a CFL breach") {
  const spectral::Grid g(64, 16.0);
  OldroydSolver solver(g, {});
  auto s = zero_state(g);
  const spectral::Transform tr(g);
  spectral::Samples u1(g.physical_size());
  for (int iy = 0; iy < 64; ++iy) {
    for (int ix = 0; ix < 64; ++ix) u1[iy * 64 + ix] = std::sin(2.0 * std::numbers::pi * iy / 64.0);
  }
  s.u[0] = tr.forward(u1);
  CHECK_THROWS_AS(solver.step(s, 1.0), SolverAbort);
  CHECK(s.t == 0.0);
}

TEST_CASE("heat companion") {
  const spectral::Grid g(16, 2.0 * std::numbers::pi);
  const OldroydParams params{1.0, 0.5, 1.0, 1.0};
  const auto zero = spectral::zero_vector(g);

  SECTION("single mode, nu1 = 1, t = 1 decays by e^-1") {
    HeatCompanionState h{spectral::zero_vector(g), 0.0};
    const auto i = g.spectral_offset(0, 1);  // |xi| = 1
    h.v[1][i] = {2.0, 0.0};
    for (int k = 0; k < 10; ++k) heat_companion_step(h, zero, 0.1, params, g, h.t);
    CHECK_THAT(h.v[1][i].real(), WithinRel(2.0 * std::exp(-1.0), 1e-12));
  }
  SECTION("clock mismatch") {
    HeatCompanionState h{spectral::zero_vector(g), 0.5};
    CHECK_THROWS_AS(heat_companion_step(h, zero, 0.1, params, g, 0.4), std::logic_error);
  }
}
