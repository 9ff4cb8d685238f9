#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oldroyd/analysis/decay.hpp"
#include "oldroyd/analysis/diagnostics.hpp"
#include "oldroyd/spectral/norms.hpp"
#include "verify/generators.hpp"

using namespace oldroyd;
using namespace oldroyd::analysis;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> geometric_times(double ratio, double horizon) {
  std::vector<double> t;
  for (int j = 0;; ++j) {
    const double v = std::pow(ratio, j) - 1.0;
    if (v > horizon) break;
    t.push_back(v);
  }
  return t;
}

}  // namespace

TEST_CASE("fit_decay recovers exact power laws") {
  const auto t = geometric_times(1.08, 2000.0);
  for (double a : {-2.5, -1.0, -0.3, 0.0, 0.7}) {
    std::vector<double> y;
    for (double s : t) y.push_back(3.0 * std::pow(1.0 + s, a));
    const auto fit = fit_decay(t, y, {9.0, 999.0});
    CHECK_THAT(fit.exponent, WithinAbs(a, 1e-12));
    CHECK_THAT(fit.log_prefactor, WithinAbs(std::log(3.0), 1e-10));
    CHECK(fit.residual < 1e-12);
  }
}

TEST_CASE("fit_decay on a log-periodic modulation") {
  // (1+t)^-1 (2 + sin log(1+t)) sampled at 1.08^j - 1 over 1+t in [10, 1000]
  const auto t = geometric_times(1.08, 2000.0);
  std::vector<double> y;
  for (double s : t) y.push_back((2.0 + std::sin(std::log1p(s))) / (1.0 + s));
  const auto fit = fit_decay(t, y, {9.0, 999.0});
  CHECK(fit.samples == 60);
  CHECK_THAT(fit.exponent, WithinAbs(-1.0386495767134347, 1e-12));
  CHECK(std::abs(fit.exponent + 1.0) <= 0.15);
}

TEST_CASE("fit_decay rejections") {
  const auto t = geometric_times(1.08, 2000.0);
  std::vector<double> y(t.size(), 1.0);
  CHECK_THROWS_AS(fit_decay(t, y, {9.0, 50.0}), std::invalid_argument);  // under a decade
  const std::vector<double> sparse_t{0.0, 9.0, 99.0, 999.0}, sparse_y{1.0, 0.1, 0.01, 0.001};
  CHECK_THROWS_AS(fit_decay(sparse_t, sparse_y, {0.0, 999.0}), std::invalid_argument);  // too few samples
  y[50] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, y, {9.0, 999.0}), std::invalid_argument);
  y[50] = std::nan("");
  CHECK_THROWS_AS(fit_decay(t, y, {9.0, 999.0}), std::invalid_argument);
}

TEST_CASE("final decade window") {
  const auto w = final_decade(999.0, 5.0);
  CHECK_THAT(w.t1, WithinRel(99.0, 1e-15));
  CHECK(w.t2 == 999.0);
  CHECK(final_decade(20.0, 5.0).t1 == 5.0);
}

TEST_CASE("boundedness verdicts") {
  const auto t = geometric_times(1.08, 2000.0);
  std::vector<double> flat, growing, bounded_osc;
  for (double s : t) {
    flat.push_back(2.0);
    growing.push_back(std::sqrt(1.0 + s));
    bounded_osc.push_back(1.5 + std::sin(std::log1p(s)));
  }
  CHECK(check_bounded(t, flat, {9.0, 999.0}).bounded);
  const auto g = check_bounded(t, growing, {9.0, 999.0});
  CHECK_FALSE(g.bounded);
  CHECK_THAT(g.trend, WithinAbs(0.5, 1e-12));
  CHECK(check_bounded(t, bounded_osc, {9.0, 999.0}).bounded);

  std::vector<double> signed_ramp;
  for (std::size_t i = 0; i < t.size(); ++i) signed_ramp.push_back(-1.0 + 0.01 * double(i));
  const auto r = check_bounded(t, signed_ramp, {0.0, 999.0});
  CHECK_FALSE(r.bounded);
  CHECK(r.method != check_bounded(t, flat, {9.0, 999.0}).method);
}

TEST_CASE("exponential-memory ratio against an independent quadrature") {
  struct Case {
    double p, k, ratio;
  };
  // (1/h(t)) int_0^t exp(-2k(t-s)) h(s) ds, h = (1+s)^-p, at t = 50/k
  const std::vector<Case> table{
      {1, 0.5, 1.0101031156320222}, {1, 1.0, 0.5050010212687734}, {1, 2.0, 0.2524514613657061},
      {2, 0.5, 1.0204146788343784}, {2, 1.0, 0.5101041694149615}, {2, 2.0, 0.2549519820334812},
      {3, 0.5, 1.0309412811360423}, {3, 1.0, 0.5153126401630003}, {3, 2.0, 0.2575030657410006},
  };
  for (const auto& c : table) {
    const double r = exp_memory_ratio([&](double s) { return std::pow(1.0 + s, -c.p); }, c.k, 50.0 / c.k);
    INFO("p = " << c.p << ", k = " << c.k);
    CHECK_THAT(r, WithinRel(c.ratio, 1e-6));
  }
}

TEST_CASE("exponential-memory ratio special cases") {
  const double k = 0.75, t = 4.0;
  CHECK_THAT(exp_memory_ratio([](double) { return 1.0; }, k, t),
             WithinRel((1.0 - std::exp(-2.0 * k * t)) / (2.0 * k), 1e-9));
  CHECK_THROWS_AS(exp_memory_ratio([](double s) { return std::exp(-s); }, k, t), std::invalid_argument);
  CHECK_THROWS_AS(exp_memory_ratio([](double s) { return 1.0 + s; }, k, t), std::invalid_argument);
  CHECK_THROWS_AS(exp_memory_ratio([](double) { return 1.0; }, 0.0, t), std::invalid_argument);
}

TEST_CASE("ball radii") {
  CHECK_THAT(ball_radius_S(0.0, {2.0, 0.5, 1.0, 1.0}), WithinRel(1.0, 1e-15));
  CHECK_THAT(ball_radius_A(3.0, {2.0, 0.5, 1.0, 1.0}), WithinRel(1.0, 1e-15));
}

TEST_CASE("pointwise ratios") {
  const spectral::Grid g(16, 2.0 * std::numbers::pi);
  const double L = g.length();
  SECTION("zero state") {
    const auto r = pointwise_bound_ratios(g, spectral::zero_vector(g), spectral::zero_tensor(g), 0.0);
    CHECK(r.uhat == 0.0);
    CHECK(r.omegahat == 0.0);
    CHECK(r.tauhat == 0.0);
  }
  SECTION("single velocity mode") {
    // u = (0, a cos x): continuum transform a L^2 / 2 at xi = (+-1, 0); bound 1/|xi| + 1 = 2
    const double a = 0.3;
    auto u = spectral::zero_vector(g);
    u[1][g.spectral_offset(0, 1)] = a * L / 2.0;
    const auto r = pointwise_bound_ratios(g, u, spectral::zero_tensor(g), 0.0);
    CHECK_THAT(r.uhat, WithinRel(a * L * L / 4.0, 1e-14));
    CHECK_THAT(r.omegahat, WithinRel(a * L * L / 4.0, 1e-14));
  }
  SECTION("|T| <= ||tau||_L1 on random stresses") {
    verify::Rng rng(21);
    const spectral::Transform tr(g);
    for (int trial = 0; trial < 50; ++trial) {
      spectral::SymTensorField2 tau;
      for (auto& c : tau) c = verify::random_field(g, rng, 5, 1.0);
      const auto l1 = spectral::norms(tr, tau, spectral::kTensorWeights, {.l1 = true}).l1;
      CHECK(pointwise_bound_ratios(g, spectral::zero_vector(g), tau, *l1).tauhat <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("Ladyzhenskaya ratio") {
  const spectral::Grid g(32, 8.0);
  const spectral::Transform tr(g);
  SECTION("single sine mode") {
    // ||s||_4^2 / (||s||_2 ||grad s||_2) = sqrt(3/2) / (|xi| L) per component
    auto tau = spectral::zero_tensor(g);
    const auto i = g.spectral_offset(0, 2);
    tau[spectral::kXX][i] = {0.0, -g.length() / 2.0};
    const double xi = g.kx(2);
    CHECK_THAT(ladyzhenskaya_ratio(tr, tau), WithinRel(std::sqrt(1.5) / (xi * g.length()), 1e-12));
  }
  SECTION("scale invariance") {
    verify::Rng rng(4);
    spectral::SymTensorField2 tau;
    for (auto& c : tau) c = verify::random_field(g, rng, 6, 1.0);
    auto scaled = tau;
    for (auto& c : scaled) {
      for (auto& z : c) z *= 37.0;
    }
    CHECK_THAT(ladyzhenskaya_ratio(tr, scaled), WithinRel(ladyzhenskaya_ratio(tr, tau), 1e-12));
  }
  SECTION("zero and constant fields") {
    auto tau = spectral::zero_tensor(g);
    CHECK_THROWS_AS(ladyzhenskaya_ratio(tr, tau), std::invalid_argument);
    tau[0][0] = 1.0;
    CHECK_THROWS_AS(ladyzhenskaya_ratio(tr, tau), std::invalid_argument);
  }
  SECTION("stays below 1 on random smooth fields") {
    verify::Rng rng(1000);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      spectral::SymTensorField2 tau;
      const int band = 1 + trial % 8;
      for (auto& c : tau) c = verify::random_field(g, rng, band, verify::uniform(rng, 0.01, 10.0));
      worst = std::max(worst, ladyzhenskaya_ratio(tr, tau));
    }
    CHECK(worst <= 1.0);
  }
}

TEST_CASE("ball energy bounded by mass") {
  // ||rhohat||_inf <= ||rho||_L1 / L, so the ball energy is at most count * ||rho||_L1^2 / L^2
  const spectral::Grid g(32, 16.0);
  const spectral::Transform tr(g);
  verify::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = verify::random_field(g, rng, 6, 1.0);
    const double r = verify::uniform(rng, 0.3, 3.0);
    const double l1 = spectral::l1_norm(g, tr.inverse(rho));
    const auto count = static_cast<double>(spectral::ball_mode_count(g, r));
    CHECK(spectral::ball_energy(g, rho, r) <= count * l1 * l1 / (g.length() * g.length()) * (1.0 + 1e-12));
  }
}

TEST_CASE("heat equivalence gap") {
  const spectral::Grid g(16, 4.0);
  auto u = spectral::zero_vector(g);
  auto v = spectral::zero_vector(g);
  u[0][g.spectral_offset(1, 0)] = 0.5;
  CHECK(heat_equivalence_gap(g, u, 0.0, u, 0.0) == 0.0);
  // t = 0: ||u - v||^2 / log(e)^2
  CHECK_THAT(heat_equivalence_gap(g, u, 0.0, v, 0.0), WithinRel(spectral::l2_squared(g, u[0]), 1e-15));
  const double t = 3.0;
  const double scale = (1.0 + t) * (1.0 + t) / std::pow(std::log(t + std::numbers::e), 2);
  CHECK_THAT(heat_equivalence_gap(g, u, t, v, t), WithinRel(spectral::l2_squared(g, u[0]) * scale, 1e-14));
  CHECK_THROWS_AS(heat_equivalence_gap(g, u, 1.0, v, 1.5), std::logic_error);
}

TEST_CASE("D_alpha evidence") {
  const auto t = geometric_times(1.08, 2000.0);
  std::vector<double> v, f, f_slow;
  for (double s : t) {
    v.push_back(std::pow(1.0 + s, -0.5));        // ||v||^2 (1+t) = 1
    f.push_back(std::pow(1.0 + s, -1.5));        // (1+t)^3 ||f||^2 = 1
    f_slow.push_back(std::pow(1.0 + s, -1.0));  // (1+t)^3 ||f||^2 = 1+t
  }
  const auto ok = d_alpha_check(t, v, f, {9.0, 999.0});
  CHECK(ok.member());
  CHECK_THAT(ok.v_energy.back(), WithinRel(1.0, 1e-12));
  CHECK_FALSE(d_alpha_check(t, v, f_slow, {9.0, 999.0}).member());
}
