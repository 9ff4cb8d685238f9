#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oldroyd/spectral/grid.hpp"
#include "oldroyd/spectral/transform.hpp"

using namespace oldroyd::spectral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, -2.0), std::invalid_argument);
  CHECK_NOTHROW(make_grid(8, 2.0 * std::numbers::pi));
}

TEST_CASE("wavenumbers on n = 8, L = 2 pi") {
  const auto g = make_grid(8, 2.0 * std::numbers::pi);
  CHECK_THAT(g.wavenumber(3), WithinRel(3.0, 1e-15));
  // mask keeps |j| <= 2 only
  CHECK(g.max_retained_index() == 2);
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const bool expect = std::abs(g.row_index(row)) <= 2 && col <= 2;
      CHECK(g.retained(row, col) == expect);
    }
  }
  CHECK(g.retained(0, 0));
}

TEST_CASE("wavenumber table antisymmetric away from Nyquist") {
  const auto g = make_grid(32, 3.7);
  for (int row = 1; row < 32; ++row) {
    if (row == 16) continue;
    CHECK(g.ky(row) == -g.ky(32 - row));
  }
}

TEST_CASE("max retained wavenumber for n = 256, L = 128") {
  const auto g = make_grid(256, 128.0);
  double kmax = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      if (g.retained(row, col)) kmax = std::max({kmax, std::abs(g.kx(col)), std::abs(g.ky(row))});
    }
  }
  CHECK_THAT(kmax, WithinRel(2.0 * std::numbers::pi * 85.0 / 128.0, 1e-15));
}

TEST_CASE("dealias mask size") {
  for (int n : {8, 16, 32, 64, 128, 256, 512}) {
    const auto g = make_grid(n, 1.0);
    const std::size_t m = 2 * static_cast<std::size_t>(std::ceil(n / 3.0)) - 1;
    CHECK(g.retained_mode_count() == m * m);
  }
  // strictly below (2n/3)^2 whenever n is not 1 mod 3
  for (int n : {8, 12, 32, 128, 512}) {
    const auto g = make_grid(n, 1.0);
    CHECK(static_cast<double>(g.retained_mode_count()) < std::pow(2.0 * n / 3.0, 2));
  }
}

TEST_CASE("constant field maps to c L at the zero mode") {
  const auto g = make_grid(16, 5.0);
  const Transform tr(g);
  const Samples f(g.physical_size(), 1.75);
  const auto fh = tr.forward(f);
  CHECK_THAT(fh[0].real(), WithinRel(1.75 * 5.0, 1e-14));
  for (std::size_t i = 1; i < fh.size(); ++i) CHECK(std::abs(fh[i]) <= 1e-13);
}

TEST_CASE("sine has exactly the two modes j = (+-1, 0)") {
  const auto g = make_grid(16, 3.0);
  const Transform tr(g);
  Samples f(g.physical_size());
  for (int iy = 0; iy < 16; ++iy) {
    for (int ix = 0; ix < 16; ++ix) {
      f[iy * 16 + ix] = std::sin(2.0 * std::numbers::pi * ix * g.spacing() / 3.0);
    }
  }
  const auto fh = tr.forward(f);
  // half-plane storage: j = (1, 0) at col 1, row 0; j = (-1, 0) is its conjugate
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const double mag = std::abs(fh[g.spectral_offset(row, col)]);
      if (row == 0 && col == 1) {
        CHECK_THAT(mag, WithinRel(3.0 / 2.0, 1e-13));
      } else {
        CHECK(mag <= 1e-13);
      }
    }
  }
}

TEST_CASE("random round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {8, 24, 64}) {
    const auto g = make_grid(n, 9.0);
    const Transform tr(g);
    Samples f(g.physical_size());
    for (auto& x : f) x = u(rng);
    const auto back = tr.inverse(tr.forward(f));
    double err = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      err = std::max(err, std::abs(back[i] - f[i]));
      mx = std::max(mx, std::abs(f[i]));
    }
    CHECK(err <= 1e-12 * mx);
  }
}

TEST_CASE("transform rejects non-finite samples") {
  const auto g = make_grid(8, 1.0);
  const Transform tr(g);
  Samples f(g.physical_size(), 0.0);
  f[3] = std::nan("");
  CHECK_THROWS_AS(tr.forward(f), std::domain_error);
  f[3] = INFINITY;
  CHECK_THROWS_AS(tr.forward(f), std::domain_error);
}
