#include "oldroyd/spectral/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::spectral {

namespace {

// Fixed row-major reduction order keeps every norm deterministic.
template <typename Weight>
double spectral_sum(const Grid& g, const Spectrum& f, Weight&& weight) {
  if (f.size() != g.spectral_size()) throw std::invalid_argument("norm: size mismatch");
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const double w = weight(row, col);
      if (w == 0.0) continue;
      sum += g.column_weight(col) * w * std::norm(f[g.spectral_offset(row, col)]);
    }
  }
  return sum;
}

double derivative_k2(const Grid& g, int row, int col) {
  const double a = dx_wavenumber(g, col), b = dy_wavenumber(g, row);
  return a * a + b * b;
}

}  // namespace

double l2_squared(const Grid& g, const Spectrum& f) {
  return spectral_sum(g, f, [](int, int) { return 1.0; });
}

double gradient_l2_squared(const Grid& g, const Spectrum& f) {
  return spectral_sum(g, f, [&](int row, int col) { return derivative_k2(g, row, col); });
}

double sobolev_squared(const Grid& g, const Spectrum& f, int order) {
  return spectral_sum(g, f, [&](int row, int col) {
    return std::pow(1.0 + derivative_k2(g, row, col), order);
  });
}

double l1_norm(const Grid& g, std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += std::abs(v);
  return sum * g.cell_area();
}

double linf_norm(std::span<const double> samples) {
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

double l2_squared_physical(const Grid& g, std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  return sum * g.cell_area();
}

namespace {
bool in_ball(const Grid& g, int row, int col, double r) {
  return g.k2(row, col) <= r * r * (1.0 + 1e-12);
}
}  // namespace

double ball_energy(const Grid& g, const Spectrum& f, double r) {
  if (r < 0.0) throw std::invalid_argument("ball_energy: negative radius");
  return spectral_sum(g, f, [&](int row, int col) { return in_ball(g, row, col, r) ? 1.0 : 0.0; });
}

double ball_energy(const Grid& g, std::span<const Spectrum> components,
                   std::span<const double> weights, double r) {
  double sum = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const double w = weights.empty() ? 1.0 : weights[c];
    sum += w * ball_energy(g, components[c], r);
  }
  return sum;
}

std::size_t ball_mode_count(const Grid& g, double r) {
  std::size_t count = 0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      if (in_ball(g, row, col, r)) count += static_cast<std::size_t>(g.column_weight(col));
    }
  }
  return count;
}

NormValues norms(const Transform& transform, std::span<const Spectrum> components,
                 std::span<const double> weights, NormRequest which) {
  const Grid& g = transform.grid();
  auto weight = [&](std::size_t c) { return weights.empty() ? 1.0 : weights[c]; };
  NormValues out;

  if (which.l2 || which.h1 || which.h2) {
    double l2 = 0.0, h1 = 0.0, h2 = 0.0;
    for (std::size_t c = 0; c < components.size(); ++c) {
      if (which.l2) l2 += weight(c) * l2_squared(g, components[c]);
      if (which.h1) h1 += weight(c) * sobolev_squared(g, components[c], 1);
      if (which.h2) h2 += weight(c) * sobolev_squared(g, components[c], 2);
    }
    if (which.l2) out.l2 = std::sqrt(l2);
    if (which.h1) out.h1 = std::sqrt(h1);
    if (which.h2) out.h2 = std::sqrt(h2);
  }

  if (which.l1 || which.linf) {
    Samples magnitude2(g.physical_size(), 0.0);
    Samples buf(g.physical_size());
    for (std::size_t c = 0; c < components.size(); ++c) {
      transform.inverse(components[c], buf);
      const double w = weight(c);
      for (std::size_t i = 0; i < buf.size(); ++i) magnitude2[i] += w * buf[i] * buf[i];
    }
    for (auto& v : magnitude2) v = std::sqrt(v);
    if (which.l1) out.l1 = l1_norm(g, magnitude2);
    if (which.linf) out.linf = linf_norm(magnitude2);
  }
  return out;
}

}  // namespace oldroyd::spectral
