#include "oldroyd/spectral/operators.hpp"

#include <stdexcept>
#include <string>

namespace oldroyd::spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

template <typename Multiplier>
Spectrum apply(const Grid& g, const Spectrum& f, Multiplier&& m) {
  Spectrum out(f.size());
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < g.cols(); ++col) {
      const auto i = g.spectral_offset(row, col);
      out[i] = m(row, col) * f[i];
    }
  }
  return out;
}

void check_size(const Grid& g, const Spectrum& f) {
  if (f.size() != g.spectral_size()) {
    throw std::invalid_argument("spectral field size does not match grid");
  }
}

}  // namespace

Spectrum partial_x(const Grid& g, const Spectrum& f) {
  check_size(g, f);
  return apply(g, f, [&](int, int col) { return kI * dx_wavenumber(g, col); });
}

Spectrum partial_y(const Grid& g, const Spectrum& f) {
  check_size(g, f);
  return apply(g, f, [&](int row, int) { return kI * dy_wavenumber(g, row); });
}

VectorField2 gradient(const Grid& g, const Spectrum& f) { return {partial_x(g, f), partial_y(g, f)}; }

VectorField2 perp_gradient(const Grid& g, const Spectrum& psi) {
  auto dy = partial_y(g, psi);
  for (auto& z : dy) z = -z;
  return {std::move(dy), partial_x(g, psi)};
}

Spectrum divergence(const Grid& g, const VectorField2& v) {
  auto out = partial_x(g, v[0]);
  const auto dy = partial_y(g, v[1]);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += dy[i];
  return out;
}

VectorField2 divergence(const Grid& g, const SymTensorField2& tau) {
  return {divergence(g, VectorField2{tau[kXX], tau[kXY]}),
          divergence(g, VectorField2{tau[kXY], tau[kYY]})};
}

Spectrum laplacian(const Grid& g, const Spectrum& f) {
  check_size(g, f);
  return apply(g, f, [&](int row, int col) { return Complex(-g.k2(row, col), 0.0); });
}

Spectrum curl(const Grid& g, const VectorField2& u) {
  auto out = partial_x(g, u[1]);
  const auto d2u1 = partial_y(g, u[0]);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= d2u1[i];
  return out;
}

std::string_view to_string(DiffOp op) {
  switch (op) {
    case DiffOp::kGradient: return "gradient";
    case DiffOp::kDivergence: return "divergence";
    case DiffOp::kPerpGradient: return "perp-gradient";
    case DiffOp::kLaplacian: return "laplacian";
    case DiffOp::kCurl: return "curl2d";
  }
  return "unknown";
}

std::vector<Spectrum> differentiate(const Grid& g, std::span<const Spectrum> c, DiffOp op) {
  auto mismatch = [&] {
    return std::invalid_argument("differentiate: " + std::string(to_string(op)) +
                                 " cannot act on a field with " + std::to_string(c.size()) +
                                 " components");
  };
  switch (op) {
    case DiffOp::kGradient: {
      if (c.size() != 1) throw mismatch();
      auto v = gradient(g, c[0]);
      return {std::move(v[0]), std::move(v[1])};
    }
    case DiffOp::kPerpGradient: {
      if (c.size() != 1) throw mismatch();
      auto v = perp_gradient(g, c[0]);
      return {std::move(v[0]), std::move(v[1])};
    }
    case DiffOp::kDivergence: {
      if (c.size() == 2) return {divergence(g, VectorField2{c[0], c[1]})};
      if (c.size() == 3) {
        auto v = divergence(g, SymTensorField2{c[0], c[1], c[2]});
        return {std::move(v[0]), std::move(v[1])};
      }
      throw mismatch();
    }
    case DiffOp::kLaplacian: {
      if (c.empty()) throw mismatch();
      std::vector<Spectrum> out;
      out.reserve(c.size());
      for (const auto& f : c) out.push_back(laplacian(g, f));
      return out;
    }
    case DiffOp::kCurl: {
      if (c.size() != 2) throw mismatch();
      return {curl(g, VectorField2{c[0], c[1]})};
    }
  }
  throw mismatch();
}

void leray_project_inplace(const Grid& g, VectorField2& v) {
  check_size(g, v[0]);
  check_size(g, v[1]);
  for (int row = 0; row < g.n(); ++row) {
    const double ky = dy_wavenumber(g, row);
    for (int col = 0; col < g.cols(); ++col) {
      const double kx = dx_wavenumber(g, col);
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const auto i = g.spectral_offset(row, col);
      const Complex dot = (kx * v[0][i] + ky * v[1][i]) / k2;
      v[0][i] -= kx * dot;
      v[1][i] -= ky * dot;
    }
  }
}

VectorField2 leray_project(const Grid& g, const VectorField2& v) {
  auto out = v;
  leray_project_inplace(g, out);
  return out;
}

void dealias_inplace(const Grid& g, Spectrum& f) {
  check_size(g, f);
  const auto& mask = g.dealias_mask();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mask[i]) f[i] = Complex{};
  }
}

Spectrum dealias(const Grid& g, Spectrum f) {
  dealias_inplace(g, f);
  return f;
}

void enforce_conjugate_symmetry(const Grid& g, Spectrum& f) {
  check_size(g, f);
  const int n = g.n();
  for (int col : {0, n / 2}) {
    for (int row = 0; row <= n / 2; ++row) {
      const int mirror = (n - row) % n;
      auto& a = f[g.spectral_offset(row, col)];
      if (mirror == row) {
        a = Complex(a.real(), 0.0);
        continue;
      }
      auto& b = f[g.spectral_offset(mirror, col)];
      const Complex avg = 0.5 * (a + std::conj(b));
      a = avg;
      b = std::conj(avg);
    }
  }
}

}  // namespace oldroyd::spectral
