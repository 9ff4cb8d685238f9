#include "verify/galerkin.hpp"

#include <complex>
#include <vector>

namespace oldroyd::verify {

namespace {

using C = std::complex<double>;

// Full-plane coefficients on the retained square |j1|, |j2| <= M.
class Modes {
 public:
  Modes(const spectral::Grid& g) : g_(g), m_(g.max_retained_index()), w_(2 * m_ + 1) {}

  std::vector<C> expand(const spectral::Spectrum& half) const {
    std::vector<C> full(w_ * w_);
    for (int j2 = -m_; j2 <= m_; ++j2) {
      for (int j1 = -m_; j1 <= m_; ++j1) {
        const int row = j1 >= 0 ? j2 : -j2;
        const int col = j1 >= 0 ? j1 : -j1;
        const C c = half[g_.spectral_offset(row < 0 ? row + g_.n() : row, col)];
        full[at(j1, j2)] = j1 >= 0 ? c : std::conj(c);
      }
    }
    return full;
  }

  spectral::Spectrum compress(const std::vector<C>& full) const {
    spectral::Spectrum half(g_.spectral_size(), C{});
    for (int j2 = -m_; j2 <= m_; ++j2) {
      for (int j1 = 0; j1 <= m_; ++j1) {
        half[g_.spectral_offset(j2 < 0 ? j2 + g_.n() : j2, j1)] = full[at(j1, j2)];
      }
    }
    return half;
  }

  // (1/L) sum_{p+q=k} f(p) g(q), kept on the retained square
  std::vector<C> product(const std::vector<C>& f, const std::vector<C>& h) const {
    std::vector<C> out(w_ * w_);
    for (int k2 = -m_; k2 <= m_; ++k2) {
      for (int k1 = -m_; k1 <= m_; ++k1) {
        C s{};
        for (int p2 = -m_; p2 <= m_; ++p2) {
          const int q2 = k2 - p2;
          if (q2 < -m_ || q2 > m_) continue;
          for (int p1 = -m_; p1 <= m_; ++p1) {
            const int q1 = k1 - p1;
            if (q1 < -m_ || q1 > m_) continue;
            s += f[at(p1, p2)] * h[at(q1, q2)];
          }
        }
        out[at(k1, k2)] = s / g_.length();
      }
    }
    return out;
  }

  std::vector<C> derivative(const std::vector<C>& f, int axis) const {
    std::vector<C> out(f.size());
    for (int j2 = -m_; j2 <= m_; ++j2) {
      for (int j1 = -m_; j1 <= m_; ++j1) {
        const double xi = g_.fundamental() * (axis == 0 ? j1 : j2);
        out[at(j1, j2)] = C(0.0, xi) * f[at(j1, j2)];
      }
    }
    return out;
  }

  void project(std::vector<C>& a, std::vector<C>& b) const {
    for (int j2 = -m_; j2 <= m_; ++j2) {
      for (int j1 = -m_; j1 <= m_; ++j1) {
        if (j1 == 0 && j2 == 0) continue;
        const double x1 = j1, x2 = j2, k2 = x1 * x1 + x2 * x2;
        const std::size_t i = at(j1, j2);
        const C dot = (x1 * a[i] + x2 * b[i]) / k2;
        a[i] -= x1 * dot;
        b[i] -= x2 * dot;
      }
    }
  }

 private:
  std::size_t at(int j1, int j2) const {
    return static_cast<std::size_t>((j2 + m_) * w_ + (j1 + m_));
  }

  const spectral::Grid& g_;
  int m_;
  int w_;
};

std::vector<C> add(std::vector<C> a, const std::vector<C>& b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

}  // namespace

ExplicitTerms galerkin_explicit(const spectral::Grid& grid, const solver::OldroydState& state,
                                const solver::OldroydParams& params) {
  const Modes m(grid);
  const std::array<std::vector<C>, 2> u{m.expand(state.u[0]), m.expand(state.u[1])};
  // tau as a full 2x2 array
  const auto txx = m.expand(state.tau[0]);
  const auto txy = m.expand(state.tau[1]);
  const auto tyy = m.expand(state.tau[2]);
  const std::array<std::array<const std::vector<C>*, 2>, 2> tau{{{&txx, &txy}, {&txy, &tyy}}};
  const auto rho = m.expand(state.rho);

  // G[i][j] = d_j u_i
  std::array<std::array<std::vector<C>, 2>, 2> G;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) G[i][j] = m.derivative(u[i], j);
  }
  auto advect = [&](const std::vector<C>& f) {
    return add(m.product(u[0], m.derivative(f, 0)), m.product(u[1], m.derivative(f, 1)));
  };

  ExplicitTerms out;
  // momentum
  std::array<std::vector<C>, 2> du;
  for (int i = 0; i < 2; ++i) {
    const auto div_tau = add(m.derivative(*tau[i][0], 0), m.derivative(*tau[i][1], 1));
    du[i] = advect(u[i]);
    for (auto& c : du[i]) c = -c;
    du[i] = add(du[i], div_tau, params.mu);
  }
  m.project(du[0], du[1]);
  out.u = {m.compress(du[0]), m.compress(du[1])};

  // stress, components xx, xy, yy
  const std::array<std::pair<int, int>, 3> comps{{{0, 0}, {0, 1}, {1, 1}}};
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [i, j] = comps[c];
    std::vector<C> s = advect(*tau[i][j]);
    for (auto& x : s) x = -x;
    for (int k = 0; k < 2; ++k) {
      s = add(s, m.product(G[i][k], *tau[k][j]));  // (G tau)_ij
      s = add(s, m.product(*tau[i][k], G[j][k]));  // (tau G^T)_ij
    }
    s = add(s, m.product(rho, add(G[i][j], G[j][i])));
    out.tau[c] = m.compress(s);
  }

  auto drho = advect(rho);
  for (auto& x : drho) x = -x;
  out.rho = m.compress(drho);
  return out;
}

}  // namespace oldroyd::verify
