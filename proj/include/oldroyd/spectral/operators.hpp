#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::spectral {

// Spectral differential operators. Inputs and outputs are half-plane
// coefficients. First-derivative multipliers i*xi are zeroed on the Nyquist
// lines, which keeps them antisymmetric under xi -> -xi and the results real.

/// Derivative wavenumbers with the Nyquist entries zeroed.
inline double dx_wavenumber(const Grid& g, int col) { return col == g.n() / 2 ? 0.0 : g.kx(col); }
inline double dy_wavenumber(const Grid& g, int row) { return row == g.n() / 2 ? 0.0 : g.ky(row); }

Spectrum partial_x(const Grid& grid, const Spectrum& f);
Spectrum partial_y(const Grid& grid, const Spectrum& f);

VectorField2 gradient(const Grid& grid, const Spectrum& f);
/// (-d2 psi, d1 psi)
VectorField2 perp_gradient(const Grid& grid, const Spectrum& psi);
Spectrum divergence(const Grid& grid, const VectorField2& v);
/// Row-wise divergence (d_j tau_ij).
VectorField2 divergence(const Grid& grid, const SymTensorField2& tau);
Spectrum laplacian(const Grid& grid, const Spectrum& f);
/// d1 u2 - d2 u1
Spectrum curl(const Grid& grid, const VectorField2& u);

enum class DiffOp { kGradient, kDivergence, kPerpGradient, kLaplacian, kCurl };

std::string_view to_string(DiffOp op);

/// Arity-checked dispatch over a list of components. Gradient and
/// perp-gradient take 1 component, curl takes 2, divergence takes 2 (vector)
/// or 3 (symmetric tensor), Laplacian acts componentwise on any count.
/// Throws std::invalid_argument on an arity mismatch.
std::vector<Spectrum> differentiate(const Grid& grid, std::span<const Spectrum> components,
                                    DiffOp op);

/// Leray projector I - xi (x) xi / |xi|^2, applied per mode with the
/// Nyquist-zeroed derivative wavenumbers so that divergence(project(v)) = 0
/// holds exactly in this discretization. The zero mode passes through.
VectorField2 leray_project(const Grid& grid, const VectorField2& v);
void leray_project_inplace(const Grid& grid, VectorField2& v);

/// Zero every mode outside the 2/3-rule mask.
void dealias_inplace(const Grid& grid, Spectrum& f);
Spectrum dealias(const Grid& grid, Spectrum f);

/// Make the col = 0 and col = n/2 lines Hermitian (f(-j2) = conj f(j2)) by
/// averaging, which is the orthogonal projection onto real fields.
void enforce_conjugate_symmetry(const Grid& grid, Spectrum& f);

}  // namespace oldroyd::spectral
