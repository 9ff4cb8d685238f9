#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "oldroyd/spectral/fields.hpp"
#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::verify {

enum class Level { kQuick, kFull };

/// Deliberately broken components, for checking that the suites notice.
enum class Fault { kNone, kProjectorNormalization };

struct SuiteOptions {
  Level level = Level::kQuick;
  Fault fault = Fault::kNone;
  unsigned long long seed = 20240917ULL;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using Projector =
    std::function<spectral::VectorField2(const spectral::Grid&, const spectral::VectorField2&)>;

/// Leray projector with the xi xi^T / |xi|^2 term halved.
spectral::VectorField2 faulty_projector(const spectral::Grid& grid, const spectral::VectorField2& v);

// Individual properties; each returns one named result.
PropertyResult spectral_derivative_exactness(unsigned long long seed);
PropertyResult plancherel(unsigned long long seed);
PropertyResult leray_idempotence(unsigned long long seed, const Projector& project);
PropertyResult leray_divergence_free(unsigned long long seed, const Projector& project);
PropertyResult dealias_mask_count();
PropertyResult convolution_oracle(unsigned long long seed, int n);
PropertyResult wick_vs_quadrature(unsigned long long seed, int samples);
PropertyResult free_energy_vs_quadrature(unsigned long long seed, int closures);
PropertyResult fit_recovery(unsigned long long seed, int series);
PropertyResult exp_memory_convergence();
PropertyResult step_self_convergence(unsigned long long seed, int n);
PropertyResult heat_companion_semigroup(unsigned long long seed);
PropertyResult tauhat_l1_bound(unsigned long long seed, int samples);
PropertyResult deterministic_restart();

std::vector<PropertyResult> run_suites(const SuiteOptions& options);

/// Prints one line per property and returns 0 iff all passed.
int cmd_verify(const SuiteOptions& options, std::ostream& out);

}  // namespace oldroyd::verify
