#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oldroyd/analysis/diagnostics.hpp"
#include "oldroyd/solver/integrator.hpp"

namespace oldroyd::harness {

struct RunSettings {
  double horizon = 1.0;
  double cadence_ratio = 1.08;
  double cfl = 0.5;
  double dt_max = 0.5;
  std::size_t checkpoint_interval = 0;
};

/// t_j = ratio^j - 1 for j = 0, 1, ... while below the horizon, then the
/// horizon itself.
std::vector<double> record_times(double horizon, double ratio);

/// Everything needed to continue a run exactly.
struct Snapshot {
  solver::OldroydState state;
  solver::HeatCompanionState companion;
  double dissipation_cum = 0.0;  ///< nu1 integral ||grad u||^2, trapezoid per step
  std::size_t next_record = 0;
  std::size_t steps = 0;
};

Snapshot initial_snapshot(const solver::OldroydState& initial);

struct RunObserver {
  std::function<void(const analysis::DiagnosticsRecord&)> on_record;
  /// Called after the record with index next_record - 1 when it falls on
  /// the checkpoint interval, and after the final record.
  std::function<void(const Snapshot&)> on_checkpoint;
};

struct RunOutcome {
  bool completed = false;
  std::string abort_reason;
  double t_end = 0.0;
  std::size_t steps = 0;
  std::size_t records = 0;
};

/// Abort threshold of the positivity monitor: min eigenvalue of sigma below
/// -kPositivityFraction * max eigenvalue.
inline constexpr double kPositivityFraction = 1e-12;

/// Step the Oldroyd state and its heat companion in lockstep from `start`
/// to the horizon, emitting a record at every record time. A SolverAbort is
/// caught and reported in the outcome; records emitted before it stand.
RunOutcome run_simulation(solver::OldroydSolver& solver, Snapshot start,
                          const RunSettings& settings, const RunObserver& observer);

/// Portable container: 8-byte magic "OBCKPT01", u64 little-endian header
/// length, a JSON header (grid, params, clocks, counters, config hash and
/// array list), then the arrays as little-endian complex<double> in
/// half-plane layout.
void write_checkpoint(const std::filesystem::path& path, const spectral::Grid& grid,
                      const solver::OldroydParams& params, const Snapshot& snap,
                      const std::string& config_hash);

struct LoadedCheckpoint {
  Snapshot snapshot;
  std::string config_hash;
  int n = 0;
  double length = 0.0;
};

/// Throws std::runtime_error on a malformed file.
LoadedCheckpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace oldroyd::harness
