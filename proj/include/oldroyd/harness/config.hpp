#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "oldroyd/solver/initial_data.hpp"
#include "oldroyd/solver/model.hpp"

namespace oldroyd::harness {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TimeSettings {
  double horizon = 0.0;        ///< resolved; defaults to T_box
  double cadence_ratio = 1.08;  ///< records at (1+t) = ratio^j
  double cfl = 0.5;
  double dt_max = 0.5;
  std::size_t checkpoint_interval = 10;  ///< records between checkpoints, 0 = final only
};

/// Fully resolved run configuration. Output directory is a CLI flag only.
struct RunConfig {
  int n = 512;
  double length = 200.0;
  solver::OldroydParams params;
  solver::InitialDataSpec initial;
  double target_free_energy = 1.0;  ///< used when the amplitude is not given
  std::optional<std::uint64_t> seed;  ///< direction drawn from the seed when set
  TimeSettings time;
  solver::CompanionForcing companion_forcing = solver::CompanionForcing::kProjected;
  bool override_horizon = false;

  double box_horizon() const { return solver::trusted_horizon(length, params); }
};

/// Parse and validate. Missing keys take defaults (an empty object is the
/// reference configuration); unknown keys and violated constraints throw
/// ConfigError naming the offending key or invariant. `override_horizon`
/// from the command line is OR-ed into the file setting.
RunConfig parse_config(const nlohmann::json& doc, bool override_horizon = false);
RunConfig load_config(const std::filesystem::path& path, bool override_horizon = false);

/// Canonical dump with every default resolved.
nlohmann::json to_json(const RunConfig& config);
std::string canonical_text(const RunConfig& config);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const RunConfig& config);
std::string fnv1a_hex(const std::string& text);

}  // namespace oldroyd::harness
