#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "oldroyd/analysis/decay.hpp"
#include "oldroyd/harness/config.hpp"
#include "oldroyd/harness/simulation.hpp"

namespace oldroyd::harness {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< bad input, or a failed verdict
inline constexpr int kExitAbort = 2;    ///< solver abort, partial output kept

struct SimulateOptions {
  std::optional<std::filesystem::path> config;  ///< none: reference defaults
  std::filesystem::path output;
  bool override_horizon = false;
  std::optional<std::filesystem::path> resume;
};

/// Writes into the output directory: config.json (canonical dump),
/// admissibility.json, diagnostics.csv, companion.csv, run.json and
/// checkpoints/ckpt_NNNN.bin. On resume the CSVs keep the rows recorded
/// before the checkpoint and continue from there.
int cmd_simulate(const SimulateOptions& options, std::ostream& log);

/// Library form used by cmd_simulate and the tests.
RunOutcome simulate(const RunConfig& config, const std::filesystem::path& output,
                    const std::optional<std::filesystem::path>& resume, std::ostream& log);

struct AnalyzeOptions {
  std::filesystem::path input;
  std::optional<analysis::FitWindow> window;
  std::optional<std::filesystem::path> config;  ///< refuse CSVs with another hash
  std::optional<std::filesystem::path> output;  ///< verdict path, default next to the CSV
};

/// Prints the verdict JSON and writes it to verdict.json beside the input.
/// Exit 0 when every criterion passes, 1 otherwise or on bad input.
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

/// "t1:t2" -> window; throws std::invalid_argument.
analysis::FitWindow parse_window(const std::string& text);

}  // namespace oldroyd::harness
