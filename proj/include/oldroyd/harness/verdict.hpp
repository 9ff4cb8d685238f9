#pragma once

#include <optional>

#include <json.hpp>

#include "oldroyd/analysis/decay.hpp"
#include "oldroyd/harness/csv.hpp"

namespace oldroyd::harness {

struct VerdictOptions {
  std::optional<analysis::FitWindow> window;  ///< default: final decade, t >= 5/k
  double relaxation_rate = 1.0;               ///< k, for the transient skip
  const CompanionTable* companion = nullptr;  ///< enables the D_1 evidence
};

inline constexpr double kTauhatSlack = 1e-10;
inline constexpr double kPositivityFloor = -1e-8;
inline constexpr double kLedgerTolerance = 1e-6;

/// Fits, boundedness checks and the free-energy ledger for one trajectory.
/// The "criteria" object holds one boolean per run-level acceptance check.
nlohmann::json build_verdict(const DiagnosticsTable& table, const VerdictOptions& options);

}  // namespace oldroyd::harness
