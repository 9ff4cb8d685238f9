#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oldroyd/analysis/diagnostics.hpp"

namespace oldroyd::harness {

inline constexpr std::array<std::string_view, 22> kCsvColumns{
    "t",           "u_l2",           "grad_u_l2",    "omega_l2",       "grad_omega_l2",
    "tau_l1",      "tau_l2",         "grad_tau_l2",  "rho_l2",         "rho_linf",
    "grad_rho_l2", "trace_tau_int",  "free_energy",  "dissipation_cum", "ball_omega_S",
    "ball_rho_A",  "sigma_min_eig",  "ratio_uhat",   "ratio_omegahat", "ratio_tauhat",
    "heat_gap",    "lady_ratio"};

inline constexpr std::string_view kUndefined = "undefined";

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form.
std::string format_number(double value);

/// "# config: ...", "# config_hash=...", "# units: ..." and the header row.
void write_csv_preamble(std::ostream& out, const std::string& config_text,
                        const std::string& hash);
void write_csv_row(std::ostream& out, const analysis::DiagnosticsRecord& r);

struct DiagnosticsTable {
  std::string config_text;
  std::string config_hash;
  /// rows[i][c] for column kCsvColumns[c]; nullopt marks "undefined".
  std::vector<std::array<std::optional<double>, kCsvColumns.size()>> rows;

  /// Column by name. Undefined cells become NaN.
  std::vector<double> column(std::string_view name) const;
  /// Throws CsvError for an unknown name.
  std::size_t index_of(std::string_view name) const;
};

/// Strict reader: the header must match kCsvColumns exactly, every cell must
/// parse as a finite number or the undefined marker (t must be defined and
/// strictly increasing). Violations throw CsvError naming row and column.
DiagnosticsTable read_csv(std::istream& in);
DiagnosticsTable read_csv(const std::filesystem::path& path);

/// Companion series for the D_1 check: t, v_l2, forcing_l2.
void write_companion_preamble(std::ostream& out, const std::string& hash);
void write_companion_row(std::ostream& out, const analysis::DiagnosticsRecord& r);

struct CompanionTable {
  std::string config_hash;
  std::vector<double> t, v_l2, forcing_l2;
};
CompanionTable read_companion(const std::filesystem::path& path);

}  // namespace oldroyd::harness
