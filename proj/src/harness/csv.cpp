#include "oldroyd/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oldroyd::harness {

std::string format_number(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv_preamble(std::ostream& out, const std::string& config_text,
                        const std::string& hash) {
  out << "# config: " << config_text << '\n';
  out << "# config_hash=" << hash << '\n';
  out << "# units: box length L and time t in model units; *_l2 are L2 norms (not squared);"
         " ball_* are squared L2 energies; tensor magnitudes Frobenius\n";
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    out << (c ? "," : "") << kCsvColumns[c];
  }
  out << '\n';
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string(kUndefined);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_cell(const std::string& text, std::size_t row, std::string_view col) {
  auto fail = [&](const std::string& why) {
    return CsvError("row " + std::to_string(row) + ", column '" + std::string(col) + "': " + why +
                    " ('" + text + "')");
  };
  if (text == kUndefined) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) throw fail("not a number");
  if (!std::isfinite(v)) throw fail("non-finite value");
  return v;
}

}  // namespace

void write_csv_row(std::ostream& out, const analysis::DiagnosticsRecord& r) {
  const std::array<std::optional<double>, kCsvColumns.size()> cells{
      r.t,          r.u_l2,          r.grad_u_l2,      r.omega_l2,        r.grad_omega_l2,
      r.tau_l1,     r.tau_l2,        r.grad_tau_l2,    r.rho_l2,          r.rho_linf,
      r.grad_rho_l2, r.trace_tau_int, r.free_energy,    r.dissipation_cum, r.ball_omega_S,
      r.ball_rho_A, r.sigma_min_eig, r.ratio_uhat,     r.ratio_omegahat,  r.ratio_tauhat,
      r.heat_gap,   r.lady_ratio};
  for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cell(cells[c]);
  out << '\n';
}

std::size_t DiagnosticsTable::index_of(std::string_view name) const {
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (kCsvColumns[c] == name) return c;
  }
  throw CsvError("no column named '" + std::string(name) + "'");
}

std::vector<double> DiagnosticsTable::column(std::string_view name) const {
  const std::size_t c = index_of(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c] ? *r[c] : std::nan(""));
  return out;
}

DiagnosticsTable read_csv(std::istream& in) {
  DiagnosticsTable table;
  std::string line;
  bool header = false;
  std::size_t row = 0;
  double last_t = 0.0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# config: ", 0) == 0) {
      table.config_text = line.substr(10);
      continue;
    }
    if (line.rfind("# config_hash=", 0) == 0) {
      table.config_hash = line.substr(14);
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = split(line);
    if (!header) {
      if (fields.size() != kCsvColumns.size()) {
        throw CsvError("schema mismatch: header has " + std::to_string(fields.size()) +
                       " columns, expected " + std::to_string(kCsvColumns.size()));
      }
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] != kCsvColumns[c]) {
          throw CsvError("schema mismatch: header column " + std::to_string(c + 1) + " is '" +
                         fields[c] + "', expected '" + std::string(kCsvColumns[c]) + "'");
        }
      }
      header = true;
      continue;
    }
    ++row;
    if (fields.size() != kCsvColumns.size()) {
      throw CsvError("row " + std::to_string(row) + ": " + std::to_string(fields.size()) +
                     " cells, expected " + std::to_string(kCsvColumns.size()));
    }
    std::array<std::optional<double>, kCsvColumns.size()> cells;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      cells[c] = parse_cell(fields[c], row, kCsvColumns[c]);
    }
    if (!cells[0]) throw CsvError("row " + std::to_string(row) + ", column 't': undefined");
    if (row > 1 && !(*cells[0] > last_t)) {
      throw CsvError("row " + std::to_string(row) + ", column 't': not strictly increasing");
    }
    last_t = *cells[0];
    table.rows.push_back(cells);
  }
  if (!header) throw CsvError("schema mismatch: no header row");
  return table;
}

DiagnosticsTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());
  return read_csv(in);
}

void write_companion_preamble(std::ostream& out, const std::string& hash) {
  out << "# config_hash=" << hash << '\n';
  out << "t,v_l2,forcing_l2\n";
}

void write_companion_row(std::ostream& out, const analysis::DiagnosticsRecord& r) {
  out << format_number(r.t) << ',' << format_number(r.v_l2) << ',' << format_number(r.forcing_l2)
      << '\n';
}

CompanionTable read_companion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());
  CompanionTable table;
  std::string line;
  bool header = false;
  std::size_t row = 0;
  static constexpr std::array<std::string_view, 3> names{"t", "v_l2", "forcing_l2"};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# config_hash=", 0) == 0) {
      table.config_hash = line.substr(14);
      continue;
    }
    if (line[0] == '#') continue;
    const auto fields = split(line);
    if (!header) {
      if (line != "t,v_l2,forcing_l2") throw CsvError("companion schema mismatch");
      header = true;
      continue;
    }
    ++row;
    if (fields.size() != 3) throw CsvError("companion row " + std::to_string(row) + ": bad width");
    std::array<double, 3> v{};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto x = parse_cell(fields[c], row, names[c]);
      if (!x) throw CsvError("companion row " + std::to_string(row) + ": undefined cell");
      v[c] = *x;
    }
    table.t.push_back(v[0]);
    table.v_l2.push_back(v[1]);
    table.forcing_l2.push_back(v[2]);
  }
  return table;
}

}  // namespace oldroyd::harness
