#include "oldroyd/harness/commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oldroyd/closure/admissibility.hpp"
#include "oldroyd/harness/csv.hpp"
#include "oldroyd/harness/verdict.hpp"
#include "oldroyd/solver/initial_data.hpp"

namespace oldroyd::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Keep the preamble and the first `rows` data lines of a CSV we wrote.
std::string truncated_rows(const fs::path& path, std::size_t rows, const std::string& hash) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream kept;
  std::string line;
  bool header = false, hash_ok = false;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      if (line == "# config_hash=" + hash) hash_ok = true;
      kept << line << '\n';
      continue;
    }
    if (!header) {
      header = true;
      kept << line << '\n';
      continue;
    }
    if (seen++ >= rows) break;
    kept << line << '\n';
  }
  if (!hash_ok || seen < rows) return {};
  return kept.str();
}

std::string checkpoint_name(std::size_t record) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ckpt_%04zu.bin", record);
  return buf;
}

}  // namespace

RunOutcome simulate(const RunConfig& config, const fs::path& output,
                    const std::optional<fs::path>& resume, std::ostream& log) {
  fs::create_directories(output / "checkpoints");
  const std::string text = canonical_text(config);
  const std::string hash = fnv1a_hex(text);
  write_text(output / "config.json", to_json(config).dump(2) + "\n");

  const spectral::Grid grid(config.n, config.length);
  solver::OldroydSolver solver(grid, config.params, config.companion_forcing);

  Snapshot start;
  std::string csv_head, companion_head;
  if (resume) {
    auto ck = read_checkpoint(*resume);
    if (ck.config_hash != hash) {
      throw ConfigError("checkpoint config hash " + ck.config_hash + " does not match " + hash);
    }
    if (ck.n != config.n || ck.length != config.length) {
      throw ConfigError("checkpoint grid does not match the config");
    }
    start = std::move(ck.snapshot);
    csv_head = truncated_rows(output / "diagnostics.csv", start.next_record, hash);
    companion_head = truncated_rows(output / "companion.csv", start.next_record, hash);
    log << "resuming at t = " << start.state.t << " (record " << start.next_record << ")\n";
  } else {
    const auto initial = solver::build_initial_state(config.initial, solver.transform(),
                                                     config.params);
    const auto report =
        closure::check_admissibility(solver.transform(), initial, config.initial.center);
    json adm = report.to_json();
    adm["config_hash"] = hash;
    write_text(output / "admissibility.json", adm.dump(2) + "\n");
    if (!report.passed()) log << "warning: initial data fails an admissibility check\n";
    start = initial_snapshot(initial);
  }

  std::ofstream csv(output / "diagnostics.csv", std::ios::trunc);
  std::ofstream comp(output / "companion.csv", std::ios::trunc);
  if (!csv || !comp) throw std::runtime_error("cannot write diagnostics into " + output.string());
  if (csv_head.empty()) {
    write_csv_preamble(csv, text, hash);
  } else {
    csv << csv_head;
  }
  if (companion_head.empty()) {
    write_companion_preamble(comp, hash);
  } else {
    comp << companion_head;
  }
  csv.flush();
  comp.flush();

  RunSettings settings{config.time.horizon, config.time.cadence_ratio, config.time.cfl,
                       config.time.dt_max, config.time.checkpoint_interval};
  RunObserver observer;
  observer.on_record = [&](const analysis::DiagnosticsRecord& r) {
    write_csv_row(csv, r);
    write_companion_row(comp, r);
    csv.flush();
    comp.flush();
  };
  observer.on_checkpoint = [&](const Snapshot& s) {
    write_checkpoint(output / "checkpoints" / checkpoint_name(s.next_record - 1), grid,
                     config.params, s, hash);
  };
  const auto outcome = run_simulation(solver, std::move(start), settings, observer);

  json run{{"completed", outcome.completed},
           {"abort_reason", outcome.abort_reason},
           {"t_end", outcome.t_end},
           {"steps", outcome.steps},
           {"records_written", outcome.records},
           {"horizon", config.time.horizon},
           {"T_box", config.box_horizon()},
           {"override_horizon", config.override_horizon},
           {"config_hash", hash}};
  write_text(output / "run.json", run.dump(2) + "\n");
  return outcome;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& log) {
  RunConfig config;
  try {
    config = options.config ? load_config(*options.config, options.override_horizon)
                            : parse_config(json::object(), options.override_horizon);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitFailure;
  }
  try {
    const auto outcome = simulate(config, options.output, options.resume, log);
    if (!outcome.completed) {
      log << "solver abort: " << outcome.abort_reason << '\n';
      return kExitAbort;
    }
    log << "completed t = " << outcome.t_end << " in " << outcome.steps << " steps\n";
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

analysis::FitWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("window must be t1:t2");
  auto num = [](std::string_view s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      throw std::invalid_argument("window bound '" + std::string(s) + "' is not a number");
    }
    return v;
  };
  const std::string_view all(text);
  analysis::FitWindow w{num(all.substr(0, colon)), num(all.substr(colon + 1))};
  if (!(w.t2 > w.t1)) throw std::invalid_argument("window needs t1 < t2");
  return w;
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto table = read_csv(options.input);
    if (options.config) {
      const auto expected = config_hash(load_config(*options.config));
      if (expected != table.config_hash) {
        err << "config hash mismatch: CSV has " << table.config_hash << ", config gives "
            << expected << '\n';
        return kExitFailure;
      }
    }
    VerdictOptions vo;
    vo.window = options.window;
    if (!table.config_text.empty()) {
      const auto embedded = json::parse(table.config_text);
      vo.relaxation_rate = embedded.at("params").at("k").get<double>();
    }
    std::optional<CompanionTable> companion;
    const auto comp_path = options.input.parent_path() / "companion.csv";
    if (fs::exists(comp_path)) {
      companion = read_companion(comp_path);
      if (companion->config_hash == table.config_hash) {
        vo.companion = &*companion;
      }
    }
    const json verdict = build_verdict(table, vo);
    const auto path = options.output ? *options.output
                                     : options.input.parent_path() / "verdict.json";
    write_text(path, verdict.dump(2) + "\n");
    out << verdict.dump(2) << '\n';
    bool all = true;
    for (const auto& [name, pass] : verdict.at("criteria").items()) all = all && pass.get<bool>();
    return all ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "analyze: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace oldroyd::harness
