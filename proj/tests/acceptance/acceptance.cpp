// Acceptance run: the reference trajectory plus the side oracles, one
// PASS/FAIL line per criterion. Exit 0 only if every line passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oldroyd/analysis/decay.hpp"
#include "oldroyd/harness/commands.hpp"
#include "oldroyd/harness/config.hpp"
#include "oldroyd/harness/csv.hpp"
#include "oldroyd/harness/verdict.hpp"
#include "oldroyd/solver/initial_data.hpp"
#include "oldroyd/solver/integrator.hpp"
#include "oldroyd/spectral/norms.hpp"
#include "verify/suites.hpp"

namespace fs = std::filesystem;
using namespace oldroyd;
using nlohmann::json;

namespace {

struct Line {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(const std::string& name, bool pass, const std::string& detail) {
  lines.push_back({name, pass, detail});
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

// an exception inside a check is that check's failure
template <class F>
void guarded(const std::string& name, F&& check) {
  try {
    check();
  } catch (const std::exception& e) {
    report(name, false, std::string("error: ") + e.what());
  }
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

bool completed_run(const fs::path& dir, const std::string& hash) {
  const auto run = dir / "run.json";
  if (!fs::exists(run)) return false;
  std::ifstream in(run);
  const auto j = json::parse(in, nullptr, false);
  return !j.is_discarded() && j.value("completed", false) && j.value("config_hash", "") == hash;
}

// Periodized Gaussian heat solution: ||rho||^2 = (1/L^2) sum_j exp(-s^2 |xi_j|^2),
// s^2 = ell^2 + 2 nu2 t, over the full lattice (truncated where the terms underflow).
double theta_norm_sq(double L, double ell, double nu2, double t) {
  const double s2 = ell * ell + 2.0 * nu2 * t;
  const double step = 2.0 * std::numbers::pi / L;
  double one = 0.0;
  for (int j = 0;; ++j) {
    const double term = std::exp(-s2 * step * step * j * j);
    one += (j == 0 ? 1.0 : 2.0) * term;
    if (term < 1e-300 || j > 100000) break;
  }
  return one * one / (L * L);
}

void density_oracle(const fs::path& dir) {
  auto doc = json::parse(R"({"initial": {"amplitude": 0, "epsilon": 0},
                             "time": {"dt_max": 50, "checkpoint_interval": 0}})");
  const auto config = harness::parse_config(doc);
  std::ostringstream log;
  const auto out = harness::simulate(config, dir, std::nullopt, log);
  if (!out.completed) {
    report("density_heat_oracle", false, "run aborted: " + out.abort_reason);
    return;
  }
  const auto table = harness::read_csv(dir / "diagnostics.csv");
  const auto t = table.column("t");
  const auto rho = table.column("rho_l2");
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double exact = std::sqrt(theta_norm_sq(config.length, config.initial.density_width,
                                                 config.params.nu2, t[i]));
    worst = std::max(worst, std::abs(rho[i] - exact) / exact);
  }
  report("density_heat_oracle", worst <= 1e-6,
         "A = eps = 0, max rel. error of ||rho||_L2 vs theta sum = " + num(worst) + " over " +
             std::to_string(t.size()) + " records up to t = " + num(t.back()) + " (tol 1e-6)");
}

void linear_limit() {
  // radial vortex with rho = tau = 0: tau is never sourced and the advection
  // of a radial vortex is a pure gradient, so u follows the heat flow
  const spectral::Grid grid(256, 200.0);
  const solver::OldroydParams params;
  solver::OldroydSolver solver(grid, params);
  solver::InitialDataSpec spec;
  spec.amplitude = 0.01;
  spec.epsilon = 0.0;
  spec.density_width = 8.0;  // resolved on this grid; rho is zeroed below
  auto s = solver::build_initial_state(spec, solver.transform(), params);
  s.rho = spectral::zero_spectrum(grid);
  s.tau = spectral::zero_tensor(grid);
  solver::HeatCompanionState v{s.u, 0.0};
  double worst = 0.0, tau_max = 0.0;
  const double horizon = 50.0;
  while (s.t < horizon) {
    const double dt = std::min(solver.compute_dt(s, 0.5, 0.5), horizon - s.t);
    const double t0 = s.t;
    const auto f = solver.step(s, dt);
    solver::heat_companion_step(v, f, dt, params, grid, t0);
    auto d = s.u;
    for (int c = 0; c < 2; ++c) spectral::axpy(d[c], -1.0, v.v[c]);
    const double diff = std::sqrt(spectral::l2_squared(grid, d[0]) + spectral::l2_squared(grid, d[1]));
    const double norm = std::sqrt(spectral::l2_squared(grid, s.u[0]) + spectral::l2_squared(grid, s.u[1]));
    worst = std::max(worst, diff / norm);
    for (const auto& c : s.tau) tau_max = std::max(tau_max, std::sqrt(spectral::l2_squared(grid, c)));
  }
  report("heat_linear_limit", worst <= 1e-10 && tau_max == 0.0,
         "tau = 0 limit, max ||u - v|| / ||u|| = " + num(worst) + " to t = " + num(s.t) +
             " (tol 1e-10), max ||tau|| = " + num(tau_max));
}

void restart_check(const fs::path& ref, const fs::path& dir, const harness::RunConfig& config) {
  std::vector<fs::path> ckpts;
  for (const auto& e : fs::directory_iterator(ref / "checkpoints")) ckpts.push_back(e.path());
  std::sort(ckpts.begin(), ckpts.end());
  if (ckpts.size() < 2) {
    report("deterministic_restart", false, "reference run has fewer than two checkpoints");
    return;
  }
  const auto from = ckpts[ckpts.size() - 2];  // last one before the final record
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* f : {"diagnostics.csv", "companion.csv"}) fs::copy_file(ref / f, dir / f);
  std::ostringstream log;
  const auto out = harness::simulate(config, dir, from, log);
  const auto a = harness::read_csv(ref / "diagnostics.csv");
  const auto b = harness::read_csv(dir / "diagnostics.csv");
  double worst = 0.0;
  bool same_shape = out.completed && a.rows.size() == b.rows.size();
  if (same_shape) {
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
        if (a.rows[r][c].has_value() != b.rows[r][c].has_value()) {
          same_shape = false;
          continue;
        }
        if (!a.rows[r][c]) continue;
        const double x = *a.rows[r][c], y = *b.rows[r][c];
        worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), 1e-300));
      }
    }
  }
  report("deterministic_restart", same_shape && worst <= 1e-12,
         "resumed from " + from.filename().string() + ", max rel. difference over all records " +
             num(worst) + " (tol 1e-12)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance run"};
  fs::path output = "acceptance_run";
  bool reuse = false;
  app.add_option("--output", output, "work directory");
  app.add_flag("--reuse", reuse, "reuse a completed reference run with the same config hash");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(output);
  const auto started = std::chrono::steady_clock::now();

  const auto config = harness::parse_config(json::object());
  const auto hash = harness::config_hash(config);
  const auto ref = output / "reference";
  std::cout << "reference config " << hash << ": n = " << config.n << ", L = " << config.length
            << ", horizon = " << config.time.horizon << ", A = " << config.initial.amplitude
            << std::endl;
  if (!(reuse && completed_run(ref, hash))) {
    fs::remove_all(ref);
    const auto out = harness::simulate(config, ref, std::nullopt, std::cout);
    std::cout << "reference run: " << (out.completed ? "completed" : "aborted: " + out.abort_reason)
              << ", t = " << out.t_end << ", " << out.steps << " steps" << std::endl;
  }
  const auto table = harness::read_csv(ref / "diagnostics.csv");
  const auto companion = harness::read_companion(ref / "companion.csv");
  harness::VerdictOptions vo;
  vo.relaxation_rate = config.params.k;
  vo.companion = &companion;
  const json v = harness::build_verdict(table, vo);
  {
    std::ofstream(ref / "verdict.json") << v.dump(2) << '\n';
  }
  const auto& crit = v.at("criteria");
  const auto& fits = v.at("fits");
  const auto& bnd = v.at("bounded");
  auto exponent = [&](const char* k) {
    return fits.at(k).contains("exponent") ? num(fits.at(k).at("exponent").get<double>())
                                           : fits.at(k).at("error").get<std::string>();
  };
  auto trend = [&](const char* k) { return num(bnd.at(k).at("trend").get<double>()); };
  const double t_end = table.column("t").back();
  std::cout << "fit window [" << v["window"][0] << ", " << v["window"][1] << "], " << table.rows.size()
            << " records to t = " << t_end << std::endl;

  report("density_decay", crit.at("density_decay").get<bool>(),
         "||rho||^2 exponent " + exponent("rho_l2_sq") + " in [-1.2, -0.8], ||rho||_inf (1+t) trend " +
             trend("rho_linf_t"));
  guarded("density_heat_oracle", [&] { density_oracle(output / "density_oracle"); });

  report("stress_decay", crit.at("stress_decay").get<bool>(),
         "exponents tau_L2 " + exponent("tau_l2") + ", tau_L1 " + exponent("tau_l1") +
             ", grad tau_L2 " + exponent("grad_tau_l2") + " (<= -1.3); (1+t)^1.5 trends " +
             trend("tau_l2_t32") + ", " + trend("tau_l1_t32") + ", " + trend("grad_tau_l2_t32"));

  report("velocity_decay", crit.at("velocity_decay").get<bool>(),
         "||u||^2 exponent " + exponent("u_l2_sq") + " in [-1.4, -0.8]; (1+t) ||omega||^2 trend " +
             trend("omega_l2_sq_t") + ", (1+t) ||grad omega||^2 trend " + trend("grad_omega_l2_sq_t"));

  {
    const auto& fe = v.at("free_energy");
    report("free_energy_ledger", crit.at("free_energy").get<bool>(),
           "max rise " + num(fe.at("max_increase").get<double>()) + " vs tolerance " +
               num(fe.at("tolerance").get<double>()) + ", undefined from " + fe.at("undefined_from").dump());
    const auto q = verify::free_energy_vs_quadrature(20240917ULL, 100);
    report("free_energy_vs_quadrature", q.passed, q.detail);
  }

  {
    // ratio within 1% of 1/(2k) at t = 50/k
    bool all = true;
    std::string detail;
    for (double p : {1.0, 2.0, 3.0}) {
      for (double k : {0.5, 1.0, 2.0}) {
        const double r = analysis::exp_memory_ratio(
            [p](double s) { return std::pow(1.0 + s, -p); }, k, 50.0 / k);
        const double rel = std::abs(r * 2.0 * k - 1.0);
        all = all && rel <= 0.01;
        detail += " p=" + num(p) + ",k=" + num(k) + ":" + num(rel);
      }
    }
    report("exp_memory_ratio", all, "relative deviation from 1/(2k) (tol 0.01):" + detail);
  }

  report("heat_equivalence", crit.at("heat_equivalence").get<bool>(),
         "||u - v||^2 (1+t)^2 / log(t+e)^2 trend " + trend("heat_gap") + ", max " +
             num(bnd.at("heat_gap").at("max").get<double>()));
  guarded("heat_linear_limit", linear_limit);

  {
    const auto& pw = v.at("pointwise");
    report("pointwise_bounds", crit.at("pointwise_bounds").get<bool>(),
           "max ratio_tauhat " + num(pw.at("ratio_tauhat_max").get<double>()) +
               " (<= 1 + 1e-10); ratio_uhat trend " + trend("ratio_uhat") + ", max " +
               num(bnd.at("ratio_uhat").at("max").get<double>()) + "; ratio_omegahat trend " +
               trend("ratio_omegahat") + ", max " +
               num(bnd.at("ratio_omegahat").at("max").get<double>()));
  }

  {
    std::ostringstream suite_out;
    const int rc = verify::cmd_verify({verify::Level::kFull, verify::Fault::kNone}, suite_out);
    std::cout << suite_out.str();
    std::string summary = suite_out.str();
    summary = summary.substr(summary.rfind(" properties passed") == std::string::npos
                                 ? 0
                                 : summary.rfind('\n', summary.rfind(" properties passed")) + 1);
    while (!summary.empty() && summary.back() == '\n') summary.pop_back();
    std::replace(summary.begin(), summary.end(), '\n', ' ');
    report("property_suites", rc == 0, summary);
  }
  guarded("deterministic_restart", [&] { restart_check(ref, output / "restart", config); });
  report("positivity", crit.at("positivity").get<bool>(),
         "min sigma eigenvalue " + num(v.at("positivity").at("sigma_min_eig").get<double>()) +
             " (>= -1e-8)");

  std::cout << "note: D_1 membership evidence " << (crit.value("d_alpha", false) ? "bounded" : "unbounded")
            << ", max Ladyzhenskaya ratio " << v.at("evidence").at("lady_ratio_max") << std::endl;

  const auto failed = std::count_if(lines.begin(), lines.end(), [](const Line& l) { return !l.pass; });
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() / 60.0;
  std::cout << lines.size() - failed << "/" << lines.size() << " acceptance checks passed in "
            << num(minutes) << " min" << std::endl;
  if (failed) {
    std::cout << "failed:";
    for (const auto& l : lines) {
      if (!l.pass) std::cout << ' ' << l.name;
    }
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
