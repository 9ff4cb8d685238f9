#include "oldroyd/harness/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "oldroyd/closure/free_energy.hpp"

namespace oldroyd::harness {

using analysis::BoundednessVerdict;
using analysis::DecayFit;
using analysis::FitWindow;
using nlohmann::json;

namespace {

json fit_json(const DecayFit& f) {
  return {{"exponent", f.exponent},
          {"log_prefactor", f.log_prefactor},
          {"residual", f.residual},
          {"samples", f.samples},
          {"window", {f.window.t1, f.window.t2}}};
}

json bounded_json(const BoundednessVerdict& b) {
  return {{"bounded", b.bounded},
          {"trend", b.trend},
          {"max", b.max_value},
          {"samples", b.samples},
          {"method", b.method}};
}

std::vector<double> scaled(const std::vector<double>& t, const std::vector<double>& y,
                           double power_of_y, double power_of_t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out[i] = std::pow(y[i], power_of_y) * std::pow(1.0 + t[i], power_of_t);
  }
  return out;
}

}  // namespace

json build_verdict(const DiagnosticsTable& table, const VerdictOptions& options) {
  if (table.rows.empty()) throw CsvError("no data rows");
  const auto t = table.column("t");
  const FitWindow window =
      options.window ? *options.window
                     : analysis::final_decade(t.back(), 5.0 / options.relaxation_rate);
  const FitWindow whole{t.front(), t.back()};

  json v;
  v["config_hash"] = table.config_hash;
  v["records"] = table.rows.size();
  v["window"] = {window.t1, window.t2};

  json& fits = v["fits"];
  json& crit = v["criteria"];
  auto fit = [&](const std::string& name, const std::vector<double>& y, double lo, double hi)
      -> bool {
    try {
      const auto f = analysis::fit_decay(t, y, window);
      json j = fit_json(f);
      j["target"] = {lo, hi};
      j["pass"] = f.exponent >= lo && f.exponent <= hi;
      fits[name] = j;
      return j["pass"].get<bool>();
    } catch (const std::invalid_argument& e) {
      fits[name] = {{"error", e.what()}, {"pass", false}};
      return false;
    }
  };
  json& bounded = v["bounded"];
  auto bound = [&](const std::string& name, const std::vector<double>& ratio, FitWindow w) {
    const auto b = analysis::check_bounded(t, ratio, w);
    bounded[name] = bounded_json(b);
    return b.bounded;
  };

  const auto u = table.column("u_l2");
  const auto grad_u = table.column("grad_u_l2");
  const auto omega = table.column("omega_l2");
  const auto grad_omega = table.column("grad_omega_l2");
  const auto tau_l1 = table.column("tau_l1");
  const auto tau_l2 = table.column("tau_l2");
  const auto grad_tau = table.column("grad_tau_l2");
  const auto rho_l2 = table.column("rho_l2");
  const auto rho_linf = table.column("rho_linf");

  // density
  const bool rho_fit = fit("rho_l2_sq", scaled(t, rho_l2, 2.0, 0.0), -1.2, -0.8);
  const bool rho_inf = bound("rho_linf_t", scaled(t, rho_linf, 1.0, 1.0), window);
  bound("rho_l2_sq_t", scaled(t, rho_l2, 2.0, 1.0), window);
  crit["density_decay"] = rho_fit && rho_inf;

  // stress
  const double neg_inf = -std::numeric_limits<double>::infinity();
  bool stress = fit("tau_l2", tau_l2, neg_inf, -1.3);
  stress = fit("tau_l1", tau_l1, neg_inf, -1.3) && stress;
  stress = fit("grad_tau_l2", grad_tau, neg_inf, -1.3) && stress;
  stress = bound("tau_l2_t32", scaled(t, tau_l2, 1.0, 1.5), window) && stress;
  stress = bound("tau_l1_t32", scaled(t, tau_l1, 1.0, 1.5), window) && stress;
  stress = bound("grad_tau_l2_t32", scaled(t, grad_tau, 1.0, 1.5), window) && stress;
  crit["stress_decay"] = stress;

  // velocity
  bool vel = fit("u_l2_sq", scaled(t, u, 2.0, 0.0), -1.4, -0.8);
  bound("u_l2_sq_t", scaled(t, u, 2.0, 1.0), window);
  vel = bound("omega_l2_sq_t", scaled(t, omega, 2.0, 1.0), window) && vel;
  vel = bound("grad_omega_l2_sq_t", scaled(t, grad_omega, 2.0, 1.0), window) && vel;
  crit["velocity_decay"] = vel;
  {
    // recorded only: which H2 piece dominates is left open
    std::vector<double> h2(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      h2[i] = (u[i] * u[i] + grad_u[i] * grad_u[i] + grad_omega[i] * grad_omega[i]) * (1.0 + t[i]);
    }
    v["evidence"]["u_h2_sq_t"] = bounded_json(analysis::check_bounded(t, h2, window));
  }

  // free-energy ledger
  {
    const std::size_t fe = table.index_of("free_energy");
    const std::size_t dc = table.index_of("dissipation_cum");
    std::vector<closure::LedgerSample> samples;
    for (const auto& row : table.rows) {
      closure::LedgerSample s;
      s.t = *row[0];
      s.defined = row[fe].has_value();
      s.free_energy = row[fe].value_or(0.0);
      s.dissipation = row[dc].value_or(0.0);
      samples.push_back(s);
    }
    const auto rep = closure::free_energy_dissipation_check(samples, kLedgerTolerance);
    double worst = neg_inf;
    json flagged = json::array();
    for (const auto& e : rep.entries) {
      worst = std::max(worst, e.increase);
      if (e.flagged) flagged.push_back(e.t);
    }
    v["free_energy"] = {{"initial", rep.initial},
                        {"tolerance", rep.tolerance},
                        {"max_increase", worst},
                        {"non_increasing", rep.non_increasing},
                        {"flagged_times", flagged},
                        {"undefined_from", rep.undefined_from ? json(*rep.undefined_from)
                                                              : json(nullptr)}};
    crit["free_energy"] = rep.non_increasing && !rep.undefined_from;
  }

  // heat equivalence
  crit["heat_equivalence"] = bound("heat_gap", table.column("heat_gap"), window);

  // pointwise spectral bounds
  {
    const auto tauhat = table.column("ratio_tauhat");
    const double worst = *std::max_element(tauhat.begin(), tauhat.end());
    const bool ok = worst <= 1.0 + kTauhatSlack;
    v["pointwise"] = {{"ratio_tauhat_max", worst}, {"limit", 1.0 + kTauhatSlack}, {"pass", ok}};
    const bool uh = bound("ratio_uhat", table.column("ratio_uhat"), whole);
    const bool oh = bound("ratio_omegahat", table.column("ratio_omegahat"), whole);
    crit["pointwise_bounds"] = ok && uh && oh;
  }

  // positivity monitor
  {
    const auto eig = table.column("sigma_min_eig");
    const double lo = *std::min_element(eig.begin(), eig.end());
    v["positivity"] = {{"sigma_min_eig", lo}, {"floor", kPositivityFloor}};
    crit["positivity"] = lo >= kPositivityFloor;
  }

  // Ladyzhenskaya ratio, recorded
  {
    const auto lady = table.column("lady_ratio");
    double hi = 0.0;
    for (double x : lady) {
      if (std::isfinite(x)) hi = std::max(hi, x);
    }
    v["evidence"]["lady_ratio_max"] = hi;
  }

  if (options.companion) {
    const auto& c = *options.companion;
    const auto e = analysis::d_alpha_check(c.t, c.v_l2, c.forcing_l2, window);
    v["d_alpha"] = {{"v_energy", bounded_json(e.v_bounded)},
                    {"forcing", bounded_json(e.forcing_bounded)},
                    {"member", e.member()}};
    crit["d_alpha"] = e.member();
  }
  return v;
}

}  // namespace oldroyd::harness
