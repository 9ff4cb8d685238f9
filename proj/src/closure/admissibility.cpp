#include "oldroyd/closure/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oldroyd/closure/gaussian_closure.hpp"
#include "oldroyd/spectral/norms.hpp"
#include "oldroyd/spectral/operators.hpp"

namespace oldroyd::closure {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kNotChecked: return "not checked";
  }
  return "unknown";
}

bool AdmissibilityReport::passed() const {
  return std::none_of(conditions.begin(), conditions.end(),
                      [](const Condition& c) { return c.status == CheckStatus::kFail; });
}

const Condition* AdmissibilityReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json AdmissibilityReport::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  out["passed"] = passed();
  auto& list = out["conditions"] = nlohmann::json::array();
  for (const auto& c : conditions) {
    nlohmann::json j{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
    j["value"] = c.value ? nlohmann::json(*c.value) : nlohmann::json(nullptr);
    list.push_back(std::move(j));
  }
  return out;
}

namespace {

class ReportBuilder {
 public:
  void check(std::string name, bool ok, std::optional<double> value, std::string detail) {
    report_.conditions.push_back(
        {std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, value, std::move(detail)});
  }
  void finite(std::string name, double value, std::string detail) {
    check(std::move(name), std::isfinite(value), value, std::move(detail));
  }
  void skip(std::string name, std::string detail) {
    report_.conditions.push_back(
        {std::move(name), CheckStatus::kNotChecked, std::nullopt, std::move(detail)});
  }
  AdmissibilityReport take() { return std::move(report_); }

 private:
  AdmissibilityReport report_;
};

double sobolev1(const spectral::Transform& t, const Samples& f) {
  return std::sqrt(spectral::sobolev_squared(t.grid(), t.forward(f), 1));
}

}  // namespace

AdmissibilityReport check_admissibility(const spectral::Transform& transform,
                                        const solver::OldroydState& initial,
                                        std::array<double, 2> center) {
  const auto& g = transform.grid();
  const double dA = g.cell_area();
  const double L = g.length();
  const int n = g.n();
  const auto closure = GaussianClosure::from_fields(transform, initial.tau, initial.rho);
  const auto& rho = closure.rho;
  const std::size_t cells = rho.size();
  const double rho_max = *std::max_element(rho.begin(), rho.end());
  auto vacuum = [&](std::size_t i) { return !(rho[i] > kVacuumFraction * rho_max); };

  ReportBuilder r;

  // density
  double mass = 0.0, rho_min = rho[0];
  for (double v : rho) {
    mass += v;
    rho_min = std::min(rho_min, v);
  }
  mass *= dA;
  r.check("rho0_unit_mass", std::abs(mass - 1.0) <= 1e-12, mass, "integral rho0 dx = 1");
  r.check("rho0_nonnegative", rho_min >= -1e-12 * rho_max, rho_min,
          "min rho0 >= -1e-12 max rho0 (round-off in the far field)");
  r.finite("rho0_L1", spectral::l1_norm(g, rho), "rho0 in L1");
  r.finite("rho0_W12", std::sqrt(spectral::sobolev_squared(g, initial.rho, 1)), "rho0 in W^{1,2}");
  r.finite("rho0_Linf", spectral::linf_norm(rho), "rho0 in L^inf");

  // conformation tensor
  double eig_min = 0.0, eig_max = 0.0, interior_min = 0.0;
  bool first = true, first_interior = true;
  Samples sigma_frob(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const SymMatrix2 s = closure.sigma_at(i);
    const auto e = s.eigenvalues();
    sigma_frob[i] = s.frobenius();
    if (first) {
      eig_min = e[0];
      eig_max = e[1];
      first = false;
    }
    eig_min = std::min(eig_min, e[0]);
    eig_max = std::max(eig_max, e[1]);
    if (!vacuum(i)) {
      interior_min = first_interior ? e[0] : std::min(interior_min, e[0]);
      first_interior = false;
    }
  }
  r.check("sigma0_positive_definite", interior_min > 0.0 && eig_min >= -1e-12 * eig_max, eig_min,
          "smallest eigenvalue > 0 wherever rho0 carries mass, >= -1e-12 max eigenvalue elsewhere");
  spectral::SymTensorField2 sigma_hat = initial.tau;
  for (std::size_t i = 0; i < initial.rho.size(); ++i) {
    sigma_hat[spectral::kXX][i] += initial.rho[i];
    sigma_hat[spectral::kYY][i] += initial.rho[i];
  }
  r.finite("sigma0_L1", spectral::l1_norm(g, sigma_frob), "sigma0 in L1 (Frobenius)");
  {
    double h1 = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      h1 += spectral::kTensorWeights[c] * spectral::sobolev_squared(g, sigma_hat[c], 1);
    }
    r.finite("sigma0_W12", std::sqrt(h1), "sigma0 in W^{1,2}");
  }

  // Lambda-weighted entropy-type integral
  auto lambda_at = [&](std::size_t i) {
    const int ix = static_cast<int>(i % n), iy = static_cast<int>(i / n);
    const double d1 = std::remainder(ix * g.spacing() - center[0], L);
    const double d2 = std::remainder(iy * g.spacing() - center[1], L);
    const double dist = std::min(std::hypot(d1, d2), 0.5 * L);
    return std::log(std::max(dist, 1.0));
  };
  double lambda_moment = 0.0, rho_log_rho = 0.0, mixed = 0.0, f_log_f = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    if (vacuum(i)) continue;
    const double lam = lambda_at(i);
    const SymMatrix2 s = closure.sigma_at(i);
    const double frob = sigma_frob[i];
    lambda_moment += rho[i] * lam * lam;
    rho_log_rho += rho[i] * std::log(rho[i]);
    mixed += rho[i] * (lam * lam + std::log(rho[i]) + std::log(frob) +
                       frob * frob / (rho[i] * rho[i]));
    // integral f log f dm = rho log rho - rho (1 + log 2 pi + log det Sigma / 2)
    const double det_conf = s.det() / (rho[i] * rho[i]);
    f_log_f += rho[i] * std::log(rho[i]) -
               rho[i] * (1.0 + std::log(2.0 * std::numbers::pi) + 0.5 * std::log(det_conf));
  }
  r.finite("rho0_entropy_integral", mixed * dA,
           "integral rho0 (|Lambda|^2 + log rho0 + log|sigma0| + |sigma0|^2/rho0^2) finite, "
           "|.| Frobenius");

  // composite products (1/rho)^(p-1) sum_{s in S_p} prod_i sigma_{i,s(i)}
  {
    Samples p0 = rho;
    Samples p1 = closure.sigma[0];
    Samples p2(cells, 0.0);
    for (std::size_t i = 0; i < cells; ++i) {
      if (vacuum(i)) continue;
      const SymMatrix2 s = closure.sigma_at(i);
      p2[i] = (s.xx * s.yy + s.xy * s.xy) / rho[i];
    }
    const std::array<Samples*, 3> composites{&p0, &p1, &p2};
    for (int p = 0; p <= 2; ++p) {
      r.finite("composite_p" + std::to_string(p) + "_W12", sobolev1(transform, *composites[p]),
               "composite expression of order p in W^{1,2}");
    }
    r.skip("composite_p3_W12",
           "order 3 requires sigma_{i,s(i)} with i = 3, undefined for a 2x2 tensor");
    for (int p = 3; p <= 8; ++p) {
      r.skip("composite_p" + std::to_string(p) + "_L2", "index range beyond 2x2 tensor is unclear");
    }
  }

  // induced kinetic data
  r.check("f0_nonnegative", rho_min >= -1e-12 * rho_max && interior_min > 0.0, std::nullopt,
          "Gaussian density is nonnegative where it is defined");
  r.check("f0_unit_mass", std::abs(mass - 1.0) <= 1e-12, mass, "integral f0 dm dx = 1");
  for (int order = 2; order <= 6; order += 2) {
    double worst = 0.0;
    for (int a = 0; a <= order; ++a) {
      worst = std::max(worst, sobolev1(transform, moment(closure, a, order - a)));
    }
    r.finite("moments_order" + std::to_string(order) + "_W12", worst,
             "max_{a+b=" + std::to_string(order) + "} ||M_ab||_{W^{1,2}}");
  }
  for (int order = 2; order <= 8; order += 2) {
    double worst = 0.0;
    for (int a = 0; a <= order; ++a) {
      const auto m = moment(closure, a, order - a);
      worst = std::max(worst, std::sqrt(spectral::l2_squared_physical(g, m)));
    }
    r.finite("moments_order" + std::to_string(order) + "_L2", worst,
             "max_{a+b=" + std::to_string(order) + "} ||M_ab||_{L2}");
  }
  for (int order = 10; order <= 16; order += 2) {
    r.skip("moments_order" + std::to_string(order) + "_L2", "moments above order 8 not supported");
  }
  {
    const auto m40 = moment(closure, 4, 0), m22 = moment(closure, 2, 2), m04 = moment(closure, 0, 4);
    Samples bar(cells);
    for (std::size_t i = 0; i < cells; ++i) bar[i] = m40[i] + 2.0 * m22[i] + m04[i];
    r.finite("M4bar_L1", spectral::l1_norm(g, bar), "integral |m|^4 f0 dm in L1");
  }
  r.finite("f0_log_f0", f_log_f * dA, "integral f0 log f0 dm dx finite");
  r.finite("Lambda_moment", lambda_moment * dA, "integral |Lambda|^2 M00 dx finite");
  r.finite("rho0_log_rho0", rho_log_rho * dA, "integral M00 log M00 dx finite");

  // velocity
  {
    const auto div = spectral::divergence(g, initial.u);
    double div_max = 0.0, u_max = 0.0;
    for (std::size_t i = 0; i < div.size(); ++i) {
      div_max = std::max(div_max, std::abs(div[i]));
      u_max = std::max(u_max, std::max(std::abs(initial.u[0][i]), std::abs(initial.u[1][i])));
    }
    r.check("u0_divergence_free", div_max <= 1e-12 * std::max(u_max, 1.0), div_max,
            "max |xi . u0hat|");
    const double h2 = std::sqrt(spectral::sobolev_squared(g, initial.u[0], 2) +
                                spectral::sobolev_squared(g, initial.u[1], 2));
    r.finite("u0_W22", h2, "u0 in W^{2,2}");
    const auto norms = spectral::norms(transform, initial.u, {}, spectral::NormRequest{.l1 = true});
    r.finite("u0_L1", *norms.l1, "u0 in L1");
  }
  return r.take();
}

}  // namespace oldroyd::closure
