#include "oldroyd/analysis/decay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oldroyd::analysis {

namespace {

struct Line {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line l;
  l.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss += r * r;
  }
  l.rms = std::sqrt(ss / n);
  return l;
}

bool inside(double t, FitWindow w) {
  // relative slack so window ends computed from t_end still catch it
  const double eps = 1e-12 * std::max(1.0, std::abs(w.t2));
  return t >= w.t1 - eps && t <= w.t2 + eps;
}

}  // namespace

DecayFit fit_decay(std::span<const double> t, std::span<const double> y, FitWindow window) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_decay: t and y differ in length");
  if ((1.0 + window.t2) < 10.0 * (1.0 + window.t1) * (1.0 - 1e-12)) {
    throw std::invalid_argument("fit_decay: window spans less than one decade of (1+t)");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!inside(t[i], window)) continue;
    if (!(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw std::invalid_argument("fit_decay: non-positive sample at t = " + std::to_string(t[i]));
    }
    lx.push_back(std::log1p(t[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < kMinFitSamples) {
    throw std::invalid_argument("fit_decay: " + std::to_string(lx.size()) +
                                " samples in window, need " + std::to_string(kMinFitSamples));
  }
  const Line l = least_squares(lx, ly);
  DecayFit fit;
  fit.exponent = l.slope;
  fit.log_prefactor = l.intercept;
  fit.residual = l.rms;
  fit.window = window;
  fit.samples = lx.size();
  return fit;
}

FitWindow final_decade(double t_end, double skip) {
  return {std::max((1.0 + t_end) / 10.0 - 1.0, skip), t_end};
}

BoundednessVerdict check_bounded(std::span<const double> t, std::span<const double> ratio,
                                 FitWindow window) {
  BoundednessVerdict v;
  std::vector<double> lx, ly, raw;
  bool positive = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!inside(t[i], window)) continue;
    if (!std::isfinite(ratio[i])) {
      v.bounded = false;
      v.method = "non-finite value";
      return v;
    }
    positive = positive && ratio[i] > 0.0;
    raw.push_back(ratio[i]);
    lx.push_back(std::log1p(t[i]));
    ly.push_back(positive ? std::log(ratio[i]) : 0.0);
  }
  v.samples = raw.size();
  v.max_value = raw.empty() ? 0.0 : *std::max_element(raw.begin(), raw.end());
  if (raw.size() < 2) {
    v.method = "too few samples";
    return v;
  }
  if (positive) {
    v.method = "log-slope";
    v.trend = least_squares(lx, ly).slope;
    v.bounded = v.trend <= kGrowthTrendLimit;
  } else {
    v.method = "not strictly increasing";
    bool increasing = true;
    for (std::size_t i = 1; i < raw.size(); ++i) increasing = increasing && raw[i] > raw[i - 1];
    v.bounded = !increasing;
  }
  return v;
}

double exp_memory_ratio(std::span<const double> s, std::span<const double> h, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("exp_memory_ratio: k must be positive");
  if (s.size() != h.size() || s.size() < 3) {
    throw std::invalid_argument("exp_memory_ratio: need at least 3 matching samples");
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw std::invalid_argument("exp_memory_ratio: h must be positive");
    if (i > 0 && h[i] > h[i - 1]) {
      throw std::invalid_argument("exp_memory_ratio: h must be nonincreasing");
    }
    if (i > 0 && !(s[i] > s[i - 1])) {
      throw std::invalid_argument("exp_memory_ratio: sample times must increase");
    }
  }
  const double t = s.back();
  // log-slope near t and near t/2
  auto log_slope = [&](std::size_t i) {
    const std::size_t j = std::max<std::size_t>(i, 1);
    return std::abs(std::log(h[j]) - std::log(h[j - 1])) / (s[j] - s[j - 1]);
  };
  const auto half = static_cast<std::size_t>(
      std::lower_bound(s.begin(), s.end(), 0.5 * t) - s.begin());
  const double d_end = log_slope(s.size() - 1);
  const double d_half = log_slope(half);
  if (d_end > 1e-12 && !(d_end < d_half * (1.0 - 1e-9))) {
    throw std::invalid_argument("exp_memory_ratio: h'/h does not decay (exponential h rejected)");
  }

  double integral = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double a = std::exp(-2.0 * k * (t - s[i - 1])) * h[i - 1];
    const double b = std::exp(-2.0 * k * (t - s[i])) * h[i];
    integral += 0.5 * (s[i] - s[i - 1]) * (a + b);
  }
  return integral / h.back();
}

double exp_memory_ratio(const std::function<double(double)>& h, double k, double t,
                        std::size_t intervals) {
  if (!(t > 0.0)) throw std::invalid_argument("exp_memory_ratio: t must be positive");
  std::vector<double> s(intervals + 1), hs(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    s[i] = t * static_cast<double>(i) / static_cast<double>(intervals);
    hs[i] = h(s[i]);
  }
  s.back() = t;
  return exp_memory_ratio(s, hs, k);
}

DAlphaEvidence d_alpha_check(std::span<const double> t, std::span<const double> v_l2,
                             std::span<const double> forcing_l2, FitWindow window) {
  DAlphaEvidence e;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double w = 1.0 + t[i];
    e.t.push_back(t[i]);
    e.v_energy.push_back(v_l2[i] * v_l2[i] * w);
    e.forcing.push_back(w * w * w * forcing_l2[i] * forcing_l2[i]);
  }
  e.v_bounded = check_bounded(e.t, e.v_energy, window);
  e.forcing_bounded = check_bounded(e.t, e.forcing, window);
  return e;
}

}  // namespace oldroyd::analysis
