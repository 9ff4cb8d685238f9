#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oldroyd::analysis {

struct FitWindow {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Least-squares line through (log(1+t), log y) on the window.
struct DecayFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double residual = 0.0;  ///< rms of the log residuals
  FitWindow window;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 10;

/// Throws std::invalid_argument with fewer than kMinFitSamples samples in
/// the window, when the window spans less than one decade of (1+t), or on a
/// non-positive (or non-finite) sample.
DecayFit fit_decay(std::span<const double> t, std::span<const double> y, FitWindow window);

/// Final decade of (1+t) ending at t_end: [(1+t_end)/10 - 1, t_end], with the
/// start pushed to at least `skip` (initial transient).
FitWindow final_decade(double t_end, double skip = 0.0);

/// Boundedness of a compensated ratio over a window: no monotone growth
/// trend. The trend is the least-squares slope of log(ratio) against
/// log(1+t); a series with nonpositive entries falls back to "not strictly
/// increasing".
struct BoundednessVerdict {
  bool bounded = true;
  double trend = 0.0;  ///< fitted log-slope, 0 in the fallback
  double max_value = 0.0;
  std::size_t samples = 0;
  std::string method;
};

inline constexpr double kGrowthTrendLimit = 0.2;

BoundednessVerdict check_bounded(std::span<const double> t, std::span<const double> ratio,
                                 FitWindow window);

/// (1/h(t)) integral_0^t exp(-2k(t-s)) h(s) ds by the trapezoid rule over
/// the given samples (s_0 = 0, s_last = t). Preconditions checked: k > 0,
/// h positive and nonincreasing, and h'/h decaying (|log-slope| at t below
/// the one at t/2, or zero), which rules out exponential h.
/// Throws std::invalid_argument on a violated precondition.
double exp_memory_ratio(std::span<const double> s, std::span<const double> h, double k);

/// Same with h given as a function, sampled on `intervals` uniform steps.
double exp_memory_ratio(const std::function<double(double)>& h, double k, double t,
                        std::size_t intervals = 200000);

/// Evidence for membership of (u0, forcing) in D_1^{(2)}: the heat
/// companion energy and the forcing, both compensated.
struct DAlphaEvidence {
  std::vector<double> t;
  std::vector<double> v_energy;  ///< ||v||^2 (1+t)
  std::vector<double> forcing;   ///< (1+t)^3 ||f||^2
  BoundednessVerdict v_bounded;
  BoundednessVerdict forcing_bounded;
  bool member() const { return v_bounded.bounded && forcing_bounded.bounded; }
};

DAlphaEvidence d_alpha_check(std::span<const double> t, std::span<const double> v_l2,
                             std::span<const double> forcing_l2, FitWindow window);

}  // namespace oldroyd::analysis
