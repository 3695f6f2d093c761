#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lpplab/env.hpp"
#include "lpplab/pitman.hpp"

namespace lpplab {

enum class WxRoute {
  kMultipoint,  // partial sums of multi-point LPP values
  kPitman,      // top lines of W_{tau_I} f
};

// Lines g_1 ... g_k whose partial sums are the line-start multi-point values
// f[(t0, I^l) -> (y^l, 1)]. They live on the source grid refined by the Pitman
// iteration for I, where they are exactly piecewise linear.
struct WxEnvironment {
  Environment lines;
  LineIndexSet starts;
};

WxEnvironment wx_line_env(const Environment& env, const LineIndexSet& starts,
                          WxRoute route = WxRoute::kMultipoint);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct DifferenceProfile {
  PLFunction A;
  PLFunction g1;
  PLFunction g2;
  // Maximal grid intervals on which A strictly increases.
  std::vector<Interval> support;
  // max_y |A(y) - sup_{z <= y} (g2 - g1)(z)|.
  double running_max_residual = 0.0;
};

// Cells where a nondecreasing profile gains more than 1e-9 (1 + |A|), merged.
std::vector<Interval> increase_support(const PLFunction& A);

// A(y) = f[(t0, i2) -> (y, 1)] - f[(t0, i1) -> (y, 1)] on the refined grid of
// wx_line_env(env, {i1, i2}).
DifferenceProfile difference_profile_line(const Environment& env, int i1, int i2);

// A(y) = f[(x2, n) -> (y, 1)] - f[(x1, n) -> (y, 1)] for grid y >= x2.
DifferenceProfile difference_profile_spatial(const Environment& env, double x1, double x2);

// Grid times y > t0 at which g2 - g1 sets a new running maximum.
std::vector<double> record_times(const PLFunction& g1, const PLFunction& g2, double tol);

struct DimensionEstimate {
  std::vector<double> scales;
  std::vector<std::size_t> counts;
  std::optional<double> slope;
};

// Box counts of the support at each scale (boxes anchored at the left grid
// point, cells assigned by midpoint) and the least-squares slope of log N
// against log(1 / scale).
DimensionEstimate support_dimension(const DifferenceProfile& profile,
                                    const std::vector<double>& scales);

struct TwoWedgeResult {
  PLFunction H;
  PLFunction M1;
  PLFunction M2;
  double tau = 0.0;
  bool crossed = false;
  // Largest decrease of M2 - M1 between consecutive grid points.
  double monotonicity_violation = 0.0;
  // Largest |H - (M1 before tau, M2 from tau on)|.
  double decomposition_error = 0.0;
};

TwoWedgeResult two_wedge(const Environment& env, double a1, double a2);

struct MainComparisonConfig {
  int env_lines = 200;
  std::vector<double> starts{0.0, 0.1};
  Interval window{1.0, 1.25};
  double horizon = 2.0;
  double grid_step = 1e-4;
  double variance = 2.0;
  std::size_t replicates = 2;
};

struct MainComparisonReport {
  // Per-line centred increment variance divided by variance * step.
  std::vector<double> landscape_variance;
  std::vector<double> brownian_variance;
  // landscape_variance / brownian_variance per line.
  std::vector<double> variance_ratio;
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
  std::size_t increments = 0;
};

// Increments over the window of the recentred spatial-start profiles
// y -> f[(x_i, n) -> (y, 1)] against those of the Brownian comparison object
// y -> B[(-b-1, i) -> (y, 1)] with k lines.
MainComparisonReport main_comparison_stats(const MainComparisonConfig& config, const Seed& seed);

// Increments of the comparison object alone; two calls with different seeds
// give the self-calibration pair.
std::vector<std::vector<double>> brownian_comparison_increments(const MainComparisonConfig& config,
                                                                const Seed& seed);

}  // namespace lpplab
