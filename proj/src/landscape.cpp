#include "lpplab/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lpplab/errors.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/mc.hpp"

namespace lpplab {

namespace {

std::vector<double> running_max(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < a.size(); ++j) {
    best = std::max(best, b[j] - a[j]);
    out[j] = best;
  }
  return out;
}

bool gains(double before, double after) {
  return after - before > 1e-9 * (1.0 + std::abs(after));
}

}  // namespace

WxEnvironment wx_line_env(const Environment& env, const LineIndexSet& starts, WxRoute route) {
  require(!starts.empty(), ErrorKind::kInvalidArgument, "line index set is empty");
  require(env.vanishes_at_left(), ErrorKind::kInvalidArgument,
          "environment must vanish at the left endpoint");
  for (std::size_t p = 0; p < starts.size(); ++p) {
    require(starts[p] >= 1 && starts[p] <= env.line_count(), ErrorKind::kInvalidArgument,
            "line index out of range");
    require(p == 0 || starts[p] > starts[p - 1], ErrorKind::kInvalidArgument,
            "line indices must be strictly increasing");
  }
  // The W lines are piecewise linear only on the refined grid of the Pitman
  // iteration; both routes report values there.
  const Environment w = w_tau_I(env, starts);
  const Grid& grid = w.grid();
  std::vector<std::vector<double>> lines;
  if (route == WxRoute::kPitman) {
    for (std::size_t p = 0; p < starts.size(); ++p) lines.push_back(w.lines()[p]);
    return {Environment(grid, std::move(lines)), starts};
  }
  // A piecewise linear environment has the same LPP values on any finer grid.
  const Environment fine = env.resampled(grid);
  std::vector<double> prev(grid.size(), 0.0);
  std::vector<PointOnLine> from;
  for (int line : starts) {
    from.push_back(PointOnLine{grid.front(), line});
    const auto total = multipoint_profile(fine, from, 1);
    std::vector<double> g(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      require(total[j].is_finite(), ErrorKind::kNoOptimizer, "line-start value is minus infinity");
      g[j] = total[j].value() - prev[j];
      prev[j] = total[j].value();
    }
    lines.push_back(std::move(g));
  }
  return {Environment(grid, std::move(lines)), starts};
}

std::vector<Interval> increase_support(const PLFunction& A) {
  std::vector<Interval> out;
  const Grid& g = A.grid();
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (!gains(A.at(j - 1), A.at(j))) continue;
    if (!out.empty() && out.back().hi == g[j - 1]) {
      out.back().hi = g[j];
    } else {
      out.push_back({g[j - 1], g[j]});
    }
  }
  return out;
}

DifferenceProfile difference_profile_line(const Environment& env, int i1, int i2) {
  require(i1 < i2, ErrorKind::kInvalidArgument, "need i1 < i2");
  require(i1 >= 1 && i2 <= env.line_count(), ErrorKind::kInvalidArgument, "line index out of range");
  const WxEnvironment wx = wx_line_env(env, {i1, i2});
  const Grid& grid = wx.lines.grid();
  const Environment fine = env.resampled(grid);
  const auto top = lpp_profile(fine, {grid.front(), i1}, 1);
  const auto bottom = lpp_profile(fine, {grid.front(), i2}, 1);
  std::vector<double> a(grid.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = bottom[j] - top[j];
  DifferenceProfile out{PLFunction(grid, std::move(a)), wx.lines.line(1), wx.lines.line(2), {}, 0.0};
  const auto best = running_max(out.g1.values(), out.g2.values());
  for (std::size_t j = 0; j < best.size(); ++j) {
    out.running_max_residual = std::max(out.running_max_residual, std::abs(out.A.at(j) - best[j]));
  }
  out.support = increase_support(out.A);
  return out;
}

DifferenceProfile difference_profile_spatial(const Environment& env, double x1, double x2) {
  require(x1 < x2, ErrorKind::kInvalidArgument, "need x1 < x2");
  const Grid& grid = env.grid();
  const std::size_t s1 = grid.index_of(x1);
  const std::size_t s2 = grid.index_of(x2);
  const int n = env.line_count();
  const auto p1 = lpp_profile(env, {x1, n}, 1);
  const auto p2 = lpp_profile(env, {x2, n}, 1);
  const Grid tail = grid.suffix(s2);
  std::vector<double> a(tail.size());
  std::vector<double> g1(tail.size());
  for (std::size_t j = 0; j < tail.size(); ++j) {
    g1[j] = p1[j + s2 - s1];
    a[j] = p2[j] - g1[j];
  }
  // Spatial wx lines: g1 + g2 is the two-path value from (x1, n), (x2, n).
  const std::vector<PointOnLine> starts{{x1, n}, {x2, n}};
  std::vector<double> g2(tail.size());
  if (n >= 2) {
    const auto pair = multipoint_profile(env, starts, 1);
    for (std::size_t j = 0; j < tail.size(); ++j) {
      g2[j] = pair[j].is_finite() ? pair[j].value() - g1[j]
                                  : -std::numeric_limits<double>::infinity();
    }
  } else {
    std::fill(g2.begin(), g2.end(), -std::numeric_limits<double>::infinity());
  }
  DifferenceProfile out{PLFunction(tail, std::move(a)), PLFunction(tail, std::move(g1)),
                        PLFunction(tail, std::move(g2)), {}, 0.0};
  const auto best = running_max(out.g1.values(), out.g2.values());
  for (std::size_t j = 0; j < best.size(); ++j) {
    const double r = std::abs(out.A.at(j) - best[j]);
    out.running_max_residual = std::max(out.running_max_residual,
                                        std::isfinite(r) ? r : std::numeric_limits<double>::infinity());
  }
  out.support = increase_support(out.A);
  return out;
}

std::vector<double> record_times(const PLFunction& g1, const PLFunction& g2, double tol) {
  require(g1.grid().same_as(g2.grid()), ErrorKind::kInvalidArgument, "lines must share a grid");
  std::vector<double> out;
  double best = g2.at(0) - g1.at(0);
  for (std::size_t j = 1; j < g1.size(); ++j) {
    const double d = g2.at(j) - g1.at(j);
    if (d - best > tol * (1.0 + std::abs(d))) out.push_back(g1.grid()[j]);
    best = std::max(best, d);
  }
  return out;
}

DimensionEstimate support_dimension(const DifferenceProfile& profile,
                                    const std::vector<double>& scales) {
  require(scales.size() >= 3, ErrorKind::kInvalidArgument, "need at least three scales");
  const Grid& g = profile.A.grid();
  require(g.size() >= 2, ErrorKind::kInvalidArgument, "profile needs at least two grid points");
  double finest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < g.size(); ++j) finest = std::min(finest, g[j] - g[j - 1]);
  for (double eps : scales) {
    require(eps > 0 && eps >= finest * (1 - 1e-9), ErrorKind::kInvalidArgument,
            "scale finer than the grid");
  }
  DimensionEstimate out;
  out.scales = scales;
  std::vector<double> mids;
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (gains(profile.A.at(j - 1), profile.A.at(j))) mids.push_back(0.5 * (g[j - 1] + g[j]));
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (double eps : scales) {
    std::set<long long> boxes;
    for (double m : mids) boxes.insert(static_cast<long long>(std::floor((m - g.front()) / eps)));
    out.counts.push_back(boxes.size());
    if (!boxes.empty()) {
      xs.push_back(std::log(1.0 / eps));
      ys.push_back(std::log(static_cast<double>(boxes.size())));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double den = n * sxx - sx * sx;
    if (den > 0) out.slope = (n * sxy - sx * sy) / den;
  }
  return out;
}

TwoWedgeResult two_wedge(const Environment& env, double a1, double a2) {
  require(env.line_count() == 2, ErrorKind::kInvalidArgument, "two-wedge needs exactly two lines");
  require(env.vanishes_at_left(), ErrorKind::kInvalidArgument,
          "environment must vanish at the left endpoint");
  require(a1 > a2, ErrorKind::kInvalidArgument, "need a1 > a2");
  const Grid& grid = env.grid();
  const auto f1 = env.values(1);
  const auto from2 = lpp_profile(env, {grid.front(), 2}, 1);
  const std::size_t m = grid.size();
  std::vector<double> m1(m), m2(m), h(m);
  std::size_t tau = m;
  for (std::size_t j = 0; j < m; ++j) {
    m1[j] = a1 + f1[j];
    m2[j] = a2 + from2[j];
    h[j] = std::max(m1[j], m2[j]);
    if (tau == m && m2[j] >= m1[j]) tau = j;
  }
  TwoWedgeResult out;
  out.crossed = tau < m;
  out.tau = out.crossed ? grid[tau] : grid.back();
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) {
      const double drop = (m2[j - 1] - m1[j - 1]) - (m2[j] - m1[j]);
      out.monotonicity_violation = std::max(out.monotonicity_violation, drop);
    }
    const double piece = j < tau ? m1[j] : m2[j];
    out.decomposition_error = std::max(out.decomposition_error, std::abs(h[j] - piece));
  }
  out.H = PLFunction(grid, std::move(h));
  out.M1 = PLFunction(grid, std::move(m1));
  out.M2 = PLFunction(grid, std::move(m2));
  return out;
}

namespace {

struct WindowIndex {
  std::size_t lo;
  std::size_t hi;
};

void centred_variance(const std::vector<std::vector<double>>& per_line, double unit,
                      std::vector<double>& out) {
  out.clear();
  for (const auto& v : per_line) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out.push_back(ss / static_cast<double>(v.size() - 1) / unit);
  }
}

std::vector<double> pooled_normalized(const std::vector<std::vector<double>>& per_line,
                                      double step) {
  std::vector<double> out;
  for (const auto& v : per_line) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) out.push_back((x - mean) / std::sqrt(step));
  }
  return out;
}

void validate(const MainComparisonConfig& c) {
  const auto k = c.starts.size();
  require(k >= 1, ErrorKind::kInvalidArgument, "need at least one start");
  require(static_cast<int>(k) <= c.env_lines, ErrorKind::kInvalidArgument,
          "more starts than lines");
  require(c.grid_step > 0 && c.variance > 0 && c.replicates >= 1, ErrorKind::kInvalidArgument,
          "step, variance and replicates must be positive");
  require(std::is_sorted(c.starts.begin(), c.starts.end()) &&
              std::adjacent_find(c.starts.begin(), c.starts.end()) == c.starts.end(),
          ErrorKind::kInvalidArgument, "starts must be strictly increasing");
  require(c.starts.front() >= 0 && c.window.lo > c.starts.back() && c.window.hi > c.window.lo &&
              c.window.hi <= c.horizon,
          ErrorKind::kInvalidArgument, "window must lie right of the starts inside the horizon");
  const double points = c.horizon / c.grid_step * static_cast<double>(c.env_lines);
  require(points <= 5e7, ErrorKind::kCapacity, "environment too large");
}

}  // namespace

std::vector<std::vector<double>> brownian_comparison_increments(const MainComparisonConfig& config,
                                                                const Seed& seed) {
  validate(config);
  const int k = static_cast<int>(config.starts.size());
  const double width = config.window.hi - config.window.lo;
  const Grid grid = Grid::with_step(0.0, 1.0 + width, config.grid_step);
  const std::size_t lo = grid.index_of(1.0);
  const std::size_t hi = grid.size() - 1;
  std::vector<std::vector<double>> out(static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Environment b = sample_brownian_env(grid, k, config.variance, seed.substream(r));
    for (int i = 1; i <= k; ++i) {
      const auto prof = lpp_profile(b, {0.0, i}, 1);
      auto& dst = out[static_cast<std::size_t>(i - 1)];
      for (std::size_t j = lo; j < hi; ++j) dst.push_back(prof[j + 1] - prof[j]);
    }
  }
  return out;
}

MainComparisonReport main_comparison_stats(const MainComparisonConfig& config, const Seed& seed) {
  validate(config);
  const std::size_t k = config.starts.size();
  const Grid grid = Grid::with_step(0.0, config.horizon, config.grid_step);
  const std::size_t lo = grid.index_of(config.window.lo);
  const std::size_t hi = grid.index_of(config.window.hi);
  std::vector<std::vector<double>> lpp_inc(k);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Environment env =
        sample_brownian_env(grid, config.env_lines, config.variance, seed.substream(2 * r));
    for (std::size_t i = 0; i < k; ++i) {
      const double x = config.starts[i];
      const std::size_t s = grid.index_of(x);
      const auto prof = lpp_profile(env, {grid[s], config.env_lines}, 1);
      for (std::size_t j = lo; j < hi; ++j) lpp_inc[i].push_back(prof[j + 1 - s] - prof[j - s]);
    }
  }
  const auto b_inc = brownian_comparison_increments(config, seed.substream(0xB0B));
  MainComparisonReport out;
  const double unit = config.variance * config.grid_step;
  centred_variance(lpp_inc, unit, out.landscape_variance);
  centred_variance(b_inc, unit, out.brownian_variance);
  for (std::size_t i = 0; i < k; ++i) {
    out.variance_ratio.push_back(out.landscape_variance[i] / out.brownian_variance[i]);
  }
  const auto a = pooled_normalized(lpp_inc, config.grid_step);
  const auto b = pooled_normalized(b_inc, config.grid_step);
  const auto ks = ks_two_sample(a, b);
  out.ks_statistic = ks.statistic;
  out.ks_p_value = ks.p_value;
  out.increments = a.size();
  return out;
}

}  // namespace lpplab
