#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "lpplab/landscape.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/mc.hpp"
#include "lpplab/verify.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lpplab;

namespace {

Environment small_env() { return Environment(Grid({0.0, 0.5, 1.0}), {{0, 1, 0}, {0, -1, 2}}); }

Environment zero_env(int lines, std::size_t points) {
  return Environment(Grid::uniform(0, 1, points),
                     std::vector<std::vector<double>>(lines, std::vector<double>(points, 0.0)));
}

}  // namespace

TEST_CASE("line-start environments") {
  auto rng = make_rng({41, 0});
  const auto env = verify::random_environment(rng, 3, 8);
  const auto& g = env.grid();

  const auto one = wx_line_env(env, {1});
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(one.lines.eval(1, g[j]) == env.value(1, j));

  const auto z = wx_line_env(zero_env(3, 6), {1, 3}, WxRoute::kPitman);
  for (int l = 1; l <= 2; ++l) {
    for (double v : z.lines.values(l)) CHECK(v == 0.0);
  }

  for (int c = 0; c < 20; ++c) {
    const auto e = verify::random_environment(rng, 3, 7);
    const auto& eg = e.grid();
    const auto a = wx_line_env(e, {1, 3}, WxRoute::kMultipoint);
    const auto b = wx_line_env(e, {1, 3}, WxRoute::kPitman);
    for (std::size_t j = 0; j < eg.size(); ++j) {
      const double y = eg[j];
      const double two = oracle::multipoint(e, {{{eg[0], 1}, {eg[0], 3}}, {{y, 1}, {y, 1}}});
      CHECK(std::abs(a.lines.eval(1, y) + a.lines.eval(2, y) - two) <= 1e-9);
    }
    for (int l = 1; l <= 2; ++l) {
      for (std::size_t j = 0; j < a.lines.grid().size(); ++j) {
        const double y = a.lines.grid()[j];
        CHECK(std::abs(a.lines.value(l, j) - b.lines.eval(l, y)) <= 1e-9);
      }
    }
  }
  CHECK_KIND(wx_line_env(env, {}), ErrorKind::kInvalidArgument);
}

TEST_CASE("line-start difference profile") {
  const auto p = difference_profile_line(small_env(), 1, 2);
  CHECK(p.A(1.0) == 2.0);
  CHECK(p.running_max_residual <= 1e-12);

  const auto z = difference_profile_line(zero_env(3, 6), 1, 3);
  for (double v : z.A.values()) CHECK(v == 0.0);
  CHECK(z.support.empty());

  auto rng = make_rng({42, 0});
  for (int c = 0; c < 30; ++c) {
    const auto env = verify::random_environment(rng, 4, 30);
    const auto d = difference_profile_line(env, 2, 4);
    CHECK(d.running_max_residual <= 1e-9);
    for (std::size_t j = 1; j < d.A.size(); ++j) CHECK(d.A.at(j) >= d.A.at(j - 1) - 1e-12);
  }
  CHECK_KIND(difference_profile_line(small_env(), 2, 1), ErrorKind::kInvalidArgument);
  CHECK_KIND(difference_profile_line(small_env(), 1, 1), ErrorKind::kInvalidArgument);
}

TEST_CASE("spatial difference profile") {
  const Environment one(Grid({0.0, 0.5, 1.0, 1.5}), {{0.0, 2.0, -1.0, 4.0}});
  const auto p = difference_profile_spatial(one, 0.0, 0.5);
  for (double v : p.A.values()) CHECK(v == 0.0 - 2.0);
  CHECK_KIND(difference_profile_spatial(one, 0.5, 0.5), ErrorKind::kInvalidArgument);
  CHECK_KIND(difference_profile_spatial(one, 1.0, 0.5), ErrorKind::kInvalidArgument);

  const auto g = Grid::uniform(0, 1, 31);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto env = sample_brownian_env(g, 50, 1.0, Seed{43, s});
    const auto d = difference_profile_spatial(env, g[3], g[10]);
    for (std::size_t j = 1; j < d.A.size(); ++j) {
      worst = std::max(worst, d.A.at(j - 1) - d.A.at(j));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("support extraction and box counting") {
  const auto g = Grid::uniform(0, 1, 1025);
  std::vector<double> ramp(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) ramp[j] = g[j];
  DifferenceProfile full;
  full.A = PLFunction(g, ramp);
  full.support = increase_support(full.A);
  REQUIRE(full.support.size() == 1);
  CHECK(full.support[0].lo == 0.0);
  CHECK(full.support[0].hi == 1.0);
  const std::vector<double> scales{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  const auto est = support_dimension(full, scales);
  REQUIRE(est.slope.has_value());
  CHECK(*est.slope == doctest::Approx(1.0).epsilon(1e-9));

  DifferenceProfile flat;
  flat.A = PLFunction(g, std::vector<double>(g.size(), 3.0));
  const auto none = support_dimension(flat, scales);
  CHECK_FALSE(none.slope.has_value());
  for (auto n : none.counts) CHECK(n == 0);

  CHECK_KIND(support_dimension(full, {1.0 / 16, 1.0 / 32}), ErrorKind::kInvalidArgument);
  CHECK_KIND(support_dimension(full, {1.0 / 16, 1.0 / 32, 1.0 / 4096}),
             ErrorKind::kInvalidArgument);
}

TEST_CASE("support equals the running-max attainment set") {
  auto rng = make_rng({44, 0});
  for (int c = 0; c < 20; ++c) {
    const auto env = verify::random_environment(rng, 3, 40);
    const auto d = difference_profile_line(env, 1, 3);
    const auto records = record_times(d.g1, d.g2, 1e-9);
    for (double t : records) {
      const bool inside = std::any_of(d.support.begin(), d.support.end(), [&](const Interval& iv) {
        return iv.lo < t && t <= iv.hi;
      });
      CHECK(inside);
    }
    for (const auto& iv : d.support) {
      CHECK(std::any_of(records.begin(), records.end(), [&](double t) { return iv.lo < t && t <= iv.hi; }));
    }
  }
}

TEST_CASE("two-wedge decomposition") {
  const auto z = two_wedge(zero_env(2, 5), 0.0, -1.0);
  CHECK_FALSE(z.crossed);
  for (double v : z.H.values()) CHECK(v == 0.0);

  const auto g = Grid::uniform(0, 1, 5);
  std::vector<double> ramp(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) ramp[j] = 2 * g[j];
  const Environment env(g, {std::vector<double>(g.size(), 0.0), ramp});
  const auto r = two_wedge(env, 0.0, -1.0);
  CHECK(r.crossed);
  CHECK(r.tau == 0.5);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(r.M2.at(j) == 2 * g[j] - 1);
    CHECK(r.H.at(j) == std::max(0.0, 2 * g[j] - 1));
  }
  CHECK(r.monotonicity_violation == 0.0);
  CHECK(r.decomposition_error == 0.0);

  CHECK_KIND(two_wedge(env, -1.0, 0.0), ErrorKind::kInvalidArgument);
  CHECK_KIND(two_wedge(zero_env(3, 5), 0.0, -1.0), ErrorKind::kInvalidArgument);
}

TEST_CASE("two wedges cross on long grids") {
  // P(sup of a variance-2 Brownian motion over [0, 4e4] reaches 1) is about 0.997.
  const auto g = Grid::uniform(0, 4e4, 4001);
  int crossed = 0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    const auto env = sample_brownian_env(g, 2, 1.0, Seed{45, static_cast<std::uint64_t>(s)});
    const auto r = two_wedge(env, 0.0, -1.0);
    if (r.crossed) ++crossed;
    CHECK(r.monotonicity_violation <= 1e-12);
    CHECK(r.decomposition_error == 0.0);
  }
  CHECK(static_cast<double>(crossed) / seeds > 0.99);
}

TEST_CASE("comparison object self-calibration") {
  MainComparisonConfig config;
  const auto a = brownian_comparison_increments(config, Seed{46, 0});
  const auto b = brownian_comparison_increments(config, Seed{46, 1});
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double n1 = static_cast<double>(a[i].size());
    const double n2 = static_cast<double>(b[i].size());
    CHECK(n1 == 5000);
    CHECK(ks_two_sample(a[i], b[i]).statistic < 1.36 * std::sqrt((n1 + n2) / (n1 * n2)));
  }
}
