#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "lpplab/dlpp.hpp"
#include "lpplab/verify.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lpplab;

namespace {

// Strictly decreasing row tuples of length 1..n from {1..n}, bottom first.
std::vector<std::vector<int>> row_tuples(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int hi) {
    if (!cur.empty()) out.push_back(cur);
    for (int r = hi; r >= 1; --r) {
      cur.push_back(r);
      rec(r - 1);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

// a = G(1,1), b = G(1,2), c = G(2,1), d = G(2,2).
LatticeArray abcd() { return LatticeArray(2, 2, {1, 3, 2, 4}); }

double total(const LatticeArray& g) {
  double s = 0.0;
  for (double v : g.entries()) s += v;
  return s;
}

}  // namespace

TEST_CASE("array last passage examples") {
  const auto g = abcd();
  CHECK(g(1, 2) == 2.0);
  CHECK(g(2, 1) == 3.0);
  const int i2[1] = {2};
  const int j1[1] = {1};
  CHECK(array_lpp(g, i2, j1).value() == 9.0);
  CHECK(oracle::array_multipoint(g, {2}, {1}) == 9.0);
  const int rows[2] = {2, 1};
  CHECK(array_lpp(g, rows, rows).value() == 10.0);
  const LatticeArray one_row(3, 1, {1, 2, 3});
  const int ones[2] = {1, 1};
  CHECK_FALSE(array_lpp(one_row, ones, ones).is_finite());
  const int bad[2] = {1, 2};
  CHECK_KIND(array_lpp(g, bad, rows), ErrorKind::kInvalidArgument);
  CHECK_KIND(array_lpp(g, i2, rows), ErrorKind::kInvalidArgument);
}

TEST_CASE("array DP matches lattice path enumeration") {
  auto rng = make_rng({31, 0});
  for (int c = 0; c < 60; ++c) {
    const std::size_t rows = 1 + c % 3;
    const std::size_t cols = 1 + (c / 3) % 4;
    const auto g = verify::random_array(rng, cols, rows, 9);
    for (const auto& I : row_tuples(static_cast<int>(rows))) {
      for (const auto& J : row_tuples(static_cast<int>(rows))) {
        if (I.size() != J.size()) continue;
        CHECK(oracle::same(array_lpp(g, I, J), oracle::array_multipoint(g, I, J), 1e-12));
      }
    }
  }
}

TEST_CASE("star values") {
  auto rng = make_rng({32, 0});
  const auto g = verify::random_array(rng, 3, 3, 9);
  const int i3[1] = {3};
  const int j2[1] = {2};
  CHECK(star_lpp(g, 3, 2, 1) == array_lpp(g, i3, j2));
  CHECK(star_lpp(g, 3, 1, 3).value() == total(g));
  CHECK(oracle::array_multipoint(g, {3, 2, 1}, {3, 2, 1}) == total(g));
  CHECK_FALSE(star_lpp(g, 2, 2, 2).is_finite());
  CHECK_KIND(star_lpp(g, 4, 1, 1), ErrorKind::kInvalidArgument);
  CHECK_KIND(star_lpp(g, 2, 1, 3), ErrorKind::kInvalidArgument);
}

TEST_CASE("WG array") {
  const LatticeArray zero(3, 2);
  const auto wz = array_wg(zero);
  CHECK(wz.columns() == 2);
  CHECK(wz.rows() == 2);
  CHECK(total(wz) == 0.0);

  const LatticeArray column(4, 1, {1, 2, 3, 4});
  const auto wc = array_wg(column);
  REQUIRE(wc.columns() == 1);
  CHECK(wc(1, 1) == 10.0);

  auto rng = make_rng({33, 0});
  for (int c = 0; c < 20; ++c) {
    const auto g = verify::random_array(rng, 3, 2, 9);
    const auto wg = array_wg(g);
    for (const auto& I : row_tuples(2)) {
      for (const auto& J : row_tuples(2)) {
        if (I.size() != J.size()) continue;
        CHECK(oracle::same(array_lpp(wg, I, J), oracle::array_multipoint(g, I, J), 0.0));
      }
    }
  }
  CHECK_KIND(array_wg(LatticeArray(2, 3)), ErrorKind::kInvalidArgument);
}

TEST_CASE("side-to-side array") {
  const Environment zero(Grid::uniform(0, 1, 5),
                         std::vector<std::vector<double>>(3, std::vector<double>(5, 0.0)));
  CHECK(total(side_to_side_array(zero, 1.0)) == 0.0);

  const Environment one(Grid({0.0, 0.5, 1.0}), {{0.0, 2.0, -1.5}});
  const auto w1 = side_to_side_array(one, 1.0);
  REQUIRE(w1.columns() == 1);
  CHECK(w1(1, 1) == -1.5);

  auto rng = make_rng({34, 0});
  for (int c = 0; c < 20; ++c) {
    const int n = 2 + c % 3;
    const auto env = verify::random_environment(rng, n, 7);
    const double t = env.grid()[5];
    const auto w = side_to_side_array(env, t);
    for (const auto& I : row_tuples(n)) {
      for (const auto& J : row_tuples(n)) {
        if (I.size() != J.size()) continue;
        // Top-first endpoints for the semi-discrete oracle.
        EndpointTuple e;
        for (std::size_t p = I.size(); p-- > 0;) {
          e.starts.push_back({env.grid()[0], I[p]});
          e.ends.push_back({t, J[p]});
        }
        const double f = oracle::multipoint(env, e);
        const double tol = std::isfinite(f) ? 1e-9 * (1 + std::abs(f)) : 0.0;
        CHECK(oracle::same(array_lpp(w, I, J), f, tol));
        CHECK(oracle::same(side_lpp(env, t, I, J), f, tol));
      }
    }
  }
  CHECK_KIND(side_to_side_array(zero, 0.3), ErrorKind::kInvalidArgument);
}

TEST_CASE("Gelfand-Tsetlin patterns") {
  const Environment one(Grid({0.0, 0.5, 1.0}), {{0.0, 2.0, -1.5}});
  CHECK(gt_pattern(one, 0.5)(1, 1) == 2.0);

  const Environment zero(Grid::uniform(0, 1, 5),
                         std::vector<std::vector<double>>(3, std::vector<double>(5, 0.0)));
  const auto zx = gt_pattern(zero, 1.0);
  for (int j = 1; j <= 3; ++j) {
    for (int i = 1; i <= j; ++i) CHECK(zx(i, j) == 0.0);
  }

  const auto g = Grid::uniform(0, 1, 41);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto env = sample_brownian_env(g, 3, 1.0, Seed{35, s});
    worst = std::max(worst, gt_pattern(env, 1.0).interlacing_violation());
  }
  // Differencing star values leaves rounding of a few ulps.
  CHECK(worst <= 1e-12);
  CHECK_KIND(gt_pattern(zero, 0.3), ErrorKind::kInvalidArgument);
}

TEST_CASE("discretized environments approach semi-discrete values") {
  const auto env = sample_brownian_env(Grid::uniform(0, 1, 11), 3, 1.0, Seed{36, 0});
  const int I[2] = {3, 2};
  const int J[2] = {2, 1};
  const EndpointTuple e{{{0, 2}, {0, 3}}, {{1, 1}, {1, 2}}};
  const double f = multipoint_lpp(env, e).value();
  double previous = INFINITY;
  for (std::size_t m : {10, 100, 1000, 10000}) {
    const auto g = discretize(env, 1.0, m);
    double biggest = 0.0;
    for (double v : g.entries()) biggest = std::max(biggest, std::abs(v));
    const double gap = std::abs(array_lpp(g, I, J).value() - f);
    CHECK(gap <= 2.0 * biggest + 1e-12);
    CHECK(gap <= previous);
    previous = gap;
  }
}
