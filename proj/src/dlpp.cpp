#include "lpplab/dlpp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "lpplab/errors.hpp"

namespace lpplab {

namespace {

bool strictly_decreasing(std::span<const int> v) {
  for (std::size_t p = 1; p < v.size(); ++p) {
    if (v[p] >= v[p - 1]) return false;
  }
  return true;
}

}  // namespace

LatticeArray::LatticeArray(std::size_t columns, std::size_t rows, std::vector<double> row_major)
    : columns_(columns), rows_(rows), entries_(std::move(row_major)) {
  require(columns_ >= 1 && rows_ >= 1, ErrorKind::kValidation, "array must be nonempty");
  require(entries_.size() == columns_ * rows_, ErrorKind::kValidation,
          "array entry count does not match its shape");
}

LatticeArray::LatticeArray(std::size_t columns, std::size_t rows)
    : LatticeArray(columns, rows, std::vector<double>(columns * rows, 0.0)) {}

LppValue array_lpp(const LatticeArray& g, std::span<const int> I, std::span<const int> J) {
  require(!I.empty() && I.size() == J.size(), ErrorKind::kInvalidArgument,
          "row tuples must be nonempty and of equal length");
  const int n = static_cast<int>(g.rows());
  const std::size_t k = I.size();
  for (std::size_t p = 0; p < k; ++p) {
    require(I[p] >= 1 && I[p] <= n && J[p] >= 1 && J[p] <= n, ErrorKind::kInvalidArgument,
            "row index out of range");
    if (p > 0) {
      require(I[p] <= I[p - 1] && J[p] <= J[p - 1], ErrorKind::kInvalidArgument,
              "row tuples must be nonincreasing");
    }
  }
  if (!strictly_decreasing(I) || !strictly_decreasing(J)) return LppValue();
  for (std::size_t p = 0; p < k; ++p) {
    if (J[p] > I[p]) return LppValue();
  }
  // prefix[c][r] = sum of column c over rows 1..r.
  const std::size_t m = g.columns();
  std::vector<std::vector<double>> prefix(m + 1, std::vector<double>(g.rows() + 1, 0.0));
  for (std::size_t c = 1; c <= m; ++c) {
    for (std::size_t r = 1; r <= g.rows(); ++r) prefix[c][r] = prefix[c][r - 1] + g(c, r);
  }
  auto colsum = [&](std::size_t c, int lo, int hi) {
    return prefix[c][static_cast<std::size_t>(hi)] - prefix[c][static_cast<std::size_t>(lo - 1)];
  };
  // State: rows at which each path leaves the previous column.
  std::map<std::vector<int>, double> cur{{std::vector<int>(I.begin(), I.end()), 0.0}};
  for (std::size_t c = 1; c <= m; ++c) {
    std::map<std::vector<int>, double> nxt;
    for (const auto& [entry, val] : cur) {
      std::vector<int> exit(k);
      std::function<void(std::size_t, double)> rec = [&](std::size_t p, double acc) {
        if (p == k) {
          auto [it, fresh] = nxt.try_emplace(exit, acc);
          if (!fresh) it->second = std::max(it->second, acc);
          return;
        }
        const int floor_row = p + 1 < k ? std::max(J[p], entry[p + 1] + 1) : J[p];
        for (int r = floor_row; r <= entry[p]; ++r) {
          exit[p] = r;
          rec(p + 1, acc + colsum(c, r, entry[p]));
        }
      };
      rec(0, val);
    }
    cur.swap(nxt);
  }
  const auto it = cur.find(std::vector<int>(J.begin(), J.end()));
  return it == cur.end() ? LppValue() : LppValue(it->second);
}

LppValue star_lpp(const LatticeArray& g, int i, int j, int k) {
  const int n = static_cast<int>(g.rows());
  require(k >= 1 && i - k + 1 >= 1 && i <= n && j >= 1 && j + k - 1 <= n,
          ErrorKind::kInvalidArgument, "star tuple leaves the array");
  std::vector<int> I(static_cast<std::size_t>(k));
  std::vector<int> J(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    I[static_cast<std::size_t>(p)] = i - p;
    J[static_cast<std::size_t>(p)] = j + k - 1 - p;
  }
  return array_lpp(g, I, J);
}

namespace {

LatticeArray difference_corner_sums(std::size_t n, const std::function<double(int, int)>& star) {
  std::vector<std::vector<double>> s(n + 2, std::vector<double>(n + 2, 0.0));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t l = 1; l <= n; ++l) s[k][l] = star(static_cast<int>(k), static_cast<int>(l));
  }
  LatticeArray out(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t l = 1; l <= n; ++l) {
      out(k, l) = s[k][l] - s[k + 1][l] - s[k][l + 1] + s[k + 1][l + 1];
    }
  }
  return out;
}

double finite_or_fail(LppValue v) {
  require(v.is_finite(), ErrorKind::kNoOptimizer, "star value is minus infinity");
  return v.value();
}

}  // namespace

LatticeArray array_wg(const LatticeArray& g) {
  const int n = static_cast<int>(g.rows());
  require(g.columns() >= g.rows(), ErrorKind::kInvalidArgument,
          "WG needs at least as many columns as rows");
  return difference_corner_sums(g.rows(), [&](int k, int l) {
    return finite_or_fail(star_lpp(g, n, l, n + 1 - std::max(k, l)));
  });
}

LppValue side_lpp(const Environment& env, double t, std::span<const int> I, std::span<const int> J) {
  require(!I.empty() && I.size() == J.size(), ErrorKind::kInvalidArgument,
          "line tuples must be nonempty and of equal length");
  for (std::size_t p = 0; p < I.size(); ++p) {
    if (J[p] > I[p]) return LppValue();
  }
  EndpointTuple ep;
  const double t0 = env.grid().front();
  for (std::size_t p = I.size(); p-- > 0;) {
    ep.starts.push_back(PointOnLine{t0, I[p]});
    ep.ends.push_back(PointOnLine{t, J[p]});
  }
  return multipoint_lpp(env, ep);
}

LatticeArray side_to_side_array(const Environment& env, double t) {
  const int n = env.line_count();
  require(n <= 4, ErrorKind::kCapacity, "side-to-side array supports at most 4 lines");
  const double t0 = env.grid().front();
  return difference_corner_sums(static_cast<std::size_t>(n), [&](int k, int l) {
    const auto count = static_cast<std::size_t>(n + 1 - std::max(k, l));
    EndpointTuple ep{std::vector<PointOnLine>(count, PointOnLine{t0, n}),
                     std::vector<PointOnLine>(count, PointOnLine{t, l})};
    return finite_or_fail(multipoint_lpp(env, ep));
  });
}

GTPattern::GTPattern(int n) : n_(n), x_(static_cast<std::size_t>(n * (n + 1) / 2), 0.0) {
  require(n >= 1, ErrorKind::kInvalidArgument, "pattern size must be positive");
}

double GTPattern::interlacing_violation() const noexcept {
  double worst = 0.0;
  for (int j = 2; j <= n_; ++j) {
    for (int i = 1; i < j; ++i) {
      worst = std::max(worst, (*this)(i, j - 1) - (*this)(i, j));
      worst = std::max(worst, (*this)(i + 1, j) - (*this)(i, j - 1));
    }
  }
  return worst;
}

GTPattern gt_pattern(const Environment& env, double t) {
  const int n = env.line_count();
  require(n <= 4, ErrorKind::kCapacity, "patterns support at most 4 lines");
  const double t0 = env.grid().front();
  GTPattern out(n);
  for (int j = 1; j <= n; ++j) {
    double prev = 0.0;
    for (int i = 1; i <= j; ++i) {
      const auto count = static_cast<std::size_t>(i);
      EndpointTuple ep{std::vector<PointOnLine>(count, PointOnLine{t0, n}),
                       std::vector<PointOnLine>(count, PointOnLine{t, n - j + 1})};
      const double total = finite_or_fail(multipoint_lpp(env, ep));
      out(i, j) = total - prev;
      prev = total;
    }
  }
  return out;
}

LatticeArray discretize(const Environment& env, double t, std::size_t m) {
  require(m >= 1, ErrorKind::kInvalidArgument, "need at least one column");
  const double t0 = env.grid().front();
  require(t > t0 && t <= env.grid().back(), ErrorKind::kOutOfDomain, "time outside the grid");
  const auto n = static_cast<std::size_t>(env.line_count());
  LatticeArray out(m, n);
  for (std::size_t r = 1; r <= n; ++r) {
    const PLFunction f = env.line(static_cast<int>(r));
    double prev = f(t0);
    for (std::size_t c = 1; c <= m; ++c) {
      const double x = c == m ? t : t0 + (t - t0) * static_cast<double>(c) / static_cast<double>(m);
      const double v = f(x);
      out(c, r) = v - prev;
      prev = v;
    }
  }
  return out;
}

}  // namespace lpplab
