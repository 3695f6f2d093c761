#pragma once

// Brute-force enumerators used as independent references in the tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lpplab/dlpp.hpp"
#include "lpplab/env.hpp"
#include "lpplab/lpp.hpp"

namespace oracle {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// A semi-discrete path as the line occupied on each grid cell [t_c, t_{c+1})
// for c in [start, end). Jumps happen only at grid points.
struct CellPath {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<int> lines;  // lines[c - start]
};

inline double cell_length(const lpplab::Environment& env, const CellPath& p) {
  double sum = 0.0;
  for (std::size_t c = p.start; c < p.end; ++c) {
    const int l = p.lines[c - p.start];
    sum += env.value(l, c + 1) - env.value(l, c);
  }
  return sum;
}

// Every path from (start, from_line) to (end, to_line): nonincreasing line
// sequences over the cells with values in [to_line, from_line].
inline std::vector<CellPath> all_paths(std::size_t start, std::size_t end, int from_line,
                                       int to_line) {
  std::vector<CellPath> out;
  if (from_line < to_line) return out;
  if (start == end) {
    out.push_back({start, end, {}});
    return out;
  }
  CellPath cur{start, end, std::vector<int>(end - start)};
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int hi) {
    if (pos == cur.lines.size()) {
      out.push_back(cur);
      return;
    }
    for (int l = hi; l >= to_line; --l) {
      cur.lines[pos] = l;
      rec(pos + 1, l);
    }
  };
  rec(0, from_line);
  return out;
}

// Path a must sit on a strictly smaller line than path b on every cell both
// occupy.
inline bool above(const CellPath& a, const CellPath& b) {
  const std::size_t lo = std::max(a.start, b.start);
  const std::size_t hi = std::min(a.end, b.end);
  for (std::size_t c = lo; c < hi; ++c) {
    if (a.lines[c - a.start] >= b.lines[c - b.start]) return false;
  }
  return true;
}

// Maximum over disjoint tuples of the summed lengths; paths are listed top
// first. Minus infinity when no tuple exists.
inline double multipoint(const lpplab::Environment& env, const lpplab::EndpointTuple& e) {
  const auto& g = env.grid();
  std::vector<std::vector<CellPath>> candidates;
  for (std::size_t p = 0; p < e.size(); ++p) {
    candidates.push_back(all_paths(g.index_of(e.starts[p].time), g.index_of(e.ends[p].time),
                                   e.starts[p].line, e.ends[p].line));
  }
  double best = kNegInf;
  std::vector<const CellPath*> chosen(e.size());
  std::function<void(std::size_t, double)> rec = [&](std::size_t p, double sum) {
    if (p == e.size()) {
      best = std::max(best, sum);
      return;
    }
    for (const auto& path : candidates[p]) {
      bool ok = true;
      for (std::size_t q = 0; q < p && ok; ++q) ok = above(*chosen[q], path);
      if (!ok) continue;
      chosen[p] = &path;
      rec(p + 1, sum + cell_length(env, path));
    }
  };
  rec(0, 0.0);
  return best;
}

inline double single(const lpplab::Environment& env, lpplab::PointOnLine p,
                     lpplab::PointOnLine q) {
  return multipoint(env, {{p}, {q}});
}

// Lattice path from (1, from_row) to (m, to_row) with right and up steps, as
// the list of visited (column, row) cells.
using Cells = std::vector<std::pair<std::size_t, int>>;

inline std::vector<Cells> lattice_paths(std::size_t columns, int from_row, int to_row) {
  std::vector<Cells> out;
  if (from_row < to_row) return out;
  Cells cur{{1, from_row}};
  std::function<void(std::size_t, int)> rec = [&](std::size_t c, int r) {
    if (c == columns && r == to_row) {
      out.push_back(cur);
      return;
    }
    if (c < columns) {
      cur.emplace_back(c + 1, r);
      rec(c + 1, r);
      cur.pop_back();
    }
    if (r > to_row) {
      cur.emplace_back(c, r - 1);
      rec(c, r - 1);
      cur.pop_back();
    }
  };
  rec(1, from_row);
  return out;
}

// Maximum over vertex-disjoint tuples from (1, I_p) to (m, J_p).
inline double array_multipoint(const lpplab::LatticeArray& g, const std::vector<int>& I,
                               const std::vector<int>& J) {
  std::vector<std::vector<Cells>> candidates;
  for (std::size_t p = 0; p < I.size(); ++p) {
    candidates.push_back(lattice_paths(g.columns(), I[p], J[p]));
  }
  double best = kNegInf;
  std::set<std::pair<std::size_t, int>> used;
  std::function<void(std::size_t, double)> rec = [&](std::size_t p, double sum) {
    if (p == I.size()) {
      best = std::max(best, sum);
      return;
    }
    for (const auto& path : candidates[p]) {
      bool ok = true;
      for (const auto& cell : path) ok = ok && !used.count(cell);
      if (!ok) continue;
      double s = 0.0;
      for (const auto& [c, r] : path) s += g(c, static_cast<std::size_t>(r));
      for (const auto& cell : path) used.insert(cell);
      rec(p + 1, sum + s);
      for (const auto& cell : path) used.erase(cell);
    }
  };
  rec(0, 0.0);
  return best;
}

inline bool same(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

inline bool same(lpplab::LppValue a, double b, double tol) {
  return same(a.is_finite() ? a.value() : kNegInf, b, tol);
}

}  // namespace oracle
