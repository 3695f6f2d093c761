#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lpplab/env.hpp"

namespace lpplab {

struct PointOnLine {
  double time = 0.0;
  int line = 1;
};

// A last passage value; the default is minus infinity (no admissible path).
class LppValue {
 public:
  constexpr LppValue() noexcept = default;
  constexpr explicit LppValue(double v) noexcept : v_(v) {}

  static constexpr LppValue minus_infinity() noexcept { return LppValue(); }

  constexpr bool is_finite() const noexcept {
    return v_ != -std::numeric_limits<double>::infinity();
  }
  constexpr double value() const noexcept { return v_; }

  friend constexpr LppValue operator+(LppValue a, LppValue b) noexcept {
    if (!a.is_finite() || !b.is_finite()) return LppValue();
    return LppValue(a.v_ + b.v_);
  }
  friend constexpr bool operator==(LppValue a, LppValue b) noexcept { return a.v_ == b.v_; }

 private:
  double v_ = -std::numeric_limits<double>::infinity();
};

// Path i runs from starts[i] to ends[i]. Paths are listed top first: path 1
// must lie strictly above path 2 (smaller line index) wherever both are alive.
struct EndpointTuple {
  std::vector<PointOnLine> starts;
  std::vector<PointOnLine> ends;

  std::size_t size() const noexcept { return starts.size(); }
};

// Path from (start_time, bottom_line) to (end_time, top_line) that leaves line
// l at jump_time(l). jump_times[l - top_line - 1] holds the jump off line l
// for l = top_line + 1 .. bottom_line, nonincreasing in l.
struct JumpPath {
  double start_time = 0.0;
  double end_time = 0.0;
  int top_line = 1;
  int bottom_line = 1;
  std::vector<double> jump_times;

  // Time at which the path leaves line l (end_time for the top line).
  double jump_time(int l) const;
  // Line occupied at time t in [start_time, end_time], right-continuous.
  int line_at(double t) const;
};

struct DisjointTuple {
  std::vector<JumpPath> paths;
};

double path_length(const Environment& env, const JumpPath& path);
double path_length(const Environment& env, const DisjointTuple& tuple);
bool is_disjoint(const DisjointTuple& tuple);

// f[p -> q] over single paths.
LppValue lpp_value(const Environment& env, PointOnLine p, PointOnLine q);
// f[p -> (t_j, end_line)] for every grid point t_j >= p.time, in grid order.
std::vector<double> lpp_profile(const Environment& env, PointOnLine p, int end_line);

// f[starts -> ends] over disjoint k-tuples; supports k <= 4.
LppValue multipoint_lpp(const Environment& env, const EndpointTuple& endpoints);

// Values f[starts -> (y, end_line)^k] for grid points y >= the last start
// time, in grid order. All start lines must be >= end_line.
std::vector<LppValue> multipoint_profile(const Environment& env,
                                         std::span<const PointOnLine> starts, int end_line);

// Rightmost optimizer; raises NoOptimizer when the value is minus infinity.
DisjointTuple rightmost_optimizer(const Environment& env, const EndpointTuple& endpoints);

struct CompositionCheck {
  LppValue direct;
  LppValue composed;
  double abs_diff = 0.0;
};

// Compares f[p -> q] with max over z of f[p -> (z, j+1)] + f[(z, j) -> q].
CompositionCheck metric_composition_check(const Environment& env, const EndpointTuple& endpoints,
                                          int j);

struct MinusInfinityResult {
  LppValue value;
  // Largest grid time z with the rebased value constant on [leftmost, z].
  std::optional<double> stabilization_point;
  // Rebased values g(z) for grid points z left of the first end time.
  std::vector<double> rebased;
};

// Starts (z, lines[0]), ..., (z, lines[l-1]) with lines strictly increasing
// (top first), rebased by sum_i f_{lines[i]}(z).
MinusInfinityResult lpp_from_minus_infinity(const Environment& env, std::span<const int> lines,
                                            std::span<const PointOnLine> ends, double tol);

}  // namespace lpplab
