#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace lpplab {

// Strictly increasing sample times. Copies share storage, so environments
// derived from one another can compare grids cheaply.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<double> points);

  // m equally spaced points from a to b inclusive.
  static Grid uniform(double a, double b, std::size_t m);
  // Points a, a + step, ... up to b (b included when it lands on the lattice).
  static Grid with_step(double a, double b, double step);

  std::span<const double> points() const noexcept;
  std::size_t size() const noexcept { return points_ ? points_->size() : 0; }
  double operator[](std::size_t i) const noexcept { return (*points_)[i]; }
  double front() const noexcept { return points_->front(); }
  double back() const noexcept { return points_->back(); }

  // Index of t when t is a grid point (up to a few ulps of the grid scale).
  std::optional<std::size_t> find(double t) const noexcept;
  // Same as find but raises InvalidArgument when t is not a grid point.
  std::size_t index_of(double t) const;
  // Largest j with points[j] <= t; requires front() <= t <= back().
  std::size_t cell_of(double t) const;

  bool same_as(const Grid& other) const noexcept;

  // Union with extra points strictly inside the span.
  Grid refined(std::vector<double> extra) const;
  // Points from index `first` on.
  Grid suffix(std::size_t first) const;
  Grid shifted(double delta) const;

 private:
  std::shared_ptr<const std::vector<double>> points_;
};

// Continuous function, linear between consecutive grid points.
class PLFunction {
 public:
  PLFunction() = default;
  PLFunction(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  // Raises OutOfDomain outside [front, back].
  double operator()(double t) const;

  // x -> f(x + a) - f(a) on the grid points at or right of a, shifted to 0.
  PLFunction recenter(double a) const;
  // Values at the points of `other`, which must lie inside the span.
  PLFunction resampled(const Grid& other) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Lines f_1 (top) ... f_n (bottom) sampled on a shared grid. Line indices are
// 1-based everywhere in the public API.
class Environment {
 public:
  Environment() = default;
  Environment(Grid grid, std::vector<std::vector<double>> lines);
  explicit Environment(const std::vector<PLFunction>& lines);

  const Grid& grid() const noexcept { return grid_; }
  int line_count() const noexcept { return static_cast<int>(lines_.size()); }

  std::span<const double> values(int line) const;
  double value(int line, std::size_t grid_index) const { return lines_[line - 1][grid_index]; }
  PLFunction line(int line) const;
  double eval(int line, double t) const;

  bool vanishes_at_left() const noexcept;

  Environment resampled(const Grid& other) const;
  Environment recentered(double a) const;
  // The first `count` lines.
  Environment top(int count) const;

  std::vector<std::vector<double>>& mutable_lines() noexcept { return lines_; }
  const std::vector<std::vector<double>>& lines() const noexcept { return lines_; }

 private:
  Grid grid_;
  std::vector<std::vector<double>> lines_;
};

// Randomness is addressed by (root, stream); replicate r of an experiment
// always draws from the same stream regardless of how work is scheduled.
struct Seed {
  std::uint64_t root = 0;
  std::uint64_t stream = 0;

  Seed substream(std::uint64_t index) const noexcept;
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
Rng make_rng(const Seed& seed);

// Independent Brownian lines with the given variance, pinned to 0 at the left
// endpoint. Line i draws from seed.substream(i).
Environment sample_brownian_env(const Grid& grid, int lines, double variance, const Seed& seed);

// One Brownian path on the grid, pinned to 0 at the left endpoint.
std::vector<double> sample_brownian_path(const Grid& grid, double variance, Rng& rng);

}  // namespace lpplab
