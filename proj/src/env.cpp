#include "lpplab/env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lpplab/errors.hpp"

namespace lpplab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kOutOfDomain: return "out-of-domain";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kNoOptimizer: return "no-optimizer";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
  }
  return "unknown";
}

namespace {

double snap_tolerance(const std::vector<double>& p) {
  const double scale = std::max({1.0, std::abs(p.front()), std::abs(p.back())});
  return 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

Grid::Grid(std::vector<double> points) {
  require(points.size() >= 2, ErrorKind::kValidation, "grid must contain at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(std::isfinite(points[i]), ErrorKind::kValidation, "grid points must be finite");
    if (i > 0) {
      require(points[i] > points[i - 1], ErrorKind::kValidation,
              "grid points must be strictly increasing");
    }
  }
  points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

Grid Grid::uniform(double a, double b, std::size_t m) {
  require(m >= 2, ErrorKind::kInvalidArgument, "uniform grid needs at least two points");
  require(b > a, ErrorKind::kInvalidArgument, "uniform grid needs a < b");
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1);
  }
  p.back() = b;
  return Grid(std::move(p));
}

Grid Grid::with_step(double a, double b, double step) {
  require(step > 0 && b > a, ErrorKind::kInvalidArgument, "grid step and span must be positive");
  const double cells = (b - a) / step;
  const auto whole = static_cast<std::size_t>(std::llround(cells));
  if (std::abs(cells - static_cast<double>(whole)) < 1e-9 * std::max(1.0, cells)) {
    return uniform(a, b, whole + 1);
  }
  std::vector<double> p;
  for (std::size_t i = 0; a + step * static_cast<double>(i) <= b; ++i) {
    p.push_back(a + step * static_cast<double>(i));
  }
  return Grid(std::move(p));
}

std::span<const double> Grid::points() const noexcept {
  if (!points_) return {};
  return {points_->data(), points_->size()};
}

std::optional<std::size_t> Grid::find(double t) const noexcept {
  if (!points_) return std::nullopt;
  const auto& p = *points_;
  const auto it = std::lower_bound(p.begin(), p.end(), t);
  const double tol = snap_tolerance(p);
  std::optional<std::size_t> best;
  double best_gap = tol;
  auto consider = [&](std::vector<double>::const_iterator c) {
    if (c < p.begin() || c >= p.end()) return;
    const double gap = std::abs(*c - t);
    if (gap <= best_gap) {
      best_gap = gap;
      best = static_cast<std::size_t>(c - p.begin());
    }
  };
  consider(it);
  if (it != p.begin()) consider(it - 1);
  return best;
}

std::size_t Grid::index_of(double t) const {
  const auto idx = find(t);
  if (!idx) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "time " << t << " is not a grid point";
    fail(ErrorKind::kInvalidArgument, msg.str());
  }
  return *idx;
}

std::size_t Grid::cell_of(double t) const {
  const auto& p = *points_;
  require(t >= p.front() - snap_tolerance(p) && t <= p.back() + snap_tolerance(p),
          ErrorKind::kOutOfDomain, "time outside the grid span");
  if (t >= p.back()) return p.size() - 1;
  const auto it = std::upper_bound(p.begin(), p.end(), t);
  if (it == p.begin()) return 0;
  return static_cast<std::size_t>(it - p.begin()) - 1;
}

bool Grid::same_as(const Grid& other) const noexcept {
  if (points_ == other.points_) return true;
  if (!points_ || !other.points_) return false;
  return *points_ == *other.points_;
}

Grid Grid::refined(std::vector<double> extra) const {
  if (extra.empty()) return *this;
  std::sort(extra.begin(), extra.end());
  std::vector<double> merged;
  merged.reserve(size() + extra.size());
  std::merge(points_->begin(), points_->end(), extra.begin(), extra.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return Grid(std::move(merged));
}

Grid Grid::suffix(std::size_t first) const {
  require(first < size(), ErrorKind::kInvalidArgument, "grid suffix out of range");
  if (first == 0) return *this;
  return Grid(std::vector<double>(points_->begin() + static_cast<std::ptrdiff_t>(first),
                                  points_->end()));
}

Grid Grid::shifted(double delta) const {
  std::vector<double> p(*points_);
  for (double& x : p) x += delta;
  return Grid(std::move(p));
}

PLFunction::PLFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), ErrorKind::kValidation,
          "function values do not match grid size");
}

double PLFunction::operator()(double t) const {
  require(grid_.size() > 0, ErrorKind::kOutOfDomain, "empty function");
  if (const auto idx = grid_.find(t)) return values_[*idx];
  require(t >= grid_.front() && t <= grid_.back(), ErrorKind::kOutOfDomain,
          "evaluation outside the grid span");
  const std::size_t j = grid_.cell_of(t);
  const double t0 = grid_[j];
  const double t1 = grid_[j + 1];
  const double w = (t - t0) / (t1 - t0);
  return values_[j] + w * (values_[j + 1] - values_[j]);
}

PLFunction PLFunction::recenter(double a) const {
  const std::size_t first = grid_.index_of(a);
  require(first + 1 < grid_.size(), ErrorKind::kOutOfDomain, "recentering at the right endpoint");
  const double base = values_[first];
  std::vector<double> pts;
  std::vector<double> vals;
  for (std::size_t i = first; i < grid_.size(); ++i) {
    pts.push_back(i == first ? 0.0 : grid_[i] - grid_[first]);
    vals.push_back(i == first ? 0.0 : values_[i] - base);
  }
  return PLFunction(Grid(std::move(pts)), std::move(vals));
}

PLFunction PLFunction::resampled(const Grid& other) const {
  if (other.same_as(grid_)) return *this;
  std::vector<double> vals(other.size());
  for (std::size_t i = 0; i < other.size(); ++i) vals[i] = (*this)(other[i]);
  return PLFunction(other, std::move(vals));
}

Environment::Environment(Grid grid, std::vector<std::vector<double>> lines)
    : grid_(std::move(grid)), lines_(std::move(lines)) {
  require(!lines_.empty(), ErrorKind::kValidation, "environment needs at least one line");
  for (const auto& l : lines_) {
    require(l.size() == grid_.size(), ErrorKind::kValidation,
            "line length does not match grid size");
  }
}

Environment::Environment(const std::vector<PLFunction>& lines) {
  require(!lines.empty(), ErrorKind::kValidation, "environment needs at least one line");
  grid_ = lines.front().grid();
  for (const auto& f : lines) {
    require(f.grid().same_as(grid_), ErrorKind::kInvalidArgument, "lines must share a grid");
    lines_.emplace_back(f.values().begin(), f.values().end());
  }
}

std::span<const double> Environment::values(int line) const {
  require(line >= 1 && line <= line_count(), ErrorKind::kInvalidArgument, "line index out of range");
  return lines_[line - 1];
}

PLFunction Environment::line(int line) const {
  const auto v = values(line);
  return PLFunction(grid_, std::vector<double>(v.begin(), v.end()));
}

double Environment::eval(int l, double t) const { return line(l)(t); }

bool Environment::vanishes_at_left() const noexcept {
  return std::all_of(lines_.begin(), lines_.end(), [](const auto& l) { return l.front() == 0.0; });
}

Environment Environment::resampled(const Grid& other) const {
  if (other.same_as(grid_)) return *this;
  std::vector<std::vector<double>> out;
  out.reserve(lines_.size());
  for (int i = 1; i <= line_count(); ++i) {
    const auto f = line(i).resampled(other);
    out.emplace_back(f.values().begin(), f.values().end());
  }
  return Environment(other, std::move(out));
}

Environment Environment::recentered(double a) const {
  std::vector<PLFunction> out;
  for (int i = 1; i <= line_count(); ++i) out.push_back(line(i).recenter(a));
  // Recentered lines have equal point sets but separately built grids.
  Grid shared = out.front().grid();
  std::vector<std::vector<double>> vals;
  for (const auto& f : out) vals.emplace_back(f.values().begin(), f.values().end());
  return Environment(shared, std::move(vals));
}

Environment Environment::top(int count) const {
  require(count >= 1 && count <= line_count(), ErrorKind::kInvalidArgument, "line count out of range");
  return Environment(grid_, std::vector<std::vector<double>>(lines_.begin(), lines_.begin() + count));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed Seed::substream(std::uint64_t index) const noexcept {
  return Seed{root, splitmix64(stream ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

Rng make_rng(const Seed& seed) {
  return Rng(splitmix64(splitmix64(seed.root) ^ seed.stream));
}

std::vector<double> sample_brownian_path(const Grid& grid, double variance, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double sd = std::sqrt(variance * (grid[j] - grid[j - 1]));
    v[j] = v[j - 1] + sd * normal(rng);
  }
  return v;
}

Environment sample_brownian_env(const Grid& grid, int lines, double variance, const Seed& seed) {
  require(lines >= 1, ErrorKind::kInvalidArgument, "need at least one line");
  require(variance > 0 && std::isfinite(variance), ErrorKind::kInvalidArgument,
          "variance must be positive");
  require(grid.size() >= 2, ErrorKind::kInvalidArgument, "grid needs at least two points");
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(lines));
  for (int i = 1; i <= lines; ++i) {
    Rng rng = make_rng(seed.substream(static_cast<std::uint64_t>(i)));
    out.push_back(sample_brownian_path(grid, variance, rng));
  }
  return Environment(grid, std::move(out));
}

}  // namespace lpplab
