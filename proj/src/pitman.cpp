#include "lpplab/pitman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpplab/errors.hpp"

namespace lpplab {

namespace {

// Points inside cells where f2 - f1 climbs back through its running maximum.
std::vector<double> record_crossings(const Grid& grid, std::span<const double> f1,
                                     std::span<const double> f2) {
  std::vector<double> out;
  const double scale = std::max({1.0, std::abs(grid.front()), std::abs(grid.back())});
  const double floor_gap = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  double best = f2[0] - f1[0];
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double da = f2[j - 1] - f1[j - 1];
    const double db = f2[j] - f1[j];
    if (da < best && db > best) {
      const double ta = grid[j - 1];
      const double tb = grid[j];
      const double t = ta + (best - da) / (db - da) * (tb - ta);
      const double gap = std::max(1e-9 * (tb - ta), floor_gap);
      if (t - ta > gap && tb - t > gap) out.push_back(t);
    }
    best = std::max(best, db);
  }
  return out;
}

void check_pinned(std::span<const double> f) {
  require(f.front() == 0.0, ErrorKind::kInvalidArgument,
          "Pitman transform needs functions vanishing at the left endpoint");
}

}  // namespace

PitmanPair pitman2(const PLFunction& f1, const PLFunction& f2) {
  require(f1.grid().same_as(f2.grid()), ErrorKind::kInvalidArgument,
          "Pitman transform needs a shared grid");
  check_pinned(f1.values());
  check_pinned(f2.values());
  const Grid fine = f1.grid().refined(record_crossings(f1.grid(), f1.values(), f2.values()));
  const PLFunction g1 = f1.resampled(fine);
  const PLFunction g2 = f2.resampled(fine);
  std::vector<double> top(fine.size());
  std::vector<double> bottom(fine.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < fine.size(); ++j) {
    best = std::max(best, g2.at(j) - g1.at(j));
    top[j] = g1.at(j) + best;
    bottom[j] = g2.at(j) - best;
  }
  return {PLFunction(fine, std::move(top)), PLFunction(fine, std::move(bottom))};
}

Permutation::Permutation(std::vector<int> one_line) : images_(std::move(one_line)) {
  const int n = size();
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    require(v >= 1 && v <= n && !seen[static_cast<std::size_t>(v - 1)],
            ErrorKind::kInvalidArgument, "not a permutation");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  require(n >= 1, ErrorKind::kInvalidArgument, "permutation size must be positive");
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::sigma(int n, int i) {
  require(i >= 1 && i < n, ErrorKind::kInvalidArgument, "transposition index out of range");
  auto p = identity(n).images_;
  std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
  return Permutation(std::move(p));
}

Permutation Permutation::reversal(int n) {
  auto p = identity(n).images_;
  std::reverse(p.begin(), p.end());
  return Permutation(std::move(p));
}

int Permutation::inversions() const noexcept {
  int count = 0;
  for (std::size_t a = 0; a < images_.size(); ++a) {
    for (std::size_t b = a + 1; b < images_.size(); ++b) count += images_[a] > images_[b];
  }
  return count;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  require(a.size() == b.size(), ErrorKind::kInvalidArgument, "permutation sizes differ");
  std::vector<int> out(a.images_.size());
  for (int x = 1; x <= a.size(); ++x) out[static_cast<std::size_t>(x - 1)] = a(b(x));
  return Permutation(std::move(out));
}

std::vector<int> reduced_word(const Permutation& tau, WordStrategy strategy) {
  // A descent at i means tau = (tau sigma_i) sigma_i with one fewer inversion.
  std::vector<int> reversed;
  std::vector<int> cur = tau.one_line();
  const int n = tau.size();
  while (true) {
    int pick = 0;
    for (int i = 1; i < n; ++i) {
      if (cur[static_cast<std::size_t>(i - 1)] > cur[static_cast<std::size_t>(i)]) {
        pick = i;
        if (strategy == WordStrategy::kFirstDescent) break;
      }
    }
    if (pick == 0) break;
    std::swap(cur[static_cast<std::size_t>(pick - 1)], cur[static_cast<std::size_t>(pick)]);
    reversed.push_back(pick);
  }
  return {reversed.rbegin(), reversed.rend()};
}

Permutation word_to_permutation(int n, std::span<const int> word) {
  Permutation out = Permutation::identity(n);
  for (int i : word) out = out * Permutation::sigma(n, i);
  return out;
}

Environment apply_sigma(const Environment& env, int i) {
  require(i >= 1 && i < env.line_count(), ErrorKind::kInvalidArgument,
          "transposition index out of range");
  require(env.vanishes_at_left(), ErrorKind::kInvalidArgument,
          "Pitman transform needs lines vanishing at the left endpoint");
  const auto pair = pitman2(env.line(i), env.line(i + 1));
  const Grid& fine = pair.top.grid();
  Environment out = env.resampled(fine);
  auto& lines = out.mutable_lines();
  lines[static_cast<std::size_t>(i - 1)].assign(pair.top.values().begin(), pair.top.values().end());
  lines[static_cast<std::size_t>(i)].assign(pair.bottom.values().begin(),
                                            pair.bottom.values().end());
  return out;
}

Environment apply_word(const Environment& env, std::span<const int> word) {
  Environment out = env;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = apply_sigma(out, *it);
  return out;
}

Environment apply_w_tau(const Environment& env, const Permutation& tau) {
  require(tau.size() == env.line_count(), ErrorKind::kInvalidArgument,
          "permutation size must match the line count");
  const auto word = reduced_word(tau);
  return apply_word(env, word);
}

Permutation tau_ij(int n, int i, int j) {
  require(j >= 1 && j <= i && i <= n, ErrorKind::kInvalidArgument, "need 1 <= j <= i <= n");
  Permutation out = Permutation::identity(n);
  for (int l = j; l < i; ++l) out = out * Permutation::sigma(n, l);
  return out;
}

Environment w_tau_ij(const Environment& env, int i, int j) {
  require(j >= 1 && j <= i && i <= env.line_count(), ErrorKind::kInvalidArgument,
          "need 1 <= j <= i <= n");
  std::vector<int> word;
  for (int l = j; l < i; ++l) word.push_back(l);
  return apply_word(env, word);
}

namespace {

void check_index_set(int n, const LineIndexSet& lines) {
  require(!lines.empty(), ErrorKind::kInvalidArgument, "index set is empty");
  for (std::size_t p = 0; p < lines.size(); ++p) {
    require(lines[p] >= static_cast<int>(p) + 1 && lines[p] <= n, ErrorKind::kInvalidArgument,
            "index set entries out of range");
    require(p == 0 || lines[p] > lines[p - 1], ErrorKind::kInvalidArgument,
            "index set must be strictly increasing");
  }
}

}  // namespace

Permutation tau_I(int n, const LineIndexSet& lines) {
  check_index_set(n, lines);
  Permutation out = Permutation::identity(n);
  for (std::size_t p = lines.size(); p-- > 0;) {
    out = out * tau_ij(n, lines[p], static_cast<int>(p) + 1);
  }
  return out;
}

std::vector<int> tau_I_word(const LineIndexSet& lines) {
  std::vector<int> word;
  for (std::size_t p = lines.size(); p-- > 0;) {
    for (int l = static_cast<int>(p) + 1; l < lines[p]; ++l) word.push_back(l);
  }
  return word;
}

Environment w_tau_I(const Environment& env, const LineIndexSet& lines) {
  check_index_set(env.line_count(), lines);
  const auto word = tau_I_word(lines);
  return apply_word(env, word);
}

Environment shifted_w_tau(const Environment& env, const Permutation& tau, double a) {
  const std::size_t first = env.grid().index_of(a);
  const Environment centred = env.recentered(a);
  const Environment w = apply_w_tau(centred, tau);
  // Back to absolute times, reusing the source points exactly.
  std::vector<double> times;
  times.reserve(w.grid().size());
  for (const double x : w.grid().points()) {
    const auto i = centred.grid().find(x);
    times.push_back(i ? env.grid()[first + *i] : x + a);
  }
  return Environment(Grid(std::move(times)), w.lines());
}

}  // namespace lpplab
