#include "lpplab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "lpplab/errors.hpp"

namespace lpplab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPaths = 4;
constexpr std::size_t kMaxStates = std::size_t{1} << 22;

void check_line(const Environment& env, int line) {
  if (line < 1 || line > env.line_count()) {
    std::ostringstream msg;
    msg << "line " << line << " outside 1.." << env.line_count();
    fail(ErrorKind::kInvalidArgument, msg.str());
  }
}

struct PathSpec {
  std::size_t s;  // start grid index
  std::size_t e;  // end grid index
  int n;          // start line
  int m;          // end line
};

std::vector<PathSpec> validate(const Environment& env, const EndpointTuple& ep) {
  require(!ep.starts.empty(), ErrorKind::kInvalidArgument, "endpoint tuple is empty");
  require(ep.starts.size() == ep.ends.size(), ErrorKind::kInvalidArgument,
          "starts and ends differ in length");
  const Grid& g = env.grid();
  std::vector<PathSpec> specs;
  for (std::size_t p = 0; p < ep.size(); ++p) {
    const auto& a = ep.starts[p];
    const auto& b = ep.ends[p];
    check_line(env, a.line);
    check_line(env, b.line);
    PathSpec s{g.index_of(a.time), g.index_of(b.time), a.line, b.line};
    require(s.s <= s.e, ErrorKind::kInvalidArgument, "start time after end time");
    require(s.n >= s.m, ErrorKind::kInvalidArgument, "start line above end line");
    if (p > 0) {
      require(specs.back().s <= s.s, ErrorKind::kInvalidArgument,
              "start times must be nondecreasing");
      require(specs.back().e <= s.e, ErrorKind::kInvalidArgument,
              "end times must be nondecreasing");
    }
    specs.push_back(s);
  }
  return specs;
}

// Dynamic program over k-tuples of lines in the box [lo, hi]^k. Coordinate p of
// a state is the line of path p after the current cell. Paths that have not
// started sit at their start line; finished paths sit at lo.
class MultipointDp {
 public:
  MultipointDp(const Environment& env, std::vector<PathSpec> specs, bool keep_history)
      : env_(env), specs_(std::move(specs)), keep_(keep_history) {
    k_ = specs_.size();
    require(k_ <= kMaxPaths, ErrorKind::kCapacity, "at most 4 paths are supported");
    lo_ = specs_.front().m;
    hi_ = specs_.front().n;
    for (const auto& s : specs_) {
      lo_ = std::min(lo_, s.m);
      hi_ = std::max(hi_, s.n);
    }
    width_ = static_cast<std::size_t>(hi_ - lo_ + 1);
    stride_.assign(k_, 1);
    size_ = 1;
    for (std::size_t p = 0; p < k_; ++p) {
      stride_[k_ - 1 - p] = size_;
      require(size_ <= kMaxStates / width_, ErrorKind::kCapacity, "state space too large");
      size_ *= width_;
    }
    c0_ = specs_.front().s;
    c1_ = specs_.front().e;
    for (const auto& s : specs_) {
      c0_ = std::min(c0_, s.s);
      c1_ = std::max(c1_, s.e);
    }
  }

  LppValue run() {
    std::vector<int> init(k_);
    for (std::size_t p = 0; p < k_; ++p) init[p] = specs_[p].s == specs_[p].e ? lo_ : specs_[p].n;
    cur_.assign(size_, kNegInf);
    init_index_ = encode(init);
    cur_[init_index_] = 0.0;
    for (std::size_t c = c0_; c < c1_; ++c) step(c);
    exit_paths(c1_);
    return LppValue(cur_[encode(std::vector<int>(k_, lo_))]);
  }

  // Per-cell coordinates of the rightmost optimizer; result[c - c0][p].
  std::vector<std::vector<int>> backtrack() const {
    std::vector<std::vector<int>> states(c1_ - c0_);
    if (c1_ == c0_) return states;
    // Last cell: paths ending at c1 must sit at or above their end line.
    auto last_ok = [&](const std::vector<int>& o) {
      for (std::size_t p = 0; p < k_; ++p) {
        const auto& s = specs_[p];
        if (s.e == c1_ && s.s < c1_) {
          if (o[p] < s.m) return false;
        } else if (o[p] != lo_) {
          return false;
        }
      }
      return true;
    };
    states.back() = pick(history_.back(), last_ok);
    for (std::size_t c = c1_ - 1; c > c0_; --c) {
      const std::vector<int>& nxt = states[c - c0_];
      auto ok = [&](const std::vector<int>& o) {
        for (std::size_t p = 0; p < k_; ++p) {
          const auto& s = specs_[p];
          const bool now = s.s <= c && c < s.e;
          const bool before = s.s <= c - 1 && c - 1 < s.e;
          if (now && before) {
            if (nxt[p] > o[p]) return false;
          } else if (now) {
            if (o[p] != s.n) return false;
          } else if (before) {
            if (o[p] < s.m || nxt[p] != lo_) return false;
          } else if (o[p] != nxt[p]) {
            return false;
          }
        }
        return true;
      };
      states[c - 1 - c0_] = pick(history_[c - 1 - c0_], ok);
    }
    return states;
  }

  std::size_t first_cell() const noexcept { return c0_; }
  int lo() const noexcept { return lo_; }

  // Profile mode: ends all at the right endpoint, nobody exits. After each
  // cell c >= last start, record the max over states with all lines >= end_line.
  std::vector<LppValue> profile(int end_line) {
    std::vector<int> init(k_);
    for (std::size_t p = 0; p < k_; ++p) init[p] = specs_[p].n;
    cur_.assign(size_, kNegInf);
    cur_[encode(init)] = 0.0;
    std::size_t last_start = 0;
    for (const auto& s : specs_) last_start = std::max(last_start, s.s);
    std::vector<LppValue> out;
    std::vector<int> coords(k_);
    for (std::size_t c = c0_; c < c1_; ++c) {
      step(c);
      if (c < last_start) continue;
      double best = kNegInf;
      for (std::size_t idx = 0; idx < size_; ++idx) {
        if (cur_[idx] == kNegInf) continue;
        decode(idx, coords);
        bool ok = true;
        for (int l : coords) ok = ok && l >= end_line;
        if (ok) best = std::max(best, cur_[idx]);
      }
      out.emplace_back(best);
    }
    return out;
  }

 private:
  std::size_t encode(const std::vector<int>& lines) const {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < k_; ++p) idx += static_cast<std::size_t>(lines[p] - lo_) * stride_[p];
    return idx;
  }
  void decode(std::size_t idx, std::vector<int>& lines) const {
    for (std::size_t p = 0; p < k_; ++p) {
      lines[p] = lo_ + static_cast<int>(idx / stride_[p]);
      idx %= stride_[p];
    }
  }
  int coord(std::size_t idx, std::size_t p) const {
    return static_cast<int>((idx / stride_[p]) % width_);
  }

  void exit_paths(std::size_t c) {
    for (std::size_t p = 0; p < k_; ++p) {
      const auto& s = specs_[p];
      if (s.e != c || s.s >= c) continue;
      std::vector<double> nxt(size_, kNegInf);
      const auto min_off = s.m - lo_;
      for (std::size_t idx = 0; idx < size_; ++idx) {
        if (cur_[idx] == kNegInf) continue;
        const int off = coord(idx, p);
        if (off < min_off) continue;
        const std::size_t j = idx - static_cast<std::size_t>(off) * stride_[p];
        nxt[j] = std::max(nxt[j], cur_[idx]);
      }
      cur_.swap(nxt);
    }
  }

  void step(std::size_t c) {
    exit_paths(c);
    std::vector<bool> active(k_);
    for (std::size_t p = 0; p < k_; ++p) active[p] = specs_[p].s <= c && c < specs_[p].e;
    // A path may move to any line at or above its current one before the cell.
    for (std::size_t p = 0; p < k_; ++p) {
      if (!active[p]) continue;
      const std::size_t st = stride_[p];
      for (std::size_t idx = 0; idx < size_; ++idx) {
        if (coord(idx, p) != 0) continue;
        for (std::size_t v = width_ - 1; v-- > 0;) {
          double& here = cur_[idx + v * st];
          here = std::max(here, cur_[idx + (v + 1) * st]);
        }
      }
    }
    std::vector<double> inc(width_);
    for (std::size_t l = 0; l < width_; ++l) {
      const auto v = env_.values(lo_ + static_cast<int>(l));
      inc[l] = v[c + 1] - v[c];
    }
    std::vector<int> coords(k_);
    for (std::size_t idx = 0; idx < size_; ++idx) {
      double& val = cur_[idx];
      if (val == kNegInf) continue;
      decode(idx, coords);
      int prev = -1;
      double add = 0.0;
      bool ok = true;
      for (std::size_t p = 0; p < k_ && ok; ++p) {
        if (!active[p]) continue;
        if (coords[p] <= prev) ok = false;
        prev = coords[p];
        add += inc[static_cast<std::size_t>(coords[p] - lo_)];
      }
      val = ok ? val + add : kNegInf;
    }
    if (keep_) history_.push_back(cur_);
  }

  template <class Pred>
  std::vector<int> pick(const std::vector<double>& values, Pred ok) const {
    double best = kNegInf;
    std::vector<int> coords(k_);
    std::vector<int> chosen;
    for (std::size_t idx = 0; idx < size_; ++idx) {
      if (values[idx] == kNegInf) continue;
      decode(idx, coords);
      if (!ok(coords)) continue;
      // Indices increase lexicographically in (line_1, ..., line_k), so the
      // last maximiser found is the lexicographically largest.
      if (values[idx] >= best) {
        best = values[idx];
        chosen = coords;
      }
    }
    if (chosen.empty()) fail(ErrorKind::kNoOptimizer, "no admissible path tuple");
    return chosen;
  }

  const Environment& env_;
  std::vector<PathSpec> specs_;
  bool keep_;
  std::size_t k_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::size_t width_ = 0;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
  std::size_t c0_ = 0;
  std::size_t c1_ = 0;
  std::size_t init_index_ = 0;
  std::vector<double> cur_;
  std::vector<std::vector<double>> history_;
};

}  // namespace

double JumpPath::jump_time(int l) const {
  require(l >= top_line && l <= bottom_line, ErrorKind::kInvalidArgument,
          "line not visited by the path");
  if (l == top_line) return end_time;
  return jump_times[static_cast<std::size_t>(l - top_line - 1)];
}

int JumpPath::line_at(double t) const {
  for (int l = bottom_line; l > top_line; --l) {
    if (t < jump_time(l)) return l;
  }
  return top_line;
}

double path_length(const Environment& env, const JumpPath& path) {
  check_line(env, path.top_line);
  check_line(env, path.bottom_line);
  require(path.bottom_line >= path.top_line, ErrorKind::kInvalidArgument, "path goes downward");
  require(path.jump_times.size() == static_cast<std::size_t>(path.bottom_line - path.top_line),
          ErrorKind::kInvalidArgument, "wrong number of jump times");
  const Grid& g = env.grid();
  const std::size_t end = g.index_of(path.end_time);
  std::size_t left = g.index_of(path.start_time);
  double total = 0.0;
  for (int l = path.bottom_line; l >= path.top_line; --l) {
    const std::size_t right = g.index_of(path.jump_time(l));
    require(right >= left && right <= end, ErrorKind::kInvalidArgument, "jump times out of order");
    total += env.value(l, right) - env.value(l, left);
    left = right;
  }
  return total;
}

double path_length(const Environment& env, const DisjointTuple& tuple) {
  double total = 0.0;
  for (const auto& p : tuple.paths) total += path_length(env, p);
  return total;
}

bool is_disjoint(const DisjointTuple& tuple) {
  const auto& ps = tuple.paths;
  for (std::size_t a = 0; a < ps.size(); ++a) {
    for (std::size_t b = a + 1; b < ps.size(); ++b) {
      const double lo = std::max(ps[a].start_time, ps[b].start_time);
      const double hi = std::min(ps[a].end_time, ps[b].end_time);
      if (!(lo < hi)) continue;
      std::vector<double> cuts{lo, hi};
      for (const auto* p : {&ps[a], &ps[b]}) {
        for (double t : p->jump_times) {
          if (t > lo && t < hi) cuts.push_back(t);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double probes[2] = {cuts[i], 0.5 * (cuts[i] + cuts[i + 1])};
        for (double t : probes) {
          if (t <= lo) continue;
          if (ps[a].line_at(t) >= ps[b].line_at(t)) return false;
        }
      }
    }
  }
  return true;
}

std::vector<double> lpp_profile(const Environment& env, PointOnLine p, int end_line) {
  check_line(env, p.line);
  check_line(env, end_line);
  require(end_line <= p.line, ErrorKind::kInvalidArgument, "end line below start line");
  const std::size_t s = env.grid().index_of(p.time);
  const std::size_t m = env.grid().size();
  const auto width = static_cast<std::size_t>(p.line - end_line + 1);
  std::vector<const double*> rows(width);
  for (std::size_t l = 0; l < width; ++l) rows[l] = env.values(end_line + static_cast<int>(l)).data();
  // best[l] = f[p -> (t_j, end_line + l)].
  std::vector<double> best(width, 0.0);
  std::vector<double> out;
  out.reserve(m - s);
  out.push_back(0.0);
  for (std::size_t j = s + 1; j < m; ++j) {
    best[width - 1] += rows[width - 1][j] - rows[width - 1][j - 1];
    for (std::size_t l = width - 1; l-- > 0;) {
      best[l] = std::max(best[l] + (rows[l][j] - rows[l][j - 1]), best[l + 1]);
    }
    out.push_back(best[0]);
  }
  return out;
}

LppValue lpp_value(const Environment& env, PointOnLine p, PointOnLine q) {
  check_line(env, p.line);
  check_line(env, q.line);
  const std::size_t s = env.grid().index_of(p.time);
  const std::size_t e = env.grid().index_of(q.time);
  require(s <= e, ErrorKind::kInvalidArgument, "start time after end time");
  require(p.line >= q.line, ErrorKind::kInvalidArgument, "start line above end line");
  return LppValue(lpp_profile(env, p, q.line)[e - s]);
}

LppValue multipoint_lpp(const Environment& env, const EndpointTuple& endpoints) {
  auto specs = validate(env, endpoints);
  if (specs.size() == 1) {
    return lpp_value(env, endpoints.starts[0], endpoints.ends[0]);
  }
  MultipointDp dp(env, std::move(specs), false);
  return dp.run();
}

std::vector<LppValue> multipoint_profile(const Environment& env,
                                         std::span<const PointOnLine> starts, int end_line) {
  require(!starts.empty(), ErrorKind::kInvalidArgument, "no starts given");
  check_line(env, end_line);
  const Grid& g = env.grid();
  std::vector<PathSpec> specs;
  for (const auto& a : starts) {
    check_line(env, a.line);
    require(a.line >= end_line, ErrorKind::kInvalidArgument, "start line above end line");
    PathSpec s{g.index_of(a.time), g.size() - 1, a.line, end_line};
    require(specs.empty() || specs.back().s <= s.s, ErrorKind::kInvalidArgument,
            "start times must be nondecreasing");
    specs.push_back(s);
  }
  const std::size_t last = specs.back().s;
  EndpointTuple first;
  first.starts.assign(starts.begin(), starts.end());
  first.ends.assign(starts.size(), PointOnLine{g[last], end_line});
  std::vector<LppValue> out{multipoint_lpp(env, first)};
  if (last + 1 == g.size()) return out;
  MultipointDp dp(env, std::move(specs), false);
  auto rest = dp.profile(end_line);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

DisjointTuple rightmost_optimizer(const Environment& env, const EndpointTuple& endpoints) {
  auto specs = validate(env, endpoints);
  MultipointDp dp(env, specs, true);
  if (!dp.run().is_finite()) fail(ErrorKind::kNoOptimizer, "no admissible path tuple");
  const auto states = dp.backtrack();
  const Grid& g = env.grid();
  DisjointTuple out;
  for (std::size_t p = 0; p < specs.size(); ++p) {
    const auto& s = specs[p];
    JumpPath path{g[s.s], g[s.e], s.m, s.n, {}};
    // Jump off line l happens at the first cell spent strictly above l.
    for (int l = s.m + 1; l <= s.n; ++l) {
      double t = g[s.e];
      for (std::size_t c = s.s; c < s.e; ++c) {
        if (states[c - dp.first_cell()][p] < l) {
          t = g[c];
          break;
        }
      }
      path.jump_times.push_back(t);
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

CompositionCheck metric_composition_check(const Environment& env, const EndpointTuple& endpoints,
                                          int j) {
  const auto specs = validate(env, endpoints);
  for (const auto& s : specs) {
    require(s.n > j && s.m <= j, ErrorKind::kInvalidArgument,
            "split line must separate start and end lines");
  }
  const Grid& g = env.grid();
  CompositionCheck out;
  out.direct = multipoint_lpp(env, endpoints);
  const std::size_t k = specs.size();
  std::vector<std::size_t> z(k);
  EndpointTuple left;
  EndpointTuple right;
  left.starts = endpoints.starts;
  right.ends = endpoints.ends;
  left.ends.resize(k);
  right.starts.resize(k);
  double best = kNegInf;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == k) {
      for (std::size_t i = 0; i < k; ++i) {
        left.ends[i] = PointOnLine{g[z[i]], j + 1};
        right.starts[i] = PointOnLine{g[z[i]], j};
      }
      const LppValue v = multipoint_lpp(env, left) + multipoint_lpp(env, right);
      best = std::max(best, v.value());
      return;
    }
    std::size_t from = specs[p].s;
    if (p > 0) from = std::max(from, z[p - 1]);
    for (std::size_t i = from; i <= specs[p].e; ++i) {
      z[p] = i;
      rec(p + 1);
    }
  };
  rec(0);
  out.composed = LppValue(best);
  if (out.direct.is_finite() && out.composed.is_finite()) {
    out.abs_diff = std::abs(out.direct.value() - out.composed.value());
  } else if (out.direct.is_finite() != out.composed.is_finite()) {
    out.abs_diff = std::numeric_limits<double>::infinity();
  }
  return out;
}

MinusInfinityResult lpp_from_minus_infinity(const Environment& env, std::span<const int> lines,
                                            std::span<const PointOnLine> ends, double tol) {
  require(tol > 0, ErrorKind::kInvalidArgument, "tolerance must be positive");
  require(!lines.empty() && lines.size() == ends.size(), ErrorKind::kInvalidArgument,
          "need one end per start line");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    require(lines[i] > lines[i - 1], ErrorKind::kInvalidArgument,
            "start lines must be strictly increasing");
  }
  const Grid& g = env.grid();
  double first_end = ends.front().time;
  for (const auto& q : ends) first_end = std::min(first_end, q.time);
  std::size_t count = 0;
  while (count < g.size() && g[count] < first_end) ++count;
  require(count >= 1, ErrorKind::kOutOfDomain, "no grid points left of the end times");
  MinusInfinityResult out;
  EndpointTuple ep;
  ep.ends.assign(ends.begin(), ends.end());
  for (std::size_t zi = 0; zi < count; ++zi) {
    ep.starts.clear();
    double rebase = 0.0;
    for (int l : lines) {
      ep.starts.push_back(PointOnLine{g[zi], l});
      check_line(env, l);
      rebase += env.value(l, zi);
    }
    const LppValue v = multipoint_lpp(env, ep);
    out.rebased.push_back(v.is_finite() ? v.value() + rebase : kNegInf);
  }
  out.value = LppValue(out.rebased.front());
  const double base = out.rebased.front();
  std::size_t last = 0;
  while (last + 1 < count) {
    const double v = out.rebased[last + 1];
    const bool same = (v == base) || (std::isfinite(v) && std::isfinite(base) &&
                                      std::abs(v - base) <= tol);
    if (!same) break;
    ++last;
  }
  if (count >= 2 && last >= 1) out.stabilization_point = g[last];
  return out;
}

}  // namespace lpplab
