#include "lpplab/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "lpplab/landscape.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/pitman.hpp"

namespace lpplab::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Relative gap between two LPP values; matching minus infinities count as equal.
double gap(LppValue a, LppValue b) {
  if (!a.is_finite() || !b.is_finite()) return a.is_finite() == b.is_finite() ? 0.0 : kInf;
  return std::abs(a.value() - b.value()) / (1.0 + std::abs(a.value()));
}

struct CaseSetup {
  Rng rng;
  Environment env;
};

CaseSetup setup(const Corpus& corpus, std::size_t c) {
  Rng rng = make_rng(corpus.seed.substream(c));
  const int n = uniform_int(rng, corpus.min_lines, corpus.max_lines);
  const std::size_t m = uniform_size(rng, corpus.min_grid_points, corpus.max_grid_points);
  Environment env = random_environment(rng, n, m);
  return {std::move(rng), std::move(env)};
}

// Runs body on every case and reduces the per-case residuals by max.
TestReport run_cases(const char* name, std::size_t cases, const Seed& seed, double tol,
                     const std::function<double(std::size_t)>& body) {
  const auto start = Clock::now();
  std::vector<double> worst(cases, 0.0);
  parallel_for(cases, [&](std::size_t c) { worst[c] = body(c); });
  double stat = 0.0;
  std::size_t failing = 0;
  for (double w : worst) {
    stat = std::max(stat, std::isnan(w) ? kInf : w);
    failing += !(w <= tol);
  }
  return make_report(name, stat, tol, cases, seed, seconds_since(start),
                     "failing_cases=" + std::to_string(failing));
}

// All nondecreasing k-tuples drawn from sorted candidates.
void multisets(const std::vector<std::size_t>& items, std::size_t k,
               std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t p, std::size_t from) {
    if (p == k) {
      out.push_back(pick);
      return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
      pick[p] = items[i];
      rec(p + 1, i);
    }
  };
  rec(0, 0);
}

std::vector<std::size_t> sorted_indices(Rng& rng, std::size_t k, std::size_t m) {
  std::vector<std::size_t> v(k);
  for (auto& x : v) x = uniform_size(rng, 0, m - 1);
  std::sort(v.begin(), v.end());
  return v;
}

Permutation random_local_permutation(Rng& rng, int n, int a, int b) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin() + (a - 1), p.begin() + b, rng);
  return Permutation(std::move(p));
}

}  // namespace

Environment random_environment(Rng& rng, int lines, std::size_t grid_points) {
  std::uniform_real_distribution<double> gap_dist(0.05, 1.0);
  std::vector<double> t(grid_points, 0.0);
  for (std::size_t j = 1; j < grid_points; ++j) t[j] = t[j - 1] + gap_dist(rng);
  const Grid grid(std::move(t));
  std::vector<std::vector<double>> values;
  for (int i = 0; i < lines; ++i) values.push_back(sample_brownian_path(grid, 1.0, rng));
  return Environment(grid, std::move(values));
}

LatticeArray random_array(Rng& rng, std::size_t columns, std::size_t rows, int max_entry) {
  std::vector<double> e(columns * rows);
  for (auto& x : e) x = uniform_int(rng, 0, max_entry);
  return LatticeArray(columns, rows, std::move(e));
}

TestReport rsk_isometry(const Corpus& corpus, double tol) {
  return run_cases("rsk-isometry", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    const std::size_t m = env.grid().size();
    const Environment w = apply_w_tau(env, Permutation::reversal(n));
    // Every tuple over the left endpoint plus three random grid times.
    std::set<std::size_t> pool{0};
    while (pool.size() < std::min<std::size_t>(4, m)) pool.insert(uniform_size(rng, 1, m - 1));
    const std::vector<std::size_t> times(pool.begin(), pool.end());
    double worst = 0.0;
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<std::vector<std::size_t>> tuples;
      multisets(times, k, tuples);
      for (const auto& s : tuples) {
        for (const auto& e : tuples) {
          bool ok = true;
          for (std::size_t p = 0; p < k; ++p) ok = ok && s[p] <= e[p];
          if (!ok) continue;
          EndpointTuple ep;
          for (std::size_t p = 0; p < k; ++p) {
            ep.starts.push_back({env.grid()[s[p]], n});
            ep.ends.push_back({env.grid()[e[p]], 1});
          }
          worst = std::max(worst, gap(multipoint_lpp(env, ep), multipoint_lpp(w, ep)));
        }
      }
    }
    return worst;
  });
}

TestReport localized_isometry(const Corpus& corpus, double tol) {
  return run_cases("localized-isometry", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    const std::size_t m = env.grid().size();
    const int a = uniform_int(rng, 1, n - 1);
    const int b = uniform_int(rng, a + 1, n);
    const Environment w = apply_w_tau(env, random_local_permutation(rng, n, a, b));
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 3));
      const auto s = sorted_indices(rng, k, m);
      auto e = sorted_indices(rng, k, m);
      EndpointTuple ep;
      for (std::size_t p = 0; p < k; ++p) {
        e[p] = std::max(e[p], s[p]);
        ep.starts.push_back({env.grid()[s[p]], uniform_int(rng, b, n)});
        ep.ends.push_back({env.grid()[e[p]], uniform_int(rng, 1, a)});
      }
      worst = std::max(worst, gap(multipoint_lpp(env, ep), multipoint_lpp(w, ep)));
    }
    return worst;
  });
}

TestReport metric_composition(const Corpus& corpus, double tol) {
  return run_cases("metric-composition", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    const std::size_t m = env.grid().size();
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      const int j = uniform_int(rng, 1, n - 1);
      const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 2));
      const auto s = sorted_indices(rng, k, m);
      EndpointTuple ep;
      std::size_t prev_end = 0;
      for (std::size_t p = 0; p < k; ++p) {
        std::size_t e = std::min(m - 1, s[p] + uniform_size(rng, 0, 25));
        e = std::max(e, prev_end);
        prev_end = e;
        ep.starts.push_back({env.grid()[s[p]], uniform_int(rng, j + 1, n)});
        ep.ends.push_back({env.grid()[e], uniform_int(rng, 1, j)});
      }
      const auto check = metric_composition_check(env, ep, j);
      worst = std::max(worst, gap(check.direct, check.composed));
    }
    return worst;
  });
}

TestReport word_independence(const Corpus& corpus, double tol) {
  std::vector<Permutation> perms;
  std::vector<int> base{1, 2, 3, 4};
  do {
    perms.emplace_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  Corpus fixed = corpus;
  fixed.min_lines = fixed.max_lines = 4;
  auto report = run_cases("word-independence", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(fixed, c);
    double worst = 0.0;
    for (const auto& tau : perms) {
      const auto w1 = reduced_word(tau, WordStrategy::kFirstDescent);
      const auto w2 = reduced_word(tau, WordStrategy::kLastDescent);
      const Environment a = apply_word(env, w1);
      const Environment b = apply_word(env, w2);
      const Grid both = a.grid().refined(std::vector<double>(b.grid().points().begin(),
                                                             b.grid().points().end()));
      const Environment ra = a.resampled(both);
      const Environment rb = b.resampled(both);
      for (int l = 1; l <= 4; ++l) {
        for (std::size_t j = 0; j < both.size(); ++j) {
          worst = std::max(worst, std::abs(ra.value(l, j) - rb.value(l, j)));
        }
      }
    }
    return worst;
  });
  std::size_t distinct = 0;
  for (const auto& tau : perms) {
    distinct += reduced_word(tau, WordStrategy::kFirstDescent) !=
                reduced_word(tau, WordStrategy::kLastDescent);
  }
  report.detail += " permutations_with_distinct_words=" + std::to_string(distinct);
  return report;
}

TestReport w_lemma(const Corpus& corpus, double tol) {
  return run_cases("w-lemma", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= i; ++j) {
        const Environment w = w_tau_ij(env, i, j).resampled(env.grid());
        const auto direct = lpp_profile(env, {env.grid().front(), i}, j);
        for (std::size_t y = 0; y < direct.size(); ++y) {
          worst = std::max(worst, std::abs(w.value(j, y) - direct[y]) / (1.0 + std::abs(direct[y])));
        }
      }
    }
    return worst;
  });
}

TestReport top_lines(const Corpus& corpus, double tol) {
  return run_cases("top-lines", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    double worst = 0.0;
    // Every nonempty subset of at most four lines.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      LineIndexSet set;
      for (int l = 1; l <= n; ++l) {
        if (mask & (1u << (l - 1))) set.push_back(l);
      }
      if (set.size() > 4) continue;
      const Environment w = w_tau_I(env, set).resampled(env.grid());
      std::vector<PointOnLine> starts;
      std::vector<double> partial(env.grid().size(), 0.0);
      for (std::size_t l = 0; l < set.size(); ++l) {
        starts.push_back({env.grid().front(), set[l]});
        const auto direct = multipoint_profile(env, starts, 1);
        for (std::size_t y = 0; y < direct.size(); ++y) {
          partial[y] += w.value(static_cast<int>(l) + 1, y);
          worst = std::max(worst, gap(direct[y], LppValue(partial[y])));
        }
      }
    }
    return worst;
  });
}

TestReport array_isometry(std::size_t cases, const Seed& seed, double tol) {
  return run_cases("array-isometry", cases, seed, tol, [&](std::size_t c) {
    Rng rng = make_rng(seed.substream(c));
    const auto n = uniform_size(rng, 1, 3);
    const auto m = uniform_size(rng, n, 5);
    const LatticeArray g = random_array(rng, m, n, 5);
    const LatticeArray wg = array_wg(g);
    double worst = 0.0;
    const int rows = static_cast<int>(n);
    for (unsigned a = 1; a < (1u << rows); ++a) {
      for (unsigned b = 1; b < (1u << rows); ++b) {
        if (std::popcount(a) != std::popcount(b)) continue;
        std::vector<int> I, J;
        for (int r = rows; r >= 1; --r) {
          if (a & (1u << (r - 1))) I.push_back(r);
          if (b & (1u << (r - 1))) J.push_back(r);
        }
        worst = std::max(worst, gap(array_lpp(g, I, J), array_lpp(wg, I, J)));
      }
    }
    return worst;
  });
}

TestReport side_to_side(const Corpus& corpus, double tol) {
  return run_cases("side-to-side", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    const double t = env.grid()[uniform_size(rng, 1, env.grid().size() - 1)];
    const LatticeArray w = side_to_side_array(env, t);
    double worst = 0.0;
    for (unsigned a = 1; a < (1u << n); ++a) {
      for (unsigned b = 1; b < (1u << n); ++b) {
        if (std::popcount(a) != std::popcount(b)) continue;
        std::vector<int> I, J;
        for (int r = n; r >= 1; --r) {
          if (a & (1u << (r - 1))) I.push_back(r);
          if (b & (1u << (r - 1))) J.push_back(r);
        }
        worst = std::max(worst, gap(side_lpp(env, t, I, J), array_lpp(w, I, J)));
      }
    }
    return worst;
  });
}

TestReport line_difference(const Corpus& corpus, double tol) {
  return run_cases("line-difference", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(corpus, c);
    const int n = env.line_count();
    const int i1 = uniform_int(rng, 1, n - 1);
    const int i2 = uniform_int(rng, i1 + 1, n);
    const DifferenceProfile prof = difference_profile_line(env, i1, i2);
    double scale = 1.0;
    for (double v : prof.A.values()) scale = std::max(scale, 1.0 + std::abs(v));
    double worst = prof.running_max_residual / scale;
    // The Pitman route must give the same lines.
    const WxEnvironment alt = wx_line_env(env, {i1, i2}, WxRoute::kPitman);
    for (int l = 1; l <= 2; ++l) {
      const auto ref = l == 1 ? prof.g1.values() : prof.g2.values();
      for (std::size_t y = 0; y < ref.size(); ++y) {
        worst = std::max(worst, std::abs(alt.lines.value(l, y) - ref[y]) / (1.0 + std::abs(ref[y])));
      }
    }
    // Support cells end exactly where g2 - g1 sets a new running maximum.
    std::vector<double> ends;
    const Grid& g = prof.A.grid();
    for (const auto& iv : prof.support) {
      for (std::size_t j = g.index_of(iv.lo) + 1; j <= g.index_of(iv.hi); ++j) ends.push_back(g[j]);
    }
    if (ends != record_times(prof.g1, prof.g2, 1e-9)) worst = kInf;
    return worst;
  });
}

TestReport two_wedge_decomposition(const Corpus& corpus, double tol) {
  Corpus fixed = corpus;
  fixed.min_lines = fixed.max_lines = 2;
  return run_cases("two-wedge", corpus.cases, corpus.seed, tol, [&](std::size_t c) {
    auto [rng, env] = setup(fixed, c);
    const double a2 = -std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const TwoWedgeResult r = two_wedge(env, 0.0, a2);
    return std::max(r.monotonicity_violation, r.decomposition_error);
  });
}

std::vector<TestReport> run_identity_suite(const Seed& seed, std::size_t cases) {
  auto corpus = [&](std::uint64_t id, int lo, int hi, std::size_t gmin, std::size_t gmax) {
    return Corpus{cases, lo, hi, gmin, gmax, seed.substream(id)};
  };
  std::vector<TestReport> out;
  out.push_back(rsk_isometry(corpus(1, 2, 5, 10, 100)));
  out.push_back(localized_isometry(corpus(2, 2, 5, 10, 100)));
  out.push_back(metric_composition(corpus(3, 2, 5, 10, 100)));
  out.push_back(word_independence(corpus(4, 4, 4, 10, 100)));
  out.push_back(w_lemma(corpus(5, 1, 4, 10, 100)));
  out.push_back(top_lines(corpus(6, 1, 4, 10, 100)));
  out.push_back(array_isometry(cases, seed.substream(7)));
  out.push_back(side_to_side(corpus(8, 1, 4, 5, 30)));
  out.push_back(line_difference(corpus(9, 2, 6, 50, 400)));
  out.push_back(two_wedge_decomposition(corpus(10, 2, 2, 50, 400)));
  return out;
}

}  // namespace lpplab::verify
