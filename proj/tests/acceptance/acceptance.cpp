// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has to finish inside its runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lpplab/landscape.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/mc.hpp"
#include "lpplab/verify.hpp"
#include "oracle.hpp"

using namespace lpplab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Folds identity-check reports into one outcome.
Outcome from_reports(const std::vector<TestReport>& reports) {
  Outcome o{true, ""};
  for (const auto& r : reports) {
    o.pass = o.pass && r.pass;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += r.name + " worst=" + fmt(r.statistic) + " tol=" + fmt(r.threshold) + " N=" +
                std::to_string(r.sample_size) + " " + r.detail;
  }
  return o;
}

// Shared corpus for the isometry and composition criteria.
verify::Corpus rsk_corpus(std::size_t cases) { return {cases, 2, 5, 10, 100, Seed{1001, 0}}; }

Outcome oracle_equivalence() {
  const std::size_t instances = 1000;
  std::size_t failures = 0;
  std::size_t finite = 0;
  double worst = 0.0;
  for (std::size_t c = 0; c < instances; ++c) {
    Rng rng = make_rng(Seed{1003, 0}.substream(c));
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
    const int k = std::uniform_int_distribution<int>(1, 2)(rng);
    const auto env = verify::random_environment(rng, n, m);
    const auto& g = env.grid();
    std::uniform_int_distribution<std::size_t> idx(0, m - 1);
    std::uniform_int_distribution<int> line(1, n);
    std::vector<std::size_t> s(k), e(k);
    for (auto& x : s) x = idx(rng);
    for (auto& x : e) x = idx(rng);
    std::sort(s.begin(), s.end());
    std::sort(e.begin(), e.end());
    // Both lists sorted, so max(s_p, e_p) is nondecreasing in p.
    EndpointTuple ep;
    for (int p = 0; p < k; ++p) {
      int a = line(rng);
      int b = line(rng);
      if (a < b) std::swap(a, b);
      ep.starts.push_back({g[s[p]], a});
      ep.ends.push_back({g[std::max(s[p], e[p])], b});
    }
    const double expected = oracle::multipoint(env, ep);
    const LppValue got = multipoint_lpp(env, ep);
    if (std::isfinite(expected)) {
      ++finite;
      if (got.is_finite()) worst = std::max(worst, std::abs(got.value() - expected));
    }
    if (!oracle::same(got, expected, 1e-12)) ++failures;
  }
  return {failures == 0, "instances=" + std::to_string(instances) + " finite=" +
                             std::to_string(finite) + " worst=" + fmt(worst) +
                             " failures=" + std::to_string(failures)};
}

Outcome dimension_half() {
  const std::size_t points = (std::size_t{1} << 20) + 1;
  const Grid grid = Grid::uniform(0.0, 1.0, points);
  std::vector<double> scales;
  for (int e = 4; e <= 9; ++e) scales.push_back(std::ldexp(1.0, -e));
  const int seeds = 20;
  double sum = 0.0;
  int counted = 0;
  std::string slopes;
  for (int s = 0; s < seeds; ++s) {
    const Environment env = sample_brownian_env(grid, 2, 1.0, Seed{1011, static_cast<std::uint64_t>(s)});
    const DifferenceProfile prof = difference_profile_line(env, 1, 2);
    const DimensionEstimate est = support_dimension(prof, scales);
    if (est.slope) {
      sum += *est.slope;
      ++counted;
      slopes += (slopes.empty() ? "" : ",") + fmt(*est.slope);
    }
  }
  const double mean = counted == seeds ? sum / seeds : NAN;
  return {counted == seeds && mean >= 0.40 && mean <= 0.60,
          "mean_slope=" + fmt(mean) + " seeds=" + std::to_string(counted) + " slopes=" + slopes};
}

Outcome main_comparison() {
  MainComparisonConfig config;
  config.env_lines = 200;
  const auto r = main_comparison_stats(config, Seed{1012, 0});
  bool ok = !r.variance_ratio.empty();
  std::string ratios;
  for (double v : r.variance_ratio) {
    ok = ok && v >= 0.85 && v <= 1.15;
    ratios += (ratios.empty() ? "" : ",") + fmt(v);
  }
  return {ok, "variance_ratio=" + ratios + " increments=" + std::to_string(r.increments) +
                  " ks=" + fmt(r.ks_statistic) + " ks_p=" + fmt(r.ks_p_value)};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by id.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "rsk-isometry", 60,
       [] { return from_reports({verify::rsk_isometry(rsk_corpus(500), 1e-9)}); }},
      {2, "localized-isometry+metric-composition", 60,
       [] {
         return from_reports({verify::localized_isometry(rsk_corpus(500), 1e-9),
                              verify::metric_composition(rsk_corpus(500), 1e-9)});
       }},
      {3, "oracle-equivalence", 30, oracle_equivalence},
      {4, "word-independence", 30,
       [] {
         return from_reports(
             {verify::word_independence({50, 4, 4, 10, 100, Seed{1004, 0}}, 1e-12)});
       }},
      {5, "w-lemma+top-lines", 60,
       [] {
         const verify::Corpus c{200, 1, 4, 10, 100, Seed{1005, 0}};
         return from_reports({verify::w_lemma(c, 1e-9), verify::top_lines(c, 1e-9)});
       }},
      {6, "array-isometry+side-to-side", 60,
       [] {
         return from_reports({verify::array_isometry(200, Seed{1006, 0}, 1e-9),
                              verify::side_to_side({100, 1, 4, 5, 30, Seed{1006, 1}}, 1e-9)});
       }},
      {7, "line-difference-identity", 60,
       [] {
         return from_reports(
             {verify::line_difference({200, 2, 6, 50, 400, Seed{1007, 0}}, 1e-9)});
       }},
      {8, "two-wedge-decomposition", 60,
       [] {
         return from_reports(
             {verify::two_wedge_decomposition({1000, 2, 2, 50, 400, Seed{1008, 0}}, 1e-12)});
       }},
      {9, "pitman-2m-x", 120,
       [] {
         const auto r = pitman_2mx_test(1e-4, 20000, Seed{1, 0});
         return Outcome{r.statistic < 0.03, "statistic=" + fmt(r.statistic) + " " + r.detail};
       }},
      {10, "gue-minors", 120,
       [] {
         const auto r = gue_minors_test(3, 1.0, 10000, Seed{1, 0});
         return Outcome{r.pass && r.statistic < 0.03, "statistic=" + fmt(r.statistic) + " " + r.detail};
       }},
      {11, "support-dimension", 120, dimension_half},
      {12, "main-comparison-variance", 180, main_comparison},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("AC%-2d %s %s (%.1fs of %.0fs) %s%s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_seconds, o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
