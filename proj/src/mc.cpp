#include "lpplab/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "lpplab/dlpp.hpp"
#include "lpplab/errors.hpp"
#include "lpplab/pitman.hpp"

namespace lpplab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Reference draws use streams far away from replicate indices.
constexpr std::uint64_t kReferenceStream = std::uint64_t{1} << 40;

}  // namespace

TestReport make_report(std::string name, double statistic, double threshold,
                       std::size_t sample_size, const Seed& seed, double runtime_seconds,
                       std::string detail) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.pass = statistic <= threshold;
  r.sample_size = sample_size;
  r.seed = seed;
  r.runtime_seconds = runtime_seconds;
  r.detail = std::move(detail);
  return r;
}

double kolmogorov_survival(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), ErrorKind::kInvalidArgument, "KS needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      v = x[i];
    } else {
      v = y[j];
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_two_sample(const SampleSet& a, const SampleSet& b) {
  return ks_two_sample(a.values, b.values);
}

KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf) {
  require(!a.empty(), ErrorKind::kInvalidArgument, "KS needs a nonempty sample");
  std::vector<double> x(a.begin(), a.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double rn = std::sqrt(n);
  return {d, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d)};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double chi3_cdf(double r, double t) {
  if (r <= 0) return 0.0;
  const double u = r / std::sqrt(t);
  return std::erf(u / std::numbers::sqrt2) -
         std::sqrt(2.0 / std::numbers::pi) * u * std::exp(-0.5 * u * u);
}

double sample_correlation(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size() && a.size() >= 2, ErrorKind::kInvalidArgument,
          "correlation needs paired samples");
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

SampleSet sample_bessel3(double t, std::size_t n, const Seed& seed) {
  require(t > 0 && std::isfinite(t), ErrorKind::kInvalidArgument, "time must be positive");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(t));
  SampleSet out{{}, "bessel3", seed};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = normal(rng), y = normal(rng), z = normal(rng);
    out.values.push_back(std::sqrt(x * x + y * y + z * z));
  }
  return out;
}

SampleSet sample_gaussian(double sd, std::size_t n, const Seed& seed) {
  require(sd > 0, ErrorKind::kInvalidArgument, "standard deviation must be positive");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, sd);
  SampleSet out{{}, "gaussian", seed};
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(normal(rng));
  return out;
}

double largest_eigenvalue(const std::vector<std::vector<double>>& re,
                          const std::vector<std::vector<double>>& im) {
  const auto n = static_cast<Eigen::Index>(re.size());
  Eigen::MatrixXcd h(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      h(r, c) = {re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                 im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]};
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::kValidation, "eigensolver failed");
  return solver.eigenvalues().maxCoeff();
}

SampleSet sample_gue_largest(int n, std::size_t count, const Seed& seed) {
  require(n >= 1, ErrorKind::kInvalidArgument, "matrix size must be positive");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double half = std::sqrt(0.5);
  const auto un = static_cast<std::size_t>(n);
  SampleSet out{{}, "gue-largest", seed};
  std::vector<std::vector<double>> re(un, std::vector<double>(un));
  std::vector<std::vector<double>> im(un, std::vector<double>(un));
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t r = 0; r < un; ++r) {
      re[r][r] = normal(rng);
      im[r][r] = 0.0;
      for (std::size_t c = r + 1; c < un; ++c) {
        re[r][c] = re[c][r] = half * normal(rng);
        im[r][c] = half * normal(rng);
        im[c][r] = -im[r][c];
      }
    }
    out.values.push_back(largest_eigenvalue(re, im));
  }
  return out;
}

TestReport pitman_2mx_test(double grid_step, std::size_t n, const Seed& seed) {
  require(grid_step > 0 && grid_step <= 1e-4 * (1 + 1e-12), ErrorKind::kInvalidArgument,
          "grid step must be at most 1e-4");
  require(n >= 2, ErrorKind::kInvalidArgument, "need at least two samples");
  const auto start = std::chrono::steady_clock::now();
  const Grid grid = Grid::with_step(0.0, 1.0, grid_step);
  std::vector<double> sum(n);
  std::vector<double> diff(n);
  parallel_for(n, [&](std::size_t r) {
    Rng rng = make_rng(seed.substream(r));
    const PLFunction b1(grid, sample_brownian_path(grid, 1.0, rng));
    const PLFunction b2(grid, sample_brownian_path(grid, 1.0, rng));
    const auto w = pitman2(b1, b2);
    const double top = w.top.values().back();
    const double bottom = w.bottom.values().back();
    sum[r] = top + bottom;
    diff[r] = top - bottom;
  });
  const auto gauss = sample_gaussian(std::numbers::sqrt2, n, seed.substream(kReferenceStream));
  auto bessel = sample_bessel3(2.0, n, seed.substream(kReferenceStream + 1));
  const double ks_sum = ks_two_sample(sum, gauss.values).statistic;
  const double ks_diff = ks_two_sample(diff, bessel.values).statistic;
  const double corr = std::abs(sample_correlation(sum, diff));
  const double stat = std::max({ks_sum, ks_diff, corr});
  return make_report("pitman-2m-x", stat, 0.03, n, seed, seconds_since(start),
                     "ks_sum=" + std::to_string(ks_sum) + " ks_diff=" + std::to_string(ks_diff) +
                         " corr=" + std::to_string(corr));
}

TestReport pitman_2mx_calibration(std::size_t n, const Seed& seed) {
  require(n >= 2, ErrorKind::kInvalidArgument, "need at least two samples");
  const auto start = std::chrono::steady_clock::now();
  const auto sum = sample_gaussian(std::numbers::sqrt2, n, seed.substream(1));
  const auto diff = sample_bessel3(2.0, n, seed.substream(2));
  const double ks_sum =
      ks_one_sample(sum.values, [](double x) { return normal_cdf(x / std::numbers::sqrt2); })
          .statistic;
  const double ks_diff =
      ks_one_sample(diff.values, [](double r) { return chi3_cdf(r, 2.0); }).statistic;
  const double corr = std::abs(sample_correlation(sum.values, diff.values));
  const double stat = std::max({ks_sum, ks_diff, corr});
  return make_report("pitman-2m-x-calibration", stat, 1.63 / std::sqrt(static_cast<double>(n)), n,
                     seed, seconds_since(start));
}

TestReport gue_minors_test(int n, double t, std::size_t count, const Seed& seed,
                           double grid_step) {
  require(n >= 1, ErrorKind::kInvalidArgument, "need at least one line");
  require(n <= 4, ErrorKind::kCapacity, "GUE minors test supports n <= 4");
  require(t > 0 && grid_step > 0 && grid_step <= t, ErrorKind::kInvalidArgument,
          "time and grid step must be positive");
  require(count >= 1, ErrorKind::kInvalidArgument, "need at least one sample");
  const auto start = std::chrono::steady_clock::now();
  const Grid grid = Grid::with_step(0.0, t, grid_step);
  require(grid.back() == t || std::abs(grid.back() - t) < 1e-12 * t, ErrorKind::kInvalidArgument,
          "grid step must divide t");
  std::vector<double> top(count);
  std::vector<char> interlaced(count, 1);
  parallel_for(count, [&](std::size_t r) {
    const Environment env = sample_brownian_env(grid, n, 1.0, seed.substream(r));
    const GTPattern x = gt_pattern(env, grid.back());
    interlaced[r] = x.interlacing_violation() <= 1e-9;
    top[r] = x(1, n) / std::sqrt(t);
  });
  const auto gue = sample_gue_largest(n, count, seed.substream(kReferenceStream));
  const double ks = ks_two_sample(top, gue.values).statistic;
  const auto failures = static_cast<std::size_t>(std::count(interlaced.begin(), interlaced.end(), 0));
  auto report = make_report("gue-minors", ks, 0.03, count, seed, seconds_since(start),
                            "interlacing_failures=" + std::to_string(failures));
  report.pass = report.pass && failures == 0;
  return report;
}

void write_ledger_header(std::ostream& out) {
  out << "name,statistic,threshold,pass,N,seed,runtime\n";
}

void write_ledger_row(std::ostream& out, const TestReport& r) {
  const auto old = out.precision(17);
  out << r.name << ',' << r.statistic << ',' << r.threshold << ',' << (r.pass ? "true" : "false")
      << ',' << r.sample_size << ',' << r.seed.root << ':' << r.seed.stream << ',';
  out.precision(6);
  out << r.runtime_seconds << '\n';
  out.precision(old);
}

std::size_t thread_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("LPPLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lpplab
