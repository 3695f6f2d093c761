#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lpplab/env.hpp"

namespace lpplab {

struct SampleSet {
  std::vector<double> values;
  std::string label;
  Seed seed;
};

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t sample_size = 0;
  Seed seed;
  double runtime_seconds = 0.0;
  std::string detail;
};

TestReport make_report(std::string name, double statistic, double threshold,
                       std::size_t sample_size, const Seed& seed, double runtime_seconds,
                       std::string detail = {});

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov distance with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);
KsResult ks_two_sample(const SampleSet& a, const SampleSet& b);
// One-sample distance against a continuous CDF.
KsResult ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf);
double kolmogorov_survival(double lambda);

double normal_cdf(double x);
// CDF of the norm of a 3-dimensional centred Gaussian with variance t per coordinate.
double chi3_cdf(double r, double t);
double sample_correlation(std::span<const double> a, std::span<const double> b);

// Norm of a 3-dimensional Gaussian with variance t per coordinate; N draws.
SampleSet sample_bessel3(double t, std::size_t n, const Seed& seed);
SampleSet sample_gaussian(double sd, std::size_t n, const Seed& seed);
// Largest eigenvalues of n x n GUE matrices: real diagonal N(0,1) and complex
// off-diagonal entries whose real and imaginary parts are N(0,1/2).
SampleSet sample_gue_largest(int n, std::size_t count, const Seed& seed);
double largest_eigenvalue(const std::vector<std::vector<double>>& re,
                          const std::vector<std::vector<double>>& im);

// Pitman pair of two standard Brownian motions on [0,1]: the sum
// (WB1 + WB2)(1) against sqrt(2) N(0,1), the difference (WB1 - WB2)(1) against
// sqrt(2) times the Bessel-3 marginal, and their sample correlation. The
// statistic is the largest of the three.
TestReport pitman_2mx_test(double grid_step, std::size_t n, const Seed& seed);
// Same statistic with direct draws from the target laws, measured against the
// exact CDFs.
TestReport pitman_2mx_calibration(std::size_t n, const Seed& seed);

// KS distance between X_{1,n}/sqrt(t) from GT patterns of Brownian
// environments and the largest GUE eigenvalue. Any interlacing failure makes
// the report fail.
TestReport gue_minors_test(int n, double t, std::size_t count, const Seed& seed,
                           double grid_step = 1e-3);

void write_ledger_header(std::ostream& out);
void write_ledger_row(std::ostream& out, const TestReport& report);

// Worker count: LPPLAB_THREADS if set, otherwise the hardware concurrency.
std::size_t thread_count();
// body(i) for i in [0, count); results must be written by index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lpplab
