#pragma once

#include <cstddef>
#include <vector>

#include "lpplab/dlpp.hpp"
#include "lpplab/env.hpp"
#include "lpplab/mc.hpp"

namespace lpplab::verify {

// Corpus shape for one deterministic identity check. Case c draws from
// seed.substream(c), so results do not depend on scheduling.
struct Corpus {
  std::size_t cases = 50;
  int min_lines = 2;
  int max_lines = 5;
  std::size_t min_grid_points = 10;
  std::size_t max_grid_points = 100;
  Seed seed;
};

// Brownian lines with unit variance sampled at irregular times starting at 0.
Environment random_environment(Rng& rng, int lines, std::size_t grid_points);
// Nonnegative integer weights in [0, max_entry].
LatticeArray random_array(Rng& rng, std::size_t columns, std::size_t rows, int max_entry);

// Each check reports the worst normalised residual; threshold is the
// tolerance, so pass means every instance matched.
TestReport rsk_isometry(const Corpus& corpus, double tol = 1e-9);
TestReport localized_isometry(const Corpus& corpus, double tol = 1e-9);
TestReport metric_composition(const Corpus& corpus, double tol = 1e-9);
TestReport word_independence(const Corpus& corpus, double tol = 1e-12);
TestReport w_lemma(const Corpus& corpus, double tol = 1e-9);
TestReport top_lines(const Corpus& corpus, double tol = 1e-9);
TestReport array_isometry(std::size_t cases, const Seed& seed, double tol = 1e-9);
TestReport side_to_side(const Corpus& corpus, double tol = 1e-9);
TestReport line_difference(const Corpus& corpus, double tol = 1e-9);
TestReport two_wedge_decomposition(const Corpus& corpus, double tol = 1e-12);

// All checks above with `cases` instances each.
std::vector<TestReport> run_identity_suite(const Seed& seed, std::size_t cases);

}  // namespace lpplab::verify
