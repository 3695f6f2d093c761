#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpplab/env.hpp"

namespace lpplab {

// The Pitman pair of (f1, f2): Wf1 = f1 + sup_{s<=.}(f2 - f1)(s) and
// Wf2 = f1 + f2 - Wf1. The running maximum is only piecewise linear on a finer
// grid, so the outputs live on the input grid plus the points where the
// difference first reaches a previous maximum inside a cell.
struct PitmanPair {
  PLFunction top;
  PLFunction bottom;
};

PitmanPair pitman2(const PLFunction& f1, const PLFunction& f2);

// Permutation of {1..n} in one-line notation: image(i) = tau(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> one_line);

  static Permutation identity(int n);
  // Adjacent transposition swapping i and i+1.
  static Permutation sigma(int n, int i);
  // i -> n + 1 - i.
  static Permutation reversal(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& one_line() const noexcept { return images_; }
  int inversions() const noexcept;

  // (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> images_;
};

enum class WordStrategy {
  kFirstDescent,
  kLastDescent,
};

// Reduced word i_1 ... i_k with tau = sigma_{i_1} ... sigma_{i_k}.
std::vector<int> reduced_word(const Permutation& tau,
                              WordStrategy strategy = WordStrategy::kFirstDescent);
Permutation word_to_permutation(int n, std::span<const int> word);

// Pitman transform on lines i, i+1; every line is carried onto the refined grid.
Environment apply_sigma(const Environment& env, int i);
// W_{sigma_{i_1}} ... W_{sigma_{i_k}}: the last letter acts first.
Environment apply_word(const Environment& env, std::span<const int> word);
Environment apply_w_tau(const Environment& env, const Permutation& tau);

// tau_{i,j} = sigma_j sigma_{j+1} ... sigma_{i-1} for j <= i (identity if j == i).
Permutation tau_ij(int n, int i, int j);
Environment w_tau_ij(const Environment& env, int i, int j);

// Strictly increasing line indices i_1 < ... < i_k.
using LineIndexSet = std::vector<int>;

// tau_I = tau_{i_k,k} ... tau_{i_1,1}, and the word obtained by concatenating
// the words of those factors in the same order.
Permutation tau_I(int n, const LineIndexSet& lines);
std::vector<int> tau_I_word(const LineIndexSet& lines);
Environment w_tau_I(const Environment& env, const LineIndexSet& lines);

// W_tau applied to the environment recentred at a, reported at absolute times
// x >= a.
Environment shifted_w_tau(const Environment& env, const Permutation& tau, double a);

}  // namespace lpplab
