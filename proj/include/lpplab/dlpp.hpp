#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpplab/env.hpp"
#include "lpplab/lpp.hpp"

namespace lpplab {

// m columns by n rows of weights; entry (column c, row r), both 1-based.
// Lattice paths move one column right or one row up (row index decreasing).
class LatticeArray {
 public:
  LatticeArray() = default;
  LatticeArray(std::size_t columns, std::size_t rows, std::vector<double> row_major);
  LatticeArray(std::size_t columns, std::size_t rows);

  std::size_t columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_; }
  double operator()(std::size_t column, std::size_t row) const {
    return entries_[(row - 1) * columns_ + (column - 1)];
  }
  double& operator()(std::size_t column, std::size_t row) {
    return entries_[(row - 1) * columns_ + (column - 1)];
  }
  const std::vector<double>& entries() const noexcept { return entries_; }

 private:
  std::size_t columns_ = 0;
  std::size_t rows_ = 0;
  std::vector<double> entries_;
};

// G[(1, I) -> (m, J)]: disjoint paths from (1, I_p) to (m, J_p), with I and J
// nonincreasing (path 1 is the bottom path). Minus infinity if infeasible.
LppValue array_lpp(const LatticeArray& g, std::span<const int> I, std::span<const int> J);

// Paths fanning inward from rows i, i-1, ..., i-k+1 in column 1 to rows
// j+k-1, ..., j in column m.
LppValue star_lpp(const LatticeArray& g, int i, int j, int k);

// The n x n array WG with column k, row l entry
// S(k,l) - S(k+1,l) - S(k,l+1) + S(k+1,l+1), where
// S(k,l) = star_lpp(G, n, l, n + 1 - max(k, l)) and S = 0 out of range.
// Needs m >= n. For nonnegative G, array_lpp(G, I, J) == array_lpp(WG, I, J).
LatticeArray array_wg(const LatticeArray& g);

// f[(t0, I) -> (t, J)] with I, J listed bottom first, t0 the left endpoint.
LppValue side_lpp(const Environment& env, double t, std::span<const int> I, std::span<const int> J);

// The n x n array W^t f built from side-to-side values of the environment.
LatticeArray side_to_side_array(const Environment& env, double t);

// Gelfand-Tsetlin pattern x_{i,j}, 1 <= i <= j <= n.
class GTPattern {
 public:
  GTPattern() = default;
  explicit GTPattern(int n);

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const { return x_[index(i, j)]; }
  double& operator()(int i, int j) { return x_[index(i, j)]; }
  // Largest violation of x_{i,j} >= x_{i,j-1} >= x_{i+1,j}; 0 when interlaced.
  double interlacing_violation() const noexcept;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>((j - 1) * j / 2 + (i - 1));
  }
  int n_ = 0;
  std::vector<double> x_;
};

// x_{i,j} from sum_{i' <= i} x_{i',j} = f[(t0, n)^i -> (t, n-j+1)^i]; n <= 4.
GTPattern gt_pattern(const Environment& env, double t);

// Column c of the m x n array holds the increments of every line over the c-th
// cell of the uniform grid on [t0, t].
LatticeArray discretize(const Environment& env, double t, std::size_t m);

}  // namespace lpplab
