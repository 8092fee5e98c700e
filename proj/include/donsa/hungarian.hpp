#pragma once

#include <vector>

namespace donsa {

// Dense square matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), w_(static_cast<std::size_t>(n) * n, fill) {}

  // Throws NonSquare when the rows are ragged or row count != column count.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double at(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
  double& at(int i, int j) { return w_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return w_; }

 private:
  int n_ = 0;
  std::vector<double> w_;
};

struct HungarianResult {
  std::vector<int> row_to_col;
  double objective = 0.0;
};

// Exact assignment solver (shortest augmenting path with potentials),
// O(n^3). Deterministic: rows are processed in order and tied reduced
// costs resolve by a fixed rule (unmatched column first, then lowest
// column index), so a given matrix always yields the same permutation.
// Throws NonFinite if any entry is NaN or infinite.
HungarianResult hungarian_solve(const SquareMatrix& weights, bool maximize = true);

}  // namespace donsa
