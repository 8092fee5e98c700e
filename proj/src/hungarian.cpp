#include "donsa/hungarian.hpp"

#include <cmath>
#include <limits>

#include "donsa/errors.hpp"

namespace donsa {

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw NonSquare("matrix is not square: row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

HungarianResult hungarian_solve(const SquareMatrix& weights, bool maximize) {
  const int n = weights.size();
  for (double v : weights.data())
    if (!std::isfinite(v)) throw NonFinite("assignment matrix entries must be finite");

  HungarianResult result;
  result.row_to_col.assign(n, -1);
  if (n == 0) return result;

  // Minimization over cost = -weight (or weight as-is). 1-based arrays with
  // column 0 as the virtual start of each augmenting search.
  std::vector<double> cost(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<std::size_t>(i) * n + j] = maximize ? -weights.at(i, j) : weights.at(i, j);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      const double* row = cost.data() + static_cast<std::size_t>(i0 - 1) * n;
      const double ui0 = u[i0];
      double delta = inf;
      int j1 = -1;
      bool j1_free = false;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - ui0 - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        // Among tied minima prefer an unmatched column: it ends the phase
        // now, which matters a lot on padded instances whose dummy rows are
        // all identical. Any tied minimum is a valid Dijkstra step.
        if (minv[j] < delta || (minv[j] == delta && !j1_free && match[j] == 0)) {
          delta = minv[j];
          j1 = j;
          j1_free = match[j] == 0;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    // Walk the augmenting path back, flipping matches.
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) result.row_to_col[match[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) result.objective += weights.at(i, result.row_to_col[i]);
  return result;
}

}  // namespace donsa
