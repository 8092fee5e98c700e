#include <algorithm>
#include <doctest.h>
#include <limits>
#include <vector>

#include "donsa/errors.hpp"
#include "donsa/hungarian.hpp"
#include "donsa/rng.hpp"

using namespace donsa;

namespace {

// Independent oracle: maximum over all permutations.
double best_permutation_value(const SquareMatrix& m) {
  const int n = m.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double best = -std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += m.at(i, perm[i]);
    best = std::max(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("known 3x3 instance") {
  const SquareMatrix m = SquareMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}});
  const HungarianResult res = hungarian_solve(m, true);
  CHECK(res.objective == 14.0);  // identity beats all 6 permutations
  CHECK(res.row_to_col == std::vector<int>{0, 1, 2});
}

TEST_CASE("dominant diagonal picks the identity") {
  SquareMatrix m(4, 1.0);
  for (int i = 0; i < 4; ++i) m.at(i, i) = 100.0;
  const HungarianResult res = hungarian_solve(m, true);
  CHECK(res.row_to_col == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("singleton matrix") {
  SquareMatrix m(1);
  m.at(0, 0) = 7.5;
  const HungarianResult res = hungarian_solve(m, true);
  CHECK(res.row_to_col == std::vector<int>{0});
  CHECK(res.objective == 7.5);
}

TEST_CASE("empty matrix") {
  const HungarianResult res = hungarian_solve(SquareMatrix{}, true);
  CHECK(res.row_to_col.empty());
  CHECK(res.objective == 0.0);
}

TEST_CASE("matches the permutation oracle on random integer matrices") {
  Rng rng(2024);
  for (int c = 0; c < 200; ++c) {
    const int n = 1 + rng.next_index(7);
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.next_index(101);
    const HungarianResult res = hungarian_solve(m, true);
    REQUIRE(is_permutation(res.row_to_col));
    CHECK(res.objective == best_permutation_value(m));
  }
}

TEST_CASE("minimization agrees with negated maximization") {
  Rng rng(5);
  for (int c = 0; c < 50; ++c) {
    const int n = 2 + rng.next_index(5);
    SquareMatrix m(n), neg(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m.at(i, j) = rng.next_index(50);
        neg.at(i, j) = -m.at(i, j);
      }
    const HungarianResult lo = hungarian_solve(m, false);
    const HungarianResult hi = hungarian_solve(neg, true);
    CHECK(lo.objective == -hi.objective);
  }
}

TEST_CASE("repeated solves are deterministic, including ties") {
  SquareMatrix m(3, 5.0);  // fully tied
  const HungarianResult a = hungarian_solve(m, true);
  const HungarianResult b = hungarian_solve(m, true);
  CHECK(a.row_to_col == b.row_to_col);
  CHECK(a.objective == 15.0);
}

TEST_CASE("ragged input is rejected as non-square") {
  CHECK_THROWS_AS(SquareMatrix::from_rows({{1, 2}, {3}}), NonSquare);
}

TEST_CASE("non-finite entries are rejected") {
  SquareMatrix m(2, 1.0);
  m.at(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(hungarian_solve(m, true), NonFinite);
  m.at(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hungarian_solve(m, true), NonFinite);
}
