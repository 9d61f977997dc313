// Copyright 2026 The ReVOS Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "revos/assignment.h"

#include <algorithm>
#include <limits>

#include "revos/error.h"

namespace revos {
namespace {

// Minimum-cost assignment of every row to a distinct column, n <= m.
// 1-based potentials formulation; p[j] is the row assigned to column j.
std::vector<int> SolveMinCost(const std::vector<double>& cost, int n, int m) {
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  return p;
}

}  // namespace

Matching MaxWeightMatching(std::span<const double> weights, int rows, int cols) {
  if (rows < 0 || cols < 0 ||
      weights.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    throw Error(ErrorCode::kInvalidArgument, "weight matrix shape mismatch");
  }
  Matching result;
  if (rows == 0 || cols == 0) return result;

  const bool transpose = rows > cols;
  const int n = transpose ? cols : rows;
  const int m = transpose ? rows : cols;
  // A tiny per-edge bonus makes the solver prefer, among matchings whose
  // totals agree to within kTieWindow, the one with the most pairs. The
  // bonus summed over a full matching stays below the window.
  const double bonus = kTieWindow / static_cast<double>(n + 1);
  std::vector<double> cost(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double w = transpose ? weights[static_cast<size_t>(j) * cols + i]
                                 : weights[static_cast<size_t>(i) * cols + j];
      // Non-positive weights are absent edges.
      cost[static_cast<size_t>(i) * m + j] = w > 0.0 ? -(w + bonus) : 0.0;
    }
  }
  const std::vector<int> p = SolveMinCost(cost, n, m);
  for (int j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    const int row = transpose ? j - 1 : p[j] - 1;
    const int col = transpose ? p[j] - 1 : j - 1;
    const double w = weights[static_cast<size_t>(row) * cols + col];
    if (w > 0.0) result.pairs.emplace_back(row, col);
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  // Summed in row order so the total does not depend on the solver's
  // internal column ordering.
  for (const auto& [r, c] : result.pairs) {
    result.total_weight += weights[static_cast<size_t>(r) * cols + c];
  }
  return result;
}

}  // namespace revos
