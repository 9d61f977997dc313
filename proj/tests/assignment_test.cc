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

#include <algorithm>
#include <functional>
#include <vector>

#include "gtest/gtest.h"
#include "revos/assignment.h"
#include "revos/error.h"
#include "support/generators.h"

namespace revos {
namespace {

// Best total over all partial one-to-one assignments.
double BruteForceTotal(const std::vector<double>& w, int rows, int cols) {
  std::vector<bool> used(cols, false);
  std::function<double(int)> rec = [&](int r) -> double {
    if (r == rows) return 0.0;
    double best = rec(r + 1);
    for (int c = 0; c < cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      best = std::max(best, w[r * cols + c] + rec(r + 1));
      used[c] = false;
    }
    return best;
  };
  return rec(0);
}

TEST(MaxWeightMatching, PicksTheLargerDiagonal) {
  const std::vector<double> w = {0.9, 0.8, 0.8, 0.1};
  const Matching m = MaxWeightMatching(w, 2, 2);
  EXPECT_DOUBLE_EQ(m.total_weight, 1.6);
  EXPECT_EQ(m.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
}

TEST(MaxWeightMatching, ZeroEdgesStayUnmatched) {
  const std::vector<double> w = {0.5, 0.0, 0.0, 0.0};
  const Matching m = MaxWeightMatching(w, 2, 2);
  EXPECT_EQ(m.pairs.size(), 1u);
}

TEST(MaxWeightMatching, EmptySides) {
  EXPECT_TRUE(MaxWeightMatching({}, 0, 3).pairs.empty());
  EXPECT_TRUE(MaxWeightMatching({}, 2, 0).pairs.empty());
}

TEST(MaxWeightMatching, ShapeChecked) {
  const std::vector<double> w = {1, 2, 3};
  EXPECT_THROW(MaxWeightMatching(w, 2, 2), Error);
}

TEST(MaxWeightMatchingProperty, OptimalOnRectangularInstances) {
  gen::Engine e(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = gen::Int(e, 1, 6), cols = gen::Int(e, 1, 6);
    std::vector<double> w(rows * cols);
    for (double& x : w) x = gen::Int(e, 0, 3) == 0 ? 0.0 : gen::Unit(e);
    const Matching m = MaxWeightMatching(w, rows, cols);
    ASSERT_NEAR(m.total_weight, BruteForceTotal(w, rows, cols), 1e-12);
    std::vector<bool> row_used(rows), col_used(cols);
    double sum = 0.0;
    for (auto [r, c] : m.pairs) {
      ASSERT_FALSE(row_used[r]);
      ASSERT_FALSE(col_used[c]);
      row_used[r] = col_used[c] = true;
      ASSERT_GT(w[r * cols + c], 0.0);
      sum += w[r * cols + c];
    }
    ASSERT_NEAR(sum, m.total_weight, 1e-12);
    ASSERT_TRUE(std::is_sorted(m.pairs.begin(), m.pairs.end()));
  }
}

}  // namespace
}  // namespace revos
