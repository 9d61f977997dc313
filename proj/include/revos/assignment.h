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

#ifndef REVOS_ASSIGNMENT_H_
#define REVOS_ASSIGNMENT_H_

#include <span>
#include <utility>
#include <vector>

namespace revos {

struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (row, col), ascending by row
  double total_weight = 0.0;
};

// Maximum-weight bipartite matching on a dense rows x cols weight matrix
// (row-major) via the Hungarian method with potentials, O(n^2 m). Pairs
// whose weight is not positive are left unmatched, so the result only holds
// edges that actually contribute. Totals within kTieWindow of each other
// count as tied, and ties go to the matching with more pairs.
inline constexpr double kTieWindow = 1e-9;

Matching MaxWeightMatching(std::span<const double> weights, int rows, int cols);

}  // namespace revos

#endif  // REVOS_ASSIGNMENT_H_
