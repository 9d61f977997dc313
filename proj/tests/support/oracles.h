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

#ifndef REVOS_TESTS_SUPPORT_ORACLES_H_
#define REVOS_TESTS_SUPPORT_ORACLES_H_

// Independent reference implementations used to pin library results. None
// of these call into the library code they check.

#include <array>
#include <cstdint>
#include <vector>

#include "revos/mask.h"

namespace revos::oracle {

inline constexpr double kTieWindow = 1e-9;

// Components as sorted pixel-index lists, found by breadth-first flood fill
// with 8-neighbourhood, ordered by their first pixel in raster order.
std::vector<std::vector<int>> FloodFill(const BinaryMask& mask);

// Component-matched Jaccard by trying every one-to-one pairing of ground
// truth components with prediction components (or with nothing). Pairs of
// zero overlap do not count as matched. Among pairings whose total comes
// within kTieWindow of the largest, the largest score is returned. Feasible for <= 7 components per
// side.
double ExhaustiveComponentJaccard(const BinaryMask& pred, const BinaryMask& gt,
                                  const BinaryMask& ignore);

// Same search, but reports the set of distinct scores over all pairings
// within kTieWindow of the largest total (more than one value signals a
// tie).
std::vector<double> ExhaustiveTiedScores(const BinaryMask& pred,
                                         const BinaryMask& gt,
                                         const BinaryMask& ignore);

// Jaccard by explicit set counting.
double PlainJaccard(const BinaryMask& pred, const BinaryMask& gt,
                    const BinaryMask& ignore);

// Mean of the trailing ceil(N / 4) values.
double TailMean(const std::vector<double>& series);

// LBP entropy written from scratch: weights 128, 64, ..., 1 for the
// neighbours top-left, top, top-right, right, bottom-right, bottom,
// bottom-left, left; histogram in a std::map.
double LbpEntropy(const BinaryMask& mask);

// colorsys-style RGB to HSV.
std::array<double, 3> ColorsysHsv(double r, double g, double b);

// The masking rule with plain absolute differences, as printed.
bool LiteralRule(const std::array<double, 3>& seed,
                 const std::array<double, 3>& pixel, double delta);

}  // namespace revos::oracle

#endif  // REVOS_TESTS_SUPPORT_ORACLES_H_
