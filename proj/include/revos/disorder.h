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

#ifndef REVOS_DISORDER_H_
#define REVOS_DISORDER_H_

#include <array>
#include <cstdint>
#include <vector>

#include "revos/mask.h"

namespace revos {

// Shape disorder of a binary mask measured as the Shannon entropy of its
// local-binary-pattern code histogram. Codes use the 8 radius-1 neighbours,
// clockwise from top-left, bit set iff neighbour >= centre; the one-pixel
// border is skipped.

struct LbpHistogram {
  std::array<double, 256> bins{};  // frequencies
  int64_t counted_pixels = 0;
};

struct DisorderScore {
  double h_lbp = 0.0;  // bits, within [0, 8]
};

// Row-major codes of the (w-2) x (h-2) interior. Throws
// Error(kInvalidArgument) for masks smaller than 3x3.
std::vector<uint8_t> LbpCodes(const BinaryMask& mask);
LbpHistogram ComputeLbpHistogram(const BinaryMask& mask);
// -sum H(i) log2 H(i), with 0 log 0 taken as 0.
double Entropy(const LbpHistogram& histogram);
DisorderScore HLbp(const BinaryMask& mask);

struct HalfSplitDisorder {
  double first_half_mean = 0.0;
  double latter_half_mean = 0.0;
  std::vector<double> per_frame;
};

// Splits frames at floor(n / 2) and averages h_lbp of `object`'s masks in
// each half. Throws Error(kInvalidArgument) for sequences shorter than 2.
HalfSplitDisorder HalfSplit(const MaskSequence& sequence, ObjectId object);

}  // namespace revos

#endif  // REVOS_DISORDER_H_
