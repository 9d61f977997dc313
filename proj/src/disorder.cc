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

#include "revos/disorder.h"

#include <cmath>
#include <string>

#include "revos/error.h"
#include "revos/kernels.h"

namespace revos {
namespace {

void RequireLbpSize(const BinaryMask& mask) {
  if (mask.width() < 3 || mask.height() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "LBP needs at least 3x3 pixels, got " +
                    std::to_string(mask.width()) + "x" +
                    std::to_string(mask.height()));
  }
}

}  // namespace

std::vector<uint8_t> LbpCodes(const BinaryMask& mask) {
  RequireLbpSize(mask);
  std::vector<uint8_t> codes(static_cast<size_t>(mask.width() - 2) *
                             (mask.height() - 2));
  kernels::LbpCodes(mask.bits(), mask.width(), mask.height(), codes);
  return codes;
}

LbpHistogram ComputeLbpHistogram(const BinaryMask& mask) {
  RequireLbpSize(mask);
  const kernels::LbpHistogramCounts counts =
      kernels::LbpHistogram(mask.bits(), mask.width(), mask.height());
  LbpHistogram h;
  for (int64_t c : counts) h.counted_pixels += c;
  for (int i = 0; i < 256; ++i) {
    h.bins[i] = static_cast<double>(counts[i]) / static_cast<double>(h.counted_pixels);
  }
  return h;
}

double Entropy(const LbpHistogram& histogram) {
  double h = 0.0;
  for (double p : histogram.bins) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  // A single occupied bin gives -1 * log2(1) = -0.0; report +0.
  return h == 0.0 ? 0.0 : h;
}

DisorderScore HLbp(const BinaryMask& mask) {
  return {Entropy(ComputeLbpHistogram(mask))};
}

HalfSplitDisorder HalfSplit(const MaskSequence& sequence, ObjectId object) {
  const size_t n = sequence.length();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "half split needs at least 2 frames");
  }
  HalfSplitDisorder out;
  for (const auto& frame : sequence.frames()) {
    out.per_frame.push_back(HLbp(ExtractObject(frame, object)).h_lbp);
  }
  const size_t split = n / 2;
  double first = 0.0, latter = 0.0;
  for (size_t t = 0; t < split; ++t) first += out.per_frame[t];
  for (size_t t = split; t < n; ++t) latter += out.per_frame[t];
  out.first_half_mean = first / static_cast<double>(split);
  out.latter_half_mean = latter / static_cast<double>(n - split);
  return out;
}

}  // namespace revos
