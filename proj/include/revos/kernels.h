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

#ifndef REVOS_KERNELS_H_
#define REVOS_KERNELS_H_

// Data-parallel inner loops. Each kernel has an OpenMP implementation in
// revos::kernels and a plain serial implementation in revos::kernels::serial
// that the tests and benchmarks hold it against. Every parallel kernel is
// either a per-pixel map or an integer reduction, so results do not depend
// on the thread count.

#include <array>
#include <cstdint>
#include <span>

#include "revos/chroma.h"
#include "revos/mask.h"

namespace revos::kernels {

struct OverlapCounts {
  int64_t intersection = 0;
  int64_t union_count = 0;

  bool operator==(const OverlapCounts&) const = default;
};

using LbpHistogramCounts = std::array<int64_t, 256>;

struct MatchParams {
  int patch_radius = 1;
  int search_radius = 4;
  double temperature = 0.01;
};

// One memory slot as the matcher sees it.
struct MemoryView {
  const ColorImage* image = nullptr;
  std::span<const double> mask;
};

// |a & b & ~ignore| and |(a | b) & ~ignore| over equally sized buffers.
OverlapCounts CountOverlap(std::span<const uint8_t> a,
                           std::span<const uint8_t> b,
                           std::span<const uint8_t> ignore);

// 8-neighbour LBP codes of the interior pixels, (w-2)*(h-2) entries.
void LbpCodes(std::span<const uint8_t> image, int width, int height,
              std::span<uint8_t> codes);
LbpHistogramCounts LbpHistogram(std::span<const uint8_t> image, int width,
                                int height);

void ChromaMaskKernel(std::span<const Hsv> pixels, const Hsv& seed,
                      double delta, HueDistance mode, std::span<uint8_t> out);

// For each target pixel, scores every in-bounds candidate within the search
// radius of every memory frame by mean squared color difference over the
// patch, then transfers the candidates' soft labels with softmax weights
// exp(-(cost - best) / temperature). Writes the transferred probability and
// the best cost per pixel.
void PatchMatchReadout(std::span<const MemoryView> memory,
                       const ColorImage& target, const MatchParams& params,
                       std::span<double> probability,
                       std::span<double> best_cost);

namespace serial {

OverlapCounts CountOverlap(std::span<const uint8_t> a,
                           std::span<const uint8_t> b,
                           std::span<const uint8_t> ignore);
void LbpCodes(std::span<const uint8_t> image, int width, int height,
              std::span<uint8_t> codes);
LbpHistogramCounts LbpHistogram(std::span<const uint8_t> image, int width,
                                int height);
void ChromaMaskKernel(std::span<const Hsv> pixels, const Hsv& seed,
                      double delta, HueDistance mode, std::span<uint8_t> out);
// Two-pass reference: finds the minimum cost first, then accumulates.
void PatchMatchReadout(std::span<const MemoryView> memory,
                       const ColorImage& target, const MatchParams& params,
                       std::span<double> probability,
                       std::span<double> best_cost);

}  // namespace serial
}  // namespace revos::kernels

#endif  // REVOS_KERNELS_H_
