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

#include <cmath>
#include <limits>
#include <vector>

#include "kernels/common.h"
#include "revos/kernels.h"

namespace revos::kernels::serial {

OverlapCounts CountOverlap(std::span<const uint8_t> a, std::span<const uint8_t> b,
                           std::span<const uint8_t> ignore) {
  OverlapCounts c;
  for (size_t i = 0; i < a.size(); ++i) {
    if (ignore[i]) continue;
    if (a[i] && b[i]) ++c.intersection;
    if (a[i] || b[i]) ++c.union_count;
  }
  return c;
}

void LbpCodes(std::span<const uint8_t> image, int width, int height,
              std::span<uint8_t> codes) {
  size_t k = 0;
  for (int y = 1; y < height - 1; ++y) {
    for (int x = 1; x < width - 1; ++x) {
      codes[k++] = internal::LbpCodeAt(image.data(), width, x, y);
    }
  }
}

LbpHistogramCounts LbpHistogram(std::span<const uint8_t> image, int width,
                                int height) {
  LbpHistogramCounts hist{};
  for (int y = 1; y < height - 1; ++y) {
    for (int x = 1; x < width - 1; ++x) {
      ++hist[internal::LbpCodeAt(image.data(), width, x, y)];
    }
  }
  return hist;
}

void ChromaMaskKernel(std::span<const Hsv> pixels, const Hsv& seed, double delta,
                      HueDistance mode, std::span<uint8_t> out) {
  for (size_t i = 0; i < pixels.size(); ++i) {
    out[i] = ChromaMatch(seed, pixels[i], delta, mode) ? 1 : 0;
  }
}

void PatchMatchReadout(std::span<const MemoryView> memory,
                       const ColorImage& target, const MatchParams& params,
                       std::span<double> probability,
                       std::span<double> best_cost) {
  const int w = target.width;
  const int h = target.height;
  const int r = params.search_radius;
  std::vector<double> costs;
  std::vector<double> labels;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      costs.clear();
      labels.clear();
      for (const MemoryView& m : memory) {
        const ColorImage& img = *m.image;
        for (int dy = -r; dy <= r; ++dy) {
          for (int dx = -r; dx <= r; ++dx) {
            const int mx = x + dx;
            const int my = y + dy;
            if (mx < 0 || my < 0 || mx >= img.width || my >= img.height) continue;
            costs.push_back(internal::PatchCost(target, x, y, img, mx, my,
                                                params.patch_radius));
            labels.push_back(m.mask[static_cast<size_t>(my) * img.width + mx]);
          }
        }
      }
      double best = std::numeric_limits<double>::infinity();
      for (double c : costs) best = std::min(best, c);
      double sum_w = 0.0;
      double sum_wm = 0.0;
      for (size_t k = 0; k < costs.size(); ++k) {
        const double z = (costs[k] - best) / params.temperature;
        if (z > internal::kWeightCutoff) continue;
        const double wgt = std::exp(-z);
        sum_w += wgt;
        sum_wm += wgt * labels[k];
      }
      const size_t i = static_cast<size_t>(y) * w + x;
      probability[i] = sum_w > 0.0 ? sum_wm / sum_w : 0.0;
      best_cost[i] = best;
    }
  }
}

}  // namespace revos::kernels::serial
