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

#include <omp.h>

#include <cmath>
#include <limits>

#include "kernels/common.h"
#include "revos/kernels.h"

namespace revos::kernels {

OverlapCounts CountOverlap(std::span<const uint8_t> a, std::span<const uint8_t> b,
                           std::span<const uint8_t> ignore) {
  const int64_t n = static_cast<int64_t>(a.size());
  int64_t inter = 0;
  int64_t uni = 0;
  const uint8_t* pa = a.data();
  const uint8_t* pb = b.data();
  const uint8_t* pi = ignore.data();
#pragma omp parallel for schedule(static) reduction(+ : inter, uni)
  for (int64_t i = 0; i < n; ++i) {
    if (pi[i]) continue;
    inter += pa[i] & pb[i];
    uni += pa[i] | pb[i];
  }
  return {inter, uni};
}

void LbpCodes(std::span<const uint8_t> image, int width, int height,
              std::span<uint8_t> codes) {
  const int iw = width - 2;
  const uint8_t* img = image.data();
#pragma omp parallel for schedule(static)
  for (int y = 1; y < height - 1; ++y) {
    for (int x = 1; x < width - 1; ++x) {
      codes[static_cast<size_t>(y - 1) * iw + (x - 1)] =
          internal::LbpCodeAt(img, width, x, y);
    }
  }
}

LbpHistogramCounts LbpHistogram(std::span<const uint8_t> image, int width,
                                int height) {
  LbpHistogramCounts total{};
  const uint8_t* img = image.data();
#pragma omp parallel
  {
    LbpHistogramCounts local{};
#pragma omp for schedule(static) nowait
    for (int y = 1; y < height - 1; ++y) {
      for (int x = 1; x < width - 1; ++x) {
        ++local[internal::LbpCodeAt(img, width, x, y)];
      }
    }
#pragma omp critical
    for (int i = 0; i < 256; ++i) total[i] += local[i];
  }
  return total;
}

void ChromaMaskKernel(std::span<const Hsv> pixels, const Hsv& seed, double delta,
                      HueDistance mode, std::span<uint8_t> out) {
  const int64_t n = static_cast<int64_t>(pixels.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
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
  const double inv_t = 1.0 / params.temperature;
#pragma omp parallel for schedule(dynamic, 4)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Online softmax: sums are rescaled whenever a cheaper candidate
      // appears, so one sweep suffices.
      double best = std::numeric_limits<double>::infinity();
      double sum_w = 0.0;
      double sum_wm = 0.0;
      for (const MemoryView& m : memory) {
        const ColorImage& img = *m.image;
        for (int dy = -r; dy <= r; ++dy) {
          const int my = y + dy;
          if (my < 0 || my >= img.height) continue;
          for (int dx = -r; dx <= r; ++dx) {
            const int mx = x + dx;
            if (mx < 0 || mx >= img.width) continue;
            const double cost = internal::PatchCost(target, x, y, img, mx, my,
                                                    params.patch_radius);
            if (cost < best) {
              const double scale = std::exp((cost - best) * inv_t);
              sum_w *= scale;
              sum_wm *= scale;
              best = cost;
            }
            const double z = (cost - best) * inv_t;
            if (z > internal::kWeightCutoff) continue;
            const double wgt = std::exp(-z);
            sum_w += wgt;
            sum_wm += wgt * m.mask[static_cast<size_t>(my) * img.width + mx];
          }
        }
      }
      const size_t i = static_cast<size_t>(y) * w + x;
      probability[i] = sum_w > 0.0 ? sum_wm / sum_w : 0.0;
      best_cost[i] = best;
    }
  }
}

}  // namespace revos::kernels
