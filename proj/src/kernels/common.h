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

#ifndef REVOS_SRC_KERNELS_COMMON_H_
#define REVOS_SRC_KERNELS_COMMON_H_

#include <algorithm>
#include <array>
#include <cstdint>

#include "revos/mask.h"

namespace revos::kernels::internal {

// Clockwise from the top-left neighbour; the first neighbour is the most
// significant bit.
inline constexpr std::array<std::array<int, 2>, 8> kLbpOffsets = {{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}}};

inline uint8_t LbpCodeAt(const uint8_t* img, int width, int x, int y) {
  const uint8_t center = img[y * width + x];
  uint8_t code = 0;
  for (int k = 0; k < 8; ++k) {
    const uint8_t n =
        img[(y + kLbpOffsets[k][1]) * width + (x + kLbpOffsets[k][0])];
    code = static_cast<uint8_t>((code << 1) | (n >= center ? 1 : 0));
  }
  return code;
}

// Softmax weights below exp(-kWeightCutoff) are treated as zero.
inline constexpr double kWeightCutoff = 40.0;

// Mean squared RGB difference between the patch around (tx, ty) in `target`
// and the patch around (mx, my) in `memory`. Patch taps are clamped to the
// image border.
inline double PatchCost(const ColorImage& target, int tx, int ty,
                        const ColorImage& memory, int mx, int my, int radius) {
  double sum = 0.0;
  const bool inside = tx >= radius && ty >= radius && mx >= radius &&
                      my >= radius && tx + radius < target.width &&
                      ty + radius < target.height && mx + radius < memory.width &&
                      my + radius < memory.height;
  if (inside) {
    // Same taps in the same order as the clamped loop below.
    const int side = 2 * radius + 1;
    for (int dy = -radius; dy <= radius; ++dy) {
      const float* a = &target.rgb[(static_cast<size_t>(ty + dy) * target.width +
                                    (tx - radius)) * 3];
      const float* b = &memory.rgb[(static_cast<size_t>(my + dy) * memory.width +
                                    (mx - radius)) * 3];
      for (int k = 0; k < side * 3; ++k) {
        const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
        sum += d * d;
      }
    }
    return sum / (3.0 * side * side);
  }
  int taps = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int ty2 = std::clamp(ty + dy, 0, target.height - 1);
    const int my2 = std::clamp(my + dy, 0, memory.height - 1);
    for (int dx = -radius; dx <= radius; ++dx) {
      const int tx2 = std::clamp(tx + dx, 0, target.width - 1);
      const int mx2 = std::clamp(mx + dx, 0, memory.width - 1);
      const float* a = &target.rgb[(static_cast<size_t>(ty2) * target.width + tx2) * 3];
      const float* b = &memory.rgb[(static_cast<size_t>(my2) * memory.width + mx2) * 3];
      for (int c = 0; c < 3; ++c) {
        const double d = static_cast<double>(a[c]) - static_cast<double>(b[c]);
        sum += d * d;
      }
      ++taps;
    }
  }
  return sum / (3.0 * taps);
}

}  // namespace revos::kernels::internal

#endif  // REVOS_SRC_KERNELS_COMMON_H_
