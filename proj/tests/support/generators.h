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

#ifndef REVOS_TESTS_SUPPORT_GENERATORS_H_
#define REVOS_TESTS_SUPPORT_GENERATORS_H_

// Small seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "revos/mask.h"

namespace revos::gen {

using Engine = std::mt19937_64;

inline int Int(Engine& e, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(e);
}

inline double Unit(Engine& e) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(e);
}

// Union of `rects` random axis-aligned rectangles; each rectangle adds at
// most one component.
inline BinaryMask Rectangles(Engine& e, int w, int h, int rects, int max_side = 8) {
  BinaryMask m(w, h);
  for (int k = 0; k < rects; ++k) {
    const int rw = Int(e, 1, max_side), rh = Int(e, 1, max_side);
    const int x0 = Int(e, 0, w - 1), y0 = Int(e, 0, h - 1);
    for (int y = y0; y < std::min(h, y0 + rh); ++y) {
      for (int x = x0; x < std::min(w, x0 + rw); ++x) m.Set(x, y, true);
    }
  }
  return m;
}

// Independent Bernoulli pixels.
inline BinaryMask Noise(Engine& e, int w, int h, double p) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.Set(x, y, Unit(e) < p);
  }
  return m;
}

inline BinaryMask Disk(int w, int h, double cx, double cy, double r) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx, dy = y - cy;
      m.Set(x, y, dx * dx + dy * dy <= r * r);
    }
  }
  return m;
}

inline BinaryMask Shift(const BinaryMask& m, int dx, int dy) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const int sx = x - dx, sy = y - dy;
      if (sx >= 0 && sy >= 0 && sx < m.width() && sy < m.height()) {
        out.Set(x, y, m.Get(sx, sy));
      }
    }
  }
  return out;
}

// `m` centred in a frame grown by `margin` on every side.
inline BinaryMask Pad(const BinaryMask& m, int margin) {
  BinaryMask out(m.width() + 2 * margin, m.height() + 2 * margin);
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) out.Set(x + margin, y + margin, m.Get(x, y));
  }
  return out;
}

// Label map with ids drawn from {0, 1..max_id} and a sprinkle of void.
inline InstanceFrame Labels(Engine& e, int w, int h, int max_id, double void_p) {
  std::vector<uint8_t> labels(static_cast<size_t>(w) * h);
  for (auto& l : labels) {
    l = Unit(e) < void_p ? kVoidLabel : static_cast<uint8_t>(Int(e, 0, max_id));
  }
  return InstanceFrame(w, h, std::move(labels));
}

inline std::vector<double> Series(Engine& e, int n) {
  std::vector<double> s(n);
  for (double& v : s) v = Unit(e);
  return s;
}

// Random RGB image with channels on the 8-bit grid.
inline ColorImage Image(Engine& e, int w, int h) {
  ColorImage img(w, h);
  for (float& v : img.rgb) v = static_cast<float>(Int(e, 0, 255) / 255.0);
  return img;
}

}  // namespace revos::gen

#endif  // REVOS_TESTS_SUPPORT_GENERATORS_H_
