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

#ifndef REVOS_CHROMA_H_
#define REVOS_CHROMA_H_

#include <cmath>
#include <span>
#include <vector>

#include "revos/mask.h"

namespace revos {

// All three channels normalized to [0, 1]; hue is circular.
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  bool operator==(const Hsv&) const = default;
};

enum class HueDistance {
  kCircular,  // min(|dh|, 1 - |dh|)
  kLiteral,   // |dh| exactly as printed in the masking rule
};

struct PixelPos {
  int x = 0;
  int y = 0;
};

struct ChromaSeed {
  PixelPos position;
  double delta = 0.0;
};

struct ChromaResult {
  BinaryMask mask;
  Hsv seed_hsv;
};

// Standard hexcone conversion. Gray pixels (s == 0) get h = 0.
// Throws Error(kInvalidArgument) for components outside [0, 1].
Hsv RgbToHsv(double r, double g, double b);

inline double HueDifference(double a, double b, HueDistance mode) {
  const double d = std::fabs(a - b);
  return mode == HueDistance::kCircular ? std::fmin(d, 1.0 - d) : d;
}

// The color-difference rule: a pixel is kept iff its hue differs from the
// seed's by less than 0.1 * delta and its saturation and value each differ
// by less than delta. Inequalities are strict, so delta == 0 keeps nothing.
inline bool ChromaMatch(const Hsv& seed, const Hsv& pixel, double delta,
                        HueDistance mode) {
  return HueDifference(pixel.h, seed.h, mode) < 0.1 * delta &&
         std::fabs(pixel.s - seed.s) < delta &&
         std::fabs(pixel.v - seed.v) < delta;
}

std::vector<Hsv> ToHsv(const ColorImage& image);

// Applies the rule with the seed color sampled at seed.position.
// Throws Error(kInvalidArgument) for an out-of-bounds seed or delta outside
// [0, 1].
ChromaResult ChromaMask(const ColorImage& image, const ChromaSeed& seed,
                        HueDistance mode = HueDistance::kCircular);

// Same rule over precomputed HSV pixels with an explicit seed color.
BinaryMask ChromaMaskHsv(std::span<const Hsv> pixels, int width, int height,
                         const Hsv& seed, double delta,
                         HueDistance mode = HueDistance::kCircular);

}  // namespace revos

#endif  // REVOS_CHROMA_H_
