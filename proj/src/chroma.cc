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

#include "revos/chroma.h"

#include <algorithm>
#include <string>

#include "revos/error.h"
#include "revos/kernels.h"

namespace revos {

Hsv RgbToHsv(double r, double g, double b) {
  for (double c : {r, g, b}) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "RGB component outside [0, 1]: " + std::to_string(c));
    }
  }
  const double max = std::max({r, g, b});
  const double min = std::min({r, g, b});
  const double chroma = max - min;
  Hsv out;
  out.v = max;
  out.s = max > 0.0 ? chroma / max : 0.0;
  if (chroma <= 0.0) return out;  // gray: hue pinned to 0
  double h;
  if (max == r) {
    h = (g - b) / chroma;
    if (h < 0.0) h += 6.0;
  } else if (max == g) {
    h = (b - r) / chroma + 2.0;
  } else {
    h = (r - g) / chroma + 4.0;
  }
  out.h = h / 6.0;
  if (out.h >= 1.0) out.h -= 1.0;
  return out;
}

std::vector<Hsv> ToHsv(const ColorImage& image) {
  std::vector<Hsv> out(static_cast<size_t>(image.width) * image.height);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = RgbToHsv(image.rgb[3 * i], image.rgb[3 * i + 1], image.rgb[3 * i + 2]);
  }
  return out;
}

BinaryMask ChromaMaskHsv(std::span<const Hsv> pixels, int width, int height,
                         const Hsv& seed, double delta, HueDistance mode) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must lie in [0, 1]");
  }
  BinaryMask out(width, height);
  if (pixels.size() != out.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "HSV buffer size mismatch");
  }
  kernels::ChromaMaskKernel(pixels, seed, delta, mode, out.mutable_bits());
  return out;
}

ChromaResult ChromaMask(const ColorImage& image, const ChromaSeed& seed,
                        HueDistance mode) {
  const PixelPos p = seed.position;
  if (p.x < 0 || p.y < 0 || p.x >= image.width || p.y >= image.height) {
    throw Error(ErrorCode::kInvalidArgument,
                "seed (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                    ") outside " + std::to_string(image.width) + "x" +
                    std::to_string(image.height) + " image");
  }
  const std::vector<Hsv> hsv = ToHsv(image);
  const Hsv seed_hsv = hsv[static_cast<size_t>(p.y) * image.width + p.x];
  return {ChromaMaskHsv(hsv, image.width, image.height, seed_hsv, seed.delta, mode),
          seed_hsv};
}

}  // namespace revos
