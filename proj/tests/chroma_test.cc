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
#include <vector>

#include "gtest/gtest.h"
#include "revos/chroma.h"
#include "revos/error.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace revos {
namespace {

bool Single(const Hsv& seed, const Hsv& pixel, double delta, HueDistance mode) {
  const std::vector<Hsv> px = {pixel};
  return ChromaMaskHsv(px, 1, 1, seed, delta, mode)[0];
}

TEST(RgbToHsv, Examples) {
  EXPECT_EQ(RgbToHsv(1, 0, 0), (Hsv{0, 1, 1}));
  EXPECT_EQ(RgbToHsv(0.5, 0.5, 0.5), (Hsv{0, 0, 0.5}));
  const Hsv g = RgbToHsv(0, 1, 0);
  EXPECT_DOUBLE_EQ(g.h, 1.0 / 3.0);
  EXPECT_EQ(g.s, 1.0);
  EXPECT_EQ(g.v, 1.0);
}

TEST(RgbToHsv, RangeChecked) {
  EXPECT_THROW(RgbToHsv(1.5, 0, 0), Error);
  EXPECT_THROW(RgbToHsv(0, -0.1, 0), Error);
}

TEST(RgbToHsvProperty, AgreesWithColorsys) {
  gen::Engine e(51);
  for (int trial = 0; trial < 500; ++trial) {
    const double r = gen::Unit(e), g = gen::Unit(e), b = gen::Unit(e);
    const Hsv hsv = RgbToHsv(r, g, b);
    const auto ref = oracle::ColorsysHsv(r, g, b);
    ASSERT_NEAR(hsv.h, ref[0], 1e-12);
    ASSERT_NEAR(hsv.s, ref[1], 1e-12);
    ASSERT_NEAR(hsv.v, ref[2], 1e-12);
    ASSERT_GE(hsv.h, 0.0);
    ASSERT_LT(hsv.h, 1.0);
  }
}

TEST(ChromaMask, ZeroDeltaIsEmpty) {
  gen::Engine e(52);
  const ColorImage img = gen::Image(e, 6, 6);
  EXPECT_TRUE(ChromaMask(img, ChromaSeed{{2, 3}, 0.0}).mask.Empty());
}

TEST(ChromaMask, WorkedExamples) {
  const Hsv seed{0.50, 0.40, 0.60};
  EXPECT_TRUE(Single(seed, {0.51, 0.50, 0.70}, 0.2, HueDistance::kCircular));
  EXPECT_FALSE(Single(seed, {0.53, 0.50, 0.70}, 0.2, HueDistance::kCircular));
}

TEST(ChromaMask, SeedOutOfBounds) {
  const ColorImage img(4, 4);
  EXPECT_THROW(ChromaMask(img, ChromaSeed{{4, 0}, 0.1}), Error);
  EXPECT_THROW(ChromaMask(img, ChromaSeed{{0, -1}, 0.1}), Error);
}

TEST(ChromaMask, DeltaRangeChecked) {
  const ColorImage img(2, 2);
  EXPECT_THROW(ChromaMask(img, ChromaSeed{{0, 0}, 1.5}), Error);
}

TEST(ChromaMask, RecordsSeedHsv) {
  ColorImage img(3, 1);
  img.at(1, 0, 0) = 1.0f;
  const ChromaResult r = ChromaMask(img, ChromaSeed{{1, 0}, 0.5});
  EXPECT_EQ(r.seed_hsv, (Hsv{0, 1, 1}));
  EXPECT_EQ(r.mask, BinaryMask(3, 1, {0, 1, 0}));
}

TEST(ChromaMask, RedWrapsUnderCircularHue) {
  const Hsv seed{0.995, 0.8, 0.8};
  const Hsv pixel{0.004, 0.8, 0.8};
  EXPECT_TRUE(Single(seed, pixel, 0.2, HueDistance::kCircular));
  EXPECT_FALSE(Single(seed, pixel, 0.2, HueDistance::kLiteral));
}

TEST(ChromaProperty, LiteralModeIsTheRuleAsPrinted) {
  gen::Engine e(53);
  for (int trial = 0; trial < 500; ++trial) {
    const Hsv seed{gen::Unit(e), gen::Unit(e), gen::Unit(e)};
    const Hsv px{gen::Unit(e), gen::Unit(e), gen::Unit(e)};
    const double delta = gen::Unit(e);
    ASSERT_EQ(Single(seed, px, delta, HueDistance::kLiteral),
              oracle::LiteralRule({seed.h, seed.s, seed.v}, {px.h, px.s, px.v}, delta));
  }
}

TEST(ChromaProperty, ModesDifferOnlyAcrossTheWrap) {
  gen::Engine e(54);
  for (int trial = 0; trial < 2000; ++trial) {
    const Hsv seed{gen::Unit(e), gen::Unit(e), gen::Unit(e)};
    const Hsv px{gen::Unit(e), seed.s, seed.v};
    const double delta = gen::Unit(e);
    const bool c = Single(seed, px, delta, HueDistance::kCircular);
    const bool l = Single(seed, px, delta, HueDistance::kLiteral);
    if (c != l) ASSERT_GT(std::fabs(px.h - seed.h), 0.5);
  }
}

TEST(ChromaProperty, MonotoneInDelta) {
  gen::Engine e(55);
  for (int trial = 0; trial < 30; ++trial) {
    const ColorImage img = gen::Image(e, 12, 12);
    const PixelPos pos{gen::Int(e, 0, 11), gen::Int(e, 0, 11)};
    const double d1 = gen::Unit(e), d2 = d1 + (1.0 - d1) * gen::Unit(e);
    const BinaryMask small = ChromaMask(img, {pos, d1}).mask;
    const BinaryMask large = ChromaMask(img, {pos, d2}).mask;
    ASSERT_EQ((small & large), small);
  }
}

TEST(ChromaProperty, CircularHueGapAtMostHalf) {
  gen::Engine e(56);
  for (int trial = 0; trial < 1000; ++trial) {
    ASSERT_LE(HueDifference(gen::Unit(e), gen::Unit(e), HueDistance::kCircular), 0.5);
  }
}

}  // namespace
}  // namespace revos
