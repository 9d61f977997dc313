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

#include "revos/synth.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "revos/error.h"
#include "revos/io.h"
#include "revos/metrics.h"

namespace revos {
namespace {

SynthSpec Spec(SynthKind kind, uint64_t seed, int length = 12) {
  SynthSpec s;
  s.kind = kind;
  s.seed = seed;
  s.length = length;
  return s;
}

size_t Area(const SynthCase& c, size_t t) {
  return ExtractObject(c.gt.frame(t), 1).Count();
}

TEST(SynthTest, Names) {
  for (SynthKind k : {SynthKind::kSplit, SynthKind::kDiffuse, SynthKind::kFlow,
                      SynthKind::kStatic}) {
    EXPECT_EQ(ParseSynthKind(SynthKindName(k)), k);
    EXPECT_EQ(PresetSpec(SynthKindName(k), 4).kind, k);
  }
  EXPECT_THROW(ParseSynthKind("melt"), Error);
  EXPECT_THROW(PresetSpec("melt", 1), Error);
}

TEST(SynthTest, ValidatesSpec) {
  SynthSpec s = Spec(SynthKind::kFlow, 1);
  s.length = 1;
  EXPECT_THROW(Generate(s), Error);
  s = Spec(SynthKind::kFlow, 1);
  s.width = 8;
  EXPECT_THROW(Generate(s), Error);
  s = Spec(SynthKind::kFlow, 1);
  s.noise = -1;
  EXPECT_THROW(Generate(s), Error);
}

TEST(SynthTest, StaticFramesAreIdentical) {
  const SynthCase c = Generate(Spec(SynthKind::kStatic, 2, 5));
  ASSERT_EQ(c.images.size(), 5u);
  ASSERT_EQ(c.gt.length(), 5u);
  for (size_t t = 1; t < 5; ++t) {
    EXPECT_EQ(c.images[t], c.images[0]);
    EXPECT_EQ(c.gt.frame(t), c.gt.frame(0));
  }
  EXPECT_FALSE(c.gt.annotation().has_value());
  EXPECT_GT(Area(c, 0), 0u);
}

TEST(SynthTest, SplitBreaksApart) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const SynthCase c = Generate(Spec(SynthKind::kSplit, seed, 20));
    const int first = LabelComponents(ExtractObject(c.gt.frame(0), 1)).count;
    const int last = LabelComponents(ExtractObject(c.gt.frame(19), 1)).count;
    EXPECT_EQ(first, 1) << seed;
    EXPECT_GT(last, first) << seed;
    EXPECT_EQ(c.gt.annotation()->initial, Phase::kParticulateSolid);
  }
}

TEST(SynthTest, DiffuseGrows) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const SynthCase c = Generate(Spec(SynthKind::kDiffuse, seed));
    for (size_t t = 1; t < c.gt.length(); ++t) {
      EXPECT_GT(Area(c, t), Area(c, t - 1)) << "seed " << seed << " frame " << t;
    }
  }
}

TEST(SynthTest, FlowMoves) {
  const SynthCase c = Generate(Spec(SynthKind::kFlow, 3));
  const auto a = BoxCentroid(ExtractObject(c.gt.frame(0), 1));
  const auto b = BoxCentroid(ExtractObject(c.gt.frame(11), 1));
  ASSERT_TRUE(a && b);
  EXPECT_TRUE(a->x != b->x || a->y != b->y);
}

TEST(SynthTest, DeterministicAndSeedSensitive) {
  for (SynthKind k : {SynthKind::kSplit, SynthKind::kDiffuse, SynthKind::kFlow}) {
    const SynthCase a = Generate(Spec(k, 7));
    const SynthCase b = Generate(Spec(k, 7));
    const SynthCase other = Generate(Spec(k, 8));
    EXPECT_EQ(a.images, b.images);
    EXPECT_EQ(a.gt.frames(), b.gt.frames());
    EXPECT_NE(a.images, other.images);
  }
}

TEST(SynthTest, ColorsAreEightBit) {
  const SynthCase c = Generate(Spec(SynthKind::kDiffuse, 5, 3));
  for (const ColorImage& img : c.images) {
    for (float v : img.rgb) {
      ASSERT_GE(v, 0.0f);
      ASSERT_LE(v, 1.0f);
      ASSERT_EQ(v, static_cast<float>(std::lround(v * 255.0) / 255.0));
    }
  }
}

TEST(SynthTest, CorpusIsPresetMajor) {
  const std::vector<std::string> presets = {"split", "flow"};
  const std::vector<uint64_t> seeds = {1, 2, 3};
  const auto corpus = Corpus(presets, seeds);
  ASSERT_EQ(corpus.size(), 6u);
  for (size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(corpus[i].spec.kind, i < 3 ? SynthKind::kSplit : SynthKind::kFlow);
    EXPECT_EQ(corpus[i].spec.seed, seeds[i % 3]);
    EXPECT_EQ(corpus[i].images, Generate(corpus[i].spec).images);
  }
  EXPECT_THROW(Corpus(presets, {}), Error);
  EXPECT_THROW(Corpus({}, seeds), Error);
}

TEST(SynthTest, SurvivesPngRoundTrip) {
  const SynthCase c = Generate(Spec(SynthKind::kSplit, 9, 4));
  const auto dir = std::filesystem::path(::testing::TempDir()) / "synth_round_trip";
  std::filesystem::remove_all(dir);
  const auto manifest_path = SaveSequence(c.gt, dir, &c.images);
  const Manifest m = ReadManifest(manifest_path);
  EXPECT_EQ(LoadImages(m), c.images);
  const MaskSequence back = LoadSequence(m);
  EXPECT_EQ(back.frames(), c.gt.frames());
  EXPECT_EQ(back.annotation(), c.gt.annotation());
}

}  // namespace
}  // namespace revos
