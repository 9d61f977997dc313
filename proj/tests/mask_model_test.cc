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

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <png.h>

#include "gtest/gtest.h"
#include "revos/error.h"
#include "revos/io.h"
#include "revos/mask.h"
#include "revos/phase.h"
#include "support/generators.h"
#include "support/temp_dir.h"

namespace revos {
namespace {

namespace fs = std::filesystem;

using testing_support::TempDir;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInternal;
}

InstanceFrame Frame(int w, int h, std::vector<uint8_t> labels) {
  return InstanceFrame(w, h, std::move(labels));
}

// -- phase table --------------------------------------------------------

TEST(PhaseTable, CategoryCounts) {
  std::array<int, 4> counts{};
  for (const auto& rule : TransitionTable()) ++counts[static_cast<int>(rule.category)];
  EXPECT_EQ(counts[0], 7);
  EXPECT_EQ(counts[1], 5);
  EXPECT_EQ(counts[2], 1);
  EXPECT_EQ(counts[3], 10);
}

TEST(PhaseTable, RowsAreIndexedByTransition) {
  for (int i = 0; i < kNumTransitions; ++i) {
    EXPECT_EQ(static_cast<int>(TransitionTable()[i].transition), i);
  }
}

TEST(PhaseTable, MeltAcceptsRigidToNonViscous) {
  const PhaseAnnotation a =
      MakeAnnotation(Phase::kRigidSolid, Phase::kNonViscousLiquid, Transition::kMelt);
  EXPECT_EQ(a.category, TransitionCategory::kCrossPhase);
}

TEST(PhaseTable, MeltRejectsGasStart) {
  EXPECT_EQ(CodeOf([] {
              MakeAnnotation(Phase::kAerosolGas, Phase::kNonViscousLiquid,
                             Transition::kMelt);
            }),
            ErrorCode::kAnnotationMismatch);
}

TEST(PhaseTable, WrongCategoryRejected) {
  PhaseAnnotation a{Phase::kAerosolGas, Phase::kAerosolGas, Transition::kDiffuse,
                    TransitionCategory::kCrossPhase};
  EXPECT_EQ(CodeOf([&] { ValidateAnnotation(a); }), ErrorCode::kAnnotationMismatch);
}

// Exactly the table's pairs are accepted, for every transition.
TEST(PhaseTable, ConsistencyMatchesRuleSets) {
  for (const auto& rule : TransitionTable()) {
    for (int i = 0; i < 6; ++i) {
      for (int f = 0; f < 6; ++f) {
        const Phase pi = static_cast<Phase>(i), pf = static_cast<Phase>(f);
        EXPECT_EQ(IsConsistent(pi, pf, rule.transition),
                  rule.initial.Contains(pi) && rule.final_state.Contains(pf));
      }
    }
  }
}

TEST(PhaseNames, ParseIsLenient) {
  EXPECT_EQ(ParseTransition("Flow out"), Transition::kFlowOut);
  EXPECT_EQ(ParseTransition("flow_out"), Transition::kFlowOut);
  EXPECT_EQ(ParsePhase("non-viscous liquid"), Phase::kNonViscousLiquid);
  EXPECT_EQ(ParseCategory("cp"), TransitionCategory::kCrossPhase);
  EXPECT_EQ(CodeOf([] { ParsePhase("plasma"); }), ErrorCode::kParse);
}

TEST(PhaseNames, RoundTrip) {
  for (int i = 0; i < kNumTransitions; ++i) {
    const auto t = static_cast<Transition>(i);
    EXPECT_EQ(ParseTransition(TransitionName(t)), t);
  }
  for (int i = 0; i < 6; ++i) {
    const auto p = static_cast<Phase>(i);
    EXPECT_EQ(ParsePhase(PhaseName(p)), p);
  }
}

// -- frames and masks ---------------------------------------------------

TEST(InstanceFrame, RejectsBadShape) {
  EXPECT_EQ(CodeOf([] { Frame(0, 3, {}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Frame(2, 2, {0, 0, 0}); }), ErrorCode::kInvalidArgument);
}

TEST(ExtractObject, Examples) {
  const InstanceFrame f = Frame(2, 2, {1, 2, 1, 0});
  EXPECT_EQ(ExtractObject(f, 1), BinaryMask(2, 2, {1, 0, 1, 0}));
  EXPECT_TRUE(ExtractObject(f, 7).Empty());
  EXPECT_EQ(ExtractObject(Frame(2, 1, {1, 255}), 1), BinaryMask(2, 1, {1, 0}));
}

TEST(VoidMask, Examples) {
  EXPECT_EQ(VoidMask(Frame(2, 1, {1, 255})), BinaryMask(2, 1, {0, 1}));
  EXPECT_TRUE(VoidMask(Frame(2, 1, {1, 0})).Empty());
  EXPECT_EQ(VoidMask(Frame(2, 1, {255, 255})).Count(), 2u);
}

TEST(InstanceFrame, ObjectIdsExcludeVoidAndBackground) {
  EXPECT_EQ(Frame(4, 1, {0, 9, 255, 3}).ObjectIds(), (std::vector<ObjectId>{3, 9}));
}

// Objects, background and void tile the frame.
TEST(MaskProperty, LabelsPartitionTheGrid) {
  gen::Engine e(11);
  for (int trial = 0; trial < 50; ++trial) {
    const InstanceFrame f =
        gen::Labels(e, gen::Int(e, 1, 12), gen::Int(e, 1, 12), 5, 0.2);
    std::vector<int> cover(static_cast<size_t>(f.width()) * f.height(), 0);
    std::vector<BinaryMask> parts = {BackgroundMask(f), VoidMask(f)};
    for (int id = 1; id <= 5; ++id) parts.push_back(ExtractObject(f, id));
    for (const auto& m : parts) {
      for (size_t i = 0; i < m.size(); ++i) cover[i] += m[i];
    }
    for (int c : cover) ASSERT_EQ(c, 1);
  }
}

TEST(BinaryMask, SetAlgebra) {
  const BinaryMask a(3, 1, {1, 1, 0}), b(3, 1, {0, 1, 1});
  EXPECT_EQ(a | b, BinaryMask(3, 1, {1, 1, 1}));
  EXPECT_EQ(a & b, BinaryMask(3, 1, {0, 1, 0}));
  EXPECT_EQ(~a, BinaryMask(3, 1, {0, 0, 1}));
}

TEST(MaskSequence, Invariants) {
  const InstanceFrame small = Frame(4, 4, std::vector<uint8_t>(16, 0));
  const InstanceFrame big = Frame(8, 8, std::vector<uint8_t>(64, 0));
  EXPECT_EQ(CodeOf([&] { MaskSequence({}, 30, {}); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([&] { MaskSequence({small, big}, 30, {}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] { MaskSequence({small}, 0.0, {}); }),
            ErrorCode::kInvalidArgument);
  const MaskSequence ok({small, small}, 24, {});
  EXPECT_EQ(ok.length(), 2u);
  EXPECT_EQ(ok.fps(), 24);
}

// -- files --------------------------------------------------------------

void WriteGray16(const fs::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = 2;
  img.height = 2;
  img.format = PNG_FORMAT_LINEAR_Y;
  const std::array<uint16_t, 4> px = {0, 1, 1, 65535};
  ASSERT_TRUE(png_image_write_to_file(&img, path.c_str(), 0, px.data(), 0, nullptr));
}

TEST(LoadFrame, DecodesIndices) {
  TempDir dir;
  const InstanceFrame f = Frame(2, 2, {0, 1, 1, 255});
  SaveFrame(f, dir.path() / "f.png");
  const InstanceFrame back = LoadFrame(dir.path() / "f.png");
  EXPECT_EQ(back, f);
  EXPECT_EQ(VoidMask(back), BinaryMask(2, 2, {0, 0, 0, 1}));
}

TEST(LoadFrame, AllZeroHasNoInstances) {
  TempDir dir;
  SaveFrame(Frame(3, 2, std::vector<uint8_t>(6, 0)), dir.path() / "z.png");
  EXPECT_TRUE(LoadFrame(dir.path() / "z.png").ObjectIds().empty());
}

TEST(LoadFrame, SixteenBitRejected) {
  TempDir dir;
  WriteGray16(dir.path() / "deep.png");
  EXPECT_EQ(CodeOf([&] { LoadFrame(dir.path() / "deep.png"); }), ErrorCode::kBitDepth);
}

TEST(LoadFrame, MissingAndGarbage) {
  TempDir dir;
  EXPECT_EQ(CodeOf([&] { LoadFrame(dir.path() / "nope.png"); }), ErrorCode::kMissingFile);
  std::ofstream(dir.path() / "junk.png") << "not a png";
  EXPECT_EQ(CodeOf([&] { LoadFrame(dir.path() / "junk.png"); }), ErrorCode::kUnreadable);
}

TEST(LoadFrame, RoundTripProperty) {
  TempDir dir;
  gen::Engine e(3);
  for (int trial = 0; trial < 20; ++trial) {
    const InstanceFrame f =
        gen::Labels(e, gen::Int(e, 1, 40), gen::Int(e, 1, 40), 254, 0.1);
    SaveFrame(f, dir.path() / "rt.png");
    ASSERT_EQ(LoadFrame(dir.path() / "rt.png"), f);
  }
}

TEST(ColorImage, RoundTripOnByteGrid) {
  TempDir dir;
  gen::Engine e(5);
  const ColorImage img = gen::Image(e, 7, 5);
  SaveColorImage(img, dir.path() / "c.png");
  EXPECT_EQ(LoadColorImage(dir.path() / "c.png"), img);
}

void WriteManifestJson(const fs::path& path, const std::string& body) {
  std::ofstream(path) << body;
}

TEST(LoadSequence, MeltManifestAccepted) {
  TempDir dir;
  for (int i = 0; i < 3; ++i) {
    SaveFrame(Frame(4, 4, std::vector<uint8_t>(16, i == 0 ? 1 : 0)),
              dir.path() / ("f" + std::to_string(i) + ".png"));
  }
  WriteManifestJson(dir.path() / "manifest.json", R"({
    "frames": ["f0.png", "f1.png", "f2.png"], "fps": 30,
    "objects": [{"id": 1, "description_en": "ice", "description_zh": "冰"}],
    "phase": {"initial": "RigidSolid", "final": "NonViscousLiquid",
              "transition": "Melt"}})");
  const MaskSequence s = LoadSequence(dir.path() / "manifest.json");
  EXPECT_EQ(s.length(), 3u);
  EXPECT_EQ(s.fps(), 30);
  ASSERT_TRUE(s.annotation().has_value());
  EXPECT_EQ(s.annotation()->category, TransitionCategory::kCrossPhase);
  EXPECT_EQ(s.objects()[0].description_zh, "冰");
}

TEST(LoadSequence, GasMeltRejected) {
  TempDir dir;
  SaveFrame(Frame(4, 4, std::vector<uint8_t>(16, 0)), dir.path() / "f0.png");
  WriteManifestJson(dir.path() / "manifest.json", R"({
    "frames": ["f0.png"], "fps": 30,
    "phase": {"initial": "AerosolGas", "final": "NonViscousLiquid",
              "transition": "Melt"}})");
  EXPECT_EQ(CodeOf([&] { LoadSequence(dir.path() / "manifest.json"); }),
            ErrorCode::kAnnotationMismatch);
}

TEST(LoadSequence, MixedSizesRejected) {
  TempDir dir;
  SaveFrame(Frame(4, 4, std::vector<uint8_t>(16, 0)), dir.path() / "a.png");
  SaveFrame(Frame(8, 8, std::vector<uint8_t>(64, 0)), dir.path() / "b.png");
  WriteManifestJson(dir.path() / "manifest.json",
                    R"({"frames": ["a.png", "b.png"], "fps": 30})");
  EXPECT_EQ(CodeOf([&] { LoadSequence(dir.path() / "manifest.json"); }),
            ErrorCode::kDimensionMismatch);
}

TEST(LoadSequence, MissingFrameNamed) {
  TempDir dir;
  SaveFrame(Frame(4, 4, std::vector<uint8_t>(16, 0)), dir.path() / "a.png");
  WriteManifestJson(dir.path() / "manifest.json",
                    R"({"frames": ["a.png", "gone.png"], "fps": 30})");
  try {
    LoadSequence(dir.path() / "manifest.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingFile);
    EXPECT_NE(std::string(e.what()).find("gone.png"), std::string::npos);
  }
}

TEST(LoadSequence, ObjectsDerivedWhenAbsent) {
  TempDir dir;
  SaveFrame(Frame(2, 2, {0, 4, 2, 0}), dir.path() / "a.png");
  WriteManifestJson(dir.path() / "manifest.json", R"({"frames": ["a.png"], "fps": 10})");
  EXPECT_EQ(LoadSequence(dir.path() / "manifest.json").object_ids(),
            (std::vector<ObjectId>{2, 4}));
}

TEST(SaveSequence, RoundTrip) {
  TempDir dir;
  gen::Engine e(8);
  std::vector<InstanceFrame> frames;
  std::vector<ColorImage> images;
  for (int i = 0; i < 3; ++i) {
    frames.push_back(gen::Labels(e, 6, 5, 2, 0.1));
    images.push_back(gen::Image(e, 6, 5));
  }
  const MaskSequence seq(frames, 12.5, {{1, "a", "甲"}, {2, "b", "乙"}},
                         MakeAnnotation(Phase::kAerosolGas, Phase::kAerosolGas,
                                        Transition::kDiffuse));
  const fs::path manifest = SaveSequence(seq, dir.path() / "seq", &images);
  const Manifest m = ReadManifest(manifest);
  const MaskSequence back = LoadSequence(m);
  EXPECT_EQ(back.frames(), seq.frames());
  EXPECT_EQ(back.fps(), 12.5);
  EXPECT_EQ(back.objects(), seq.objects());
  EXPECT_EQ(back.annotation(), seq.annotation());
  EXPECT_EQ(LoadImages(m), images);
}

TEST(ExpandManifestArgs, DirectoriesAreSorted) {
  TempDir dir;
  for (const char* name : {"b", "a", "c/d"}) {
    fs::create_directories(dir.path() / name);
    std::ofstream(dir.path() / name / "manifest.json") << "{}";
  }
  const auto found = ExpandManifestArgs({dir.path().string()});
  ASSERT_EQ(found.size(), 3u);
  EXPECT_EQ(found[0].parent_path().filename(), "a");
  EXPECT_EQ(found[1].parent_path().filename(), "b");
  EXPECT_EQ(found[2].parent_path().filename(), "d");
}

}  // namespace
}  // namespace revos
