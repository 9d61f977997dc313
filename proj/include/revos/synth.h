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

#ifndef REVOS_SYNTH_H_
#define REVOS_SYNTH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revos/mask.h"

namespace revos {

// Deterministic synthetic sequences with ground truth, modelled on a few
// transition archetypes: particles dispersing from a blob (Split), a region
// spreading with a ragged edge (Diffuse), a blob translating while it
// deforms (Flow), and a still scene (Static).

enum class SynthKind { kSplit, kDiffuse, kFlow, kStatic };

std::string_view SynthKindName(SynthKind kind);  // "split", ...
SynthKind ParseSynthKind(std::string_view name);  // throws Error(kParse)

struct SynthSpec {
  SynthKind kind = SynthKind::kStatic;
  int length = 20;
  int width = 64;
  int height = 64;
  uint64_t seed = 0;
  // Logit noise amplitude for backbone stress runs; carried with the case,
  // not used to render it.
  double noise = 0.0;

  // Throws Error(kInvalidArgument) unless length >= 2, both dimensions
  // >= 16 and noise >= 0.
  void Validate() const;
};

struct SynthCase {
  SynthSpec spec;
  std::vector<ColorImage> images;
  MaskSequence gt;  // object id 1
};

// Pure function of `spec`. Colors are quantized to 8 bits so cases survive
// a PNG round trip unchanged.
SynthCase Generate(const SynthSpec& spec);

// Named presets: "split", "diffuse", "flow", "static".
SynthSpec PresetSpec(std::string_view preset, uint64_t seed);

// Cross product presets x seeds, preset-major. Throws Error(kEmptyInput) if
// either list is empty.
std::vector<SynthCase> Corpus(std::span<const std::string> presets,
                              std::span<const uint64_t> seeds);

}  // namespace revos

#endif  // REVOS_SYNTH_H_
