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

#ifndef REVOS_IO_H_
#define REVOS_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "revos/mask.h"

namespace revos {

// Reads an 8-bit indexed (palette or grayscale) PNG; each index is a label.
// Throws Error(kMissingFile), Error(kUnreadable) or Error(kBitDepth).
InstanceFrame LoadFrame(const std::filesystem::path& path);
// Writes an 8-bit palette PNG using the usual VOC/DAVIS color map.
void SaveFrame(const InstanceFrame& frame, const std::filesystem::path& path);

ColorImage LoadColorImage(const std::filesystem::path& path);
// Channels are quantized to 8 bits (round(v * 255)).
void SaveColorImage(const ColorImage& image, const std::filesystem::path& path);

// On-disk description of a sequence. Paths are stored relative to the
// manifest's directory and resolved against it on read.
struct Manifest {
  std::filesystem::path directory;
  std::vector<std::string> frames;
  std::vector<std::string> images;  // optional color frames
  double fps = 0.0;
  std::vector<ObjectInfo> objects;
  std::optional<PhaseAnnotation> annotation;

  std::filesystem::path FramePath(size_t i) const { return directory / frames.at(i); }
  std::filesystem::path ImagePath(size_t i) const { return directory / images.at(i); }
};

Manifest ReadManifest(const std::filesystem::path& path);
void WriteManifest(const Manifest& manifest, const std::filesystem::path& path);

// Reads and validates a whole sequence. Nothing is returned unless every
// frame loads and the sequence invariants hold.
MaskSequence LoadSequence(const std::filesystem::path& manifest_path);
MaskSequence LoadSequence(const Manifest& manifest);
std::vector<ColorImage> LoadImages(const Manifest& manifest);

// Writes `mask_NNNN.png` (and `image_NNNN.png` when images are given) plus
// `manifest.json` into `directory`. Returns the manifest path.
std::filesystem::path SaveSequence(const MaskSequence& sequence,
                                   const std::filesystem::path& directory,
                                   const std::vector<ColorImage>* images = nullptr);

// Expands each argument: a directory yields every manifest.json beneath it
// (sorted by path), a file is taken as-is.
std::vector<std::filesystem::path> ExpandManifestArgs(
    const std::vector<std::string>& args);

}  // namespace revos

#endif  // REVOS_IO_H_
