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

#ifndef REVOS_MASK_H_
#define REVOS_MASK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revos/phase.h"

namespace revos {

using ObjectId = uint8_t;

inline constexpr uint8_t kBackgroundLabel = 0;
inline constexpr uint8_t kVoidLabel = 255;
inline constexpr ObjectId kMinObjectId = 1;
inline constexpr ObjectId kMaxObjectId = 254;

// Per-pixel membership, row-major, one byte (0 or 1) per pixel.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return bits_.size(); }

  bool Get(int x, int y) const { return bits_[Index(x, y)] != 0; }
  void Set(int x, int y, bool on) { bits_[Index(x, y)] = on ? 1 : 0; }
  bool operator[](size_t i) const { return bits_[i] != 0; }

  std::span<const uint8_t> bits() const { return bits_; }
  std::span<uint8_t> mutable_bits() { return bits_; }

  size_t Count() const;
  bool Empty() const { return Count() == 0; }
  bool SameShape(const BinaryMask& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

  BinaryMask operator|(const BinaryMask& o) const;
  BinaryMask operator&(const BinaryMask& o) const;
  BinaryMask operator~() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  size_t Index(int x, int y) const {
    return static_cast<size_t>(y) * static_cast<size_t>(width_) +
           static_cast<size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bits_;
};

// Label map for one frame: 0 background, 1..254 instances, 255 void.
// Immutable once built.
class InstanceFrame {
 public:
  InstanceFrame() = default;
  // Throws Error(kInvalidArgument) unless width*height > 0 and the label
  // buffer has exactly that many entries.
  InstanceFrame(int width, int height, std::vector<uint8_t> labels);

  int width() const { return width_; }
  int height() const { return height_; }
  uint8_t at(int x, int y) const {
    return labels_[static_cast<size_t>(y) * static_cast<size_t>(width_) +
                   static_cast<size_t>(x)];
  }
  std::span<const uint8_t> labels() const { return labels_; }

  // Instance ids present in the frame, ascending; excludes background and void.
  std::vector<ObjectId> ObjectIds() const;

  bool SameShape(const InstanceFrame& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }
  bool operator==(const InstanceFrame&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> labels_;
};

// Bits set exactly where the label equals `id`; void never counts. An id
// that does not occur yields an all-false mask.
BinaryMask ExtractObject(const InstanceFrame& frame, ObjectId id);
BinaryMask VoidMask(const InstanceFrame& frame);
// Bits set where the label is 0.
BinaryMask BackgroundMask(const InstanceFrame& frame);

// Inverse of ExtractObject for building label maps in tests and tools: the
// frame carries `id` where `mask` is set and background elsewhere.
InstanceFrame FrameFromMask(const BinaryMask& mask, ObjectId id);

// Interleaved RGB with channels in [0, 1].
struct ColorImage {
  int width = 0;
  int height = 0;
  std::vector<float> rgb;

  ColorImage() = default;
  ColorImage(int w, int h)
      : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, 0.0f) {}

  float at(int x, int y, int c) const {
    return rgb[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  float& at(int x, int y, int c) {
    return rgb[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  bool operator==(const ColorImage&) const = default;
};

// Per-pixel probability in [0, 1].
struct SoftMask {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  SoftMask() = default;
  SoftMask(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

  // Pixels strictly above `level`.
  BinaryMask Threshold(double level = 0.5) const;
  static SoftMask FromBinary(const BinaryMask& m);
  bool operator==(const SoftMask&) const = default;
};

struct ObjectInfo {
  ObjectId id = 0;
  std::string description_en;
  std::string description_zh;

  bool operator==(const ObjectInfo&) const = default;
};

// An ordered run of label maps with its frame rate, object roster and
// (optional) phase annotation. Predictions usually carry no annotation.
class MaskSequence {
 public:
  // Throws Error(kEmptyInput) for zero frames, Error(kDimensionMismatch) for
  // frames of differing size, Error(kInvalidArgument) for fps <= 0, and
  // Error(kAnnotationMismatch) for an inconsistent annotation.
  MaskSequence(std::vector<InstanceFrame> frames, double fps,
               std::vector<ObjectInfo> objects,
               std::optional<PhaseAnnotation> annotation = std::nullopt);

  const std::vector<InstanceFrame>& frames() const { return frames_; }
  const InstanceFrame& frame(size_t i) const { return frames_.at(i); }
  size_t length() const { return frames_.size(); }
  double fps() const { return fps_; }
  const std::vector<ObjectInfo>& objects() const { return objects_; }
  const std::optional<PhaseAnnotation>& annotation() const {
    return annotation_;
  }
  int width() const { return frames_.front().width(); }
  int height() const { return frames_.front().height(); }

  std::vector<ObjectId> object_ids() const;

 private:
  std::vector<InstanceFrame> frames_;
  double fps_;
  std::vector<ObjectInfo> objects_;
  std::optional<PhaseAnnotation> annotation_;
};

}  // namespace revos

#endif  // REVOS_MASK_H_
