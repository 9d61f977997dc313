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

#include "revos/mask.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "revos/error.h"

namespace revos {
namespace {

void RequireShape(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

BinaryMask Select(const InstanceFrame& frame, uint8_t label) {
  BinaryMask out(frame.width(), frame.height());
  auto labels = frame.labels();
  auto bits = out.mutable_bits();
  for (size_t i = 0; i < labels.size(); ++i) bits[i] = labels[i] == label;
  return out;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height)
    : width_(width),
      height_(height),
      bits_(static_cast<size_t>(std::max(width, 0)) * std::max(height, 0), 0) {
  RequireShape(width, height);
}

BinaryMask::BinaryMask(int width, int height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  RequireShape(width, height);
  if (bits_.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument, "bit buffer size mismatch");
  }
  for (auto& b : bits_) b = b != 0;
}

size_t BinaryMask::Count() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinaryMask BinaryMask::operator|(const BinaryMask& o) const {
  if (!SameShape(o)) throw Error(ErrorCode::kDimensionMismatch, "mask union");
  BinaryMask out(*this);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= o.bits_[i];
  return out;
}

BinaryMask BinaryMask::operator&(const BinaryMask& o) const {
  if (!SameShape(o)) {
    throw Error(ErrorCode::kDimensionMismatch, "mask intersection");
  }
  BinaryMask out(*this);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= o.bits_[i];
  return out;
}

BinaryMask BinaryMask::operator~() const {
  BinaryMask out(*this);
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

InstanceFrame::InstanceFrame(int width, int height, std::vector<uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  RequireShape(width, height);
  if (labels_.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "label buffer holds " + std::to_string(labels_.size()) +
                    " entries for a " + std::to_string(width) + "x" +
                    std::to_string(height) + " frame");
  }
}

std::vector<ObjectId> InstanceFrame::ObjectIds() const {
  std::array<bool, 256> seen{};
  for (uint8_t l : labels_) seen[l] = true;
  std::vector<ObjectId> ids;
  for (int id = kMinObjectId; id <= kMaxObjectId; ++id) {
    if (seen[id]) ids.push_back(static_cast<ObjectId>(id));
  }
  return ids;
}

BinaryMask ExtractObject(const InstanceFrame& frame, ObjectId id) {
  if (id < kMinObjectId || id > kMaxObjectId) {
    throw Error(ErrorCode::kInvalidArgument,
                "object id must be in 1..254, got " + std::to_string(id));
  }
  return Select(frame, id);
}

BinaryMask VoidMask(const InstanceFrame& frame) {
  return Select(frame, kVoidLabel);
}

BinaryMask BackgroundMask(const InstanceFrame& frame) {
  return Select(frame, kBackgroundLabel);
}

InstanceFrame FrameFromMask(const BinaryMask& mask, ObjectId id) {
  std::vector<uint8_t> labels(mask.size());
  auto bits = mask.bits();
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = bits[i] ? id : 0;
  return InstanceFrame(mask.width(), mask.height(), std::move(labels));
}

BinaryMask SoftMask::Threshold(double level) const {
  BinaryMask out(width, height);
  auto bits = out.mutable_bits();
  for (size_t i = 0; i < values.size(); ++i) bits[i] = values[i] > level;
  return out;
}

SoftMask SoftMask::FromBinary(const BinaryMask& m) {
  SoftMask out(m.width(), m.height());
  auto bits = m.bits();
  for (size_t i = 0; i < bits.size(); ++i) out.values[i] = bits[i] ? 1.0 : 0.0;
  return out;
}

MaskSequence::MaskSequence(std::vector<InstanceFrame> frames, double fps,
                           std::vector<ObjectInfo> objects,
                           std::optional<PhaseAnnotation> annotation)
    : frames_(std::move(frames)),
      fps_(fps),
      objects_(std::move(objects)),
      annotation_(annotation) {
  if (frames_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "sequence has no frames");
  }
  for (size_t i = 1; i < frames_.size(); ++i) {
    if (!frames_[i].SameShape(frames_[0])) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "frame " + std::to_string(i) + " is " +
                      std::to_string(frames_[i].width()) + "x" +
                      std::to_string(frames_[i].height()) + ", frame 0 is " +
                      std::to_string(frames_[0].width()) + "x" +
                      std::to_string(frames_[0].height()));
    }
  }
  if (!(fps_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  }
  for (const auto& o : objects_) {
    if (o.id < kMinObjectId || o.id > kMaxObjectId) {
      throw Error(ErrorCode::kInvalidArgument,
                  "object id out of range: " + std::to_string(o.id));
    }
  }
  if (annotation_) ValidateAnnotation(*annotation_);
}

std::vector<ObjectId> MaskSequence::object_ids() const {
  std::vector<ObjectId> ids;
  ids.reserve(objects_.size());
  for (const auto& o : objects_) ids.push_back(o.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace revos
