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

#ifndef REVOS_REFINE_H_
#define REVOS_REFINE_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "revos/kernels.h"
#include "revos/mask.h"

namespace revos {

// Forward propagation with periodic reverse refinement.
//
// The forward pass predicts frames 1..N-1 from the annotated frame 0 with a
// pluggable propagator. Every forward output is boosted (sigmoid of the
// scaled logits) before it re-enters the propagator's memory. Every
// `interval` frames, and once at the end, a reverse pass restarts from the
// current frame with an emptied reverse memory and walks back over the last
// `window` frames; each of those frames then gets the fusion of its forward
// and reverse readouts. Frames no reverse pass reaches keep their forward
// mask, so window == 0 or interval == 0 reduces to the plain forward pass.

enum class FusionMode {
  kConfidenceWeighted,
  kAverage,
  kForwardOnly,
  kReverseOnly,
};

std::string_view FusionModeName(FusionMode mode);
FusionMode ParseFusionMode(std::string_view name);  // throws Error(kParse)

struct ReverseConfig {
  int window = 30;    // frames walked back per reverse pass (T)
  int interval = 30;  // frames between reverse passes (L)
  double alpha = 1.0; // boosting factor; 1 is a plain sigmoid
  FusionMode fusion = FusionMode::kConfidenceWeighted;

  // Throws Error(kInvalidArgument) on negative window/interval or alpha <= 0.
  void Validate() const;
};

// Per-pixel decoded logits for one object and the propagator's confidence.
struct Readout {
  int width = 0;
  int height = 0;
  std::vector<double> logits;
  std::vector<double> confidence;  // in [0, 1]

  bool operator==(const Readout&) const = default;
};

// Logits clamp to +-kMaxLogit so they stay finite.
inline constexpr double kMaxLogit = 20.0;

double Sigmoid(double x);
SoftMask Decode(const Readout& readout);  // sigmoid(logits)
// Readout that reproduces a known mask (used for the annotated frame).
Readout ReadoutFromMask(const SoftMask& mask);

struct MemoryEntry {
  std::shared_ptr<const ColorImage> image;
  SoftMask mask;
};

// Memory of (frame, soft mask) pairs in insertion order. The first entry is
// the anchor (the annotated frame, or a reverse pass's seed) and is never
// evicted; once `capacity` is reached the oldest non-anchor entry goes.
// capacity == 0 means unbounded.
class PropagatorState {
 public:
  explicit PropagatorState(size_t capacity = 0) : capacity_(capacity) {}

  void Push(std::shared_ptr<const ColorImage> image, SoftMask mask);
  void Clear() { entries_.clear(); }

  size_t size() const { return entries_.size(); }
  size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }
  const std::deque<MemoryEntry>& entries() const { return entries_; }
  std::deque<MemoryEntry>& mutable_entries() { return entries_; }

 private:
  size_t capacity_;
  std::deque<MemoryEntry> entries_;
};

// The seam a matching backbone plugs into. Step must be deterministic in
// (state, target) and is called from one thread at a time per state.
class Propagator {
 public:
  virtual ~Propagator() = default;
  // Throws Error(kEmptyInput) when `state` is empty.
  virtual Readout Step(const PropagatorState& state,
                       const ColorImage& target) const = 0;
  // Memory capacity the pipeline should give states driving this propagator.
  virtual size_t memory_capacity() const { return 0; }
};

// Classical stand-in backbone: softmax-weighted patch matching over the
// memory frames (see kernels::PatchMatchReadout). The transferred
// probability p becomes logit(p); confidence is |2p - 1|.
class PatchMatchBackbone : public Propagator {
 public:
  // Throws Error(kInvalidArgument) unless both radii >= 1, temperature > 0
  // and memory_capacity >= 1.
  explicit PatchMatchBackbone(kernels::MatchParams params = {},
                              size_t memory_capacity = 3);

  Readout Step(const PropagatorState& state,
               const ColorImage& target) const override;
  size_t memory_capacity() const override { return memory_capacity_; }
  const kernels::MatchParams& params() const { return params_; }

 private:
  kernels::MatchParams params_;
  size_t memory_capacity_;
};

// Adds seeded Gaussian noise (standard deviation `amplitude`) to the wrapped
// propagator's logits. The noise stream is keyed on the seed and a digest of
// (state, target), so Step stays a pure function of its inputs.
class NoisyPropagator : public Propagator {
 public:
  NoisyPropagator(const Propagator& inner, double amplitude, uint64_t seed);

  Readout Step(const PropagatorState& state,
               const ColorImage& target) const override;
  size_t memory_capacity() const override { return inner_.memory_capacity(); }

 private:
  const Propagator& inner_;
  double amplitude_;
  uint64_t seed_;
};

// sigmoid(alpha * logits). Throws Error(kInvalidArgument) for alpha <= 0.
SoftMask Boost(const Readout& readout, double alpha);

// ConfidenceWeighted: w = c_f / (c_f + c_r) per pixel (0.5 when both are 0),
// output sigmoid(w * l_f + (1 - w) * l_r). Average fixes w = 0.5;
// ForwardOnly / ReverseOnly pass one branch through.
SoftMask Fuse(const Readout& forward, const Readout& reverse, FusionMode mode);

struct ReversePassRecord {
  size_t seed_frame = 0;
  size_t first_frame = 0;  // inclusive
  size_t last_frame = 0;   // inclusive, seed_frame - 1
  size_t memory_size_after = 0;
};

struct RefineResult {
  std::vector<SoftMask> forward_masks;
  std::vector<SoftMask> refined_masks;
  std::vector<Readout> forward_readouts;
  std::vector<std::optional<Readout>> reverse_readouts;  // latest pass per frame
  std::vector<ReversePassRecord> passes;
};

// Called after each reverse pass finishes, with the pass index and the
// reverse memory it left behind.
using ReversePassObserver =
    std::function<void(size_t pass, PropagatorState& reverse_memory)>;

// Walks `frames` backwards (last to first) from a memory holding only the
// seed. Each output is boosted and appended to the memory. Readouts come
// back in forward order. `memory` is cleared first. Throws
// Error(kEmptyInput) for an empty window.
std::vector<Readout> RunReversePass(
    std::span<const std::shared_ptr<const ColorImage>> frames,
    const std::shared_ptr<const ColorImage>& seed_image,
    const SoftMask& seed_mask, const Propagator& propagator, double alpha,
    PropagatorState& memory);
std::vector<Readout> RunReversePass(
    std::span<const std::shared_ptr<const ColorImage>> frames,
    const std::shared_ptr<const ColorImage>& seed_image,
    const SoftMask& seed_mask, const Propagator& propagator,
    double alpha = 1.0);

// Single-object pipeline. `first_mask` is the annotation of frame 0 and is
// kept verbatim as frame 0 of both outputs.
RefineResult RunRevos(std::span<const ColorImage> images,
                      const BinaryMask& first_mask,
                      const Propagator& propagator, const ReverseConfig& config,
                      const ReversePassObserver& observer = {});

struct MultiObjectResult {
  std::vector<ObjectId> ids;
  std::vector<RefineResult> per_object;
  std::vector<InstanceFrame> forward_labels;
  std::vector<InstanceFrame> refined_labels;
};

// Runs every object of `first_frame` as an independent channel and merges
// with a per-pixel argmax, background scoring 1 - max. Ties go to the lower
// id. Void pixels in `first_frame` are treated as background.
MultiObjectResult RunRevosMulti(std::span<const ColorImage> images,
                                const InstanceFrame& first_frame,
                                const Propagator& propagator,
                                const ReverseConfig& config);

// Argmax merge of per-object soft masks.
InstanceFrame MergeObjects(std::span<const ObjectId> ids,
                           std::span<const SoftMask* const> masks);

}  // namespace revos

#endif  // REVOS_REFINE_H_
