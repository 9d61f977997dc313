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

#include "revos/refine.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "revos/error.h"
#include "revos/random.h"

namespace revos {
namespace {

constexpr double kProbEps = 1e-9;

double Logit(double p) {
  p = std::clamp(p, kProbEps, 1.0 - kProbEps);
  return std::clamp(std::log(p / (1.0 - p)), -kMaxLogit, kMaxLogit);
}

void RequireSameShape(const Readout& a, const Readout& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kDimensionMismatch, "readouts differ in size");
  }
}

std::string Lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view FusionModeName(FusionMode mode) {
  switch (mode) {
    case FusionMode::kConfidenceWeighted: return "confidence-weighted";
    case FusionMode::kAverage: return "average";
    case FusionMode::kForwardOnly: return "forward-only";
    case FusionMode::kReverseOnly: return "reverse-only";
  }
  return "?";
}

FusionMode ParseFusionMode(std::string_view name) {
  const std::string key = Lower(name);
  for (FusionMode m : {FusionMode::kConfidenceWeighted, FusionMode::kAverage,
                       FusionMode::kForwardOnly, FusionMode::kReverseOnly}) {
    if (Lower(FusionModeName(m)) == key) return m;
  }
  if (key == "confidence" || key == "weighted") {
    return FusionMode::kConfidenceWeighted;
  }
  throw Error(ErrorCode::kParse, "unknown fusion mode '" + std::string(name) + "'");
}

void ReverseConfig::Validate() const {
  if (window < 0 || interval < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "window and interval must be non-negative");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  }
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

SoftMask Decode(const Readout& readout) {
  SoftMask out(readout.width, readout.height);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = Sigmoid(readout.logits[i]);
  }
  return out;
}

Readout ReadoutFromMask(const SoftMask& mask) {
  Readout r{mask.width, mask.height, std::vector<double>(mask.values.size()),
            std::vector<double>(mask.values.size())};
  for (size_t i = 0; i < mask.values.size(); ++i) {
    r.logits[i] = Logit(mask.values[i]);
    r.confidence[i] = std::fabs(2.0 * mask.values[i] - 1.0);
  }
  return r;
}

void PropagatorState::Push(std::shared_ptr<const ColorImage> image,
                           SoftMask mask) {
  entries_.push_back({std::move(image), std::move(mask)});
  if (capacity_ > 0) {
    while (entries_.size() > capacity_ && entries_.size() > 1) {
      entries_.erase(entries_.begin() + 1);
    }
  }
}

PatchMatchBackbone::PatchMatchBackbone(kernels::MatchParams params,
                                       size_t memory_capacity)
    : params_(params), memory_capacity_(memory_capacity) {
  if (params_.patch_radius < 1 || params_.search_radius < 1) {
    throw Error(ErrorCode::kInvalidArgument, "patch and search radius must be >= 1");
  }
  if (!(params_.temperature > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  if (memory_capacity_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "memory capacity must be >= 1");
  }
}

Readout PatchMatchBackbone::Step(const PropagatorState& state,
                                 const ColorImage& target) const {
  if (state.empty()) {
    throw Error(ErrorCode::kEmptyInput, "propagation needs a non-empty memory");
  }
  std::vector<kernels::MemoryView> views;
  views.reserve(state.size());
  for (const MemoryEntry& e : state.entries()) {
    if (e.image->width != target.width || e.image->height != target.height ||
        e.mask.width != target.width || e.mask.height != target.height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "memory frame differs in size from the target");
    }
    views.push_back({e.image.get(), e.mask.values});
  }
  const size_t n = static_cast<size_t>(target.width) * target.height;
  std::vector<double> prob(n), cost(n);
  kernels::PatchMatchReadout(views, target, params_, prob, cost);
  Readout r{target.width, target.height, std::vector<double>(n),
            std::vector<double>(n)};
  for (size_t i = 0; i < n; ++i) {
    r.logits[i] = Logit(prob[i]);
    r.confidence[i] = std::clamp(std::fabs(2.0 * prob[i] - 1.0), 0.0, 1.0);
  }
  return r;
}

NoisyPropagator::NoisyPropagator(const Propagator& inner, double amplitude,
                                 uint64_t seed)
    : inner_(inner), amplitude_(amplitude), seed_(seed) {
  if (!(amplitude >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise amplitude must be >= 0");
  }
}

Readout NoisyPropagator::Step(const PropagatorState& state,
                              const ColorImage& target) const {
  Readout r = inner_.Step(state, target);
  if (amplitude_ == 0.0) return r;
  Fnv1a digest;
  digest.Update(std::span<const float>(target.rgb));
  for (const MemoryEntry& e : state.entries()) {
    digest.Update(std::span<const float>(e.image->rgb));
    digest.Update(std::span<const double>(e.mask.values));
  }
  Rng rng = MakeRng(seed_, digest.digest());
  // The backbone's confidence follows its own (now perturbed) logits.
  for (size_t i = 0; i < r.logits.size(); ++i) {
    r.logits[i] =
        std::clamp(r.logits[i] + amplitude_ * Gaussian(rng), -kMaxLogit, kMaxLogit);
    r.confidence[i] = std::fabs(2.0 * Sigmoid(r.logits[i]) - 1.0);
  }
  return r;
}

SoftMask Boost(const Readout& readout, double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "boosting factor must be positive");
  }
  SoftMask out(readout.width, readout.height);
  for (size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = Sigmoid(alpha * readout.logits[i]);
  }
  return out;
}

SoftMask Fuse(const Readout& forward, const Readout& reverse, FusionMode mode) {
  RequireSameShape(forward, reverse);
  SoftMask out(forward.width, forward.height);
  for (size_t i = 0; i < out.values.size(); ++i) {
    const double lf = forward.logits[i];
    const double lr = reverse.logits[i];
    double x = 0.0;
    switch (mode) {
      case FusionMode::kConfidenceWeighted: {
        const double cf = forward.confidence[i];
        const double cr = reverse.confidence[i];
        const double w = cf + cr > 0.0 ? cf / (cf + cr) : 0.5;
        x = w * lf + (1.0 - w) * lr;
        break;
      }
      case FusionMode::kAverage:
        x = 0.5 * lf + 0.5 * lr;
        break;
      case FusionMode::kForwardOnly:
        x = lf;
        break;
      case FusionMode::kReverseOnly:
        x = lr;
        break;
    }
    out.values[i] = Sigmoid(x);
  }
  return out;
}

std::vector<Readout> RunReversePass(
    std::span<const std::shared_ptr<const ColorImage>> frames,
    const std::shared_ptr<const ColorImage>& seed_image,
    const SoftMask& seed_mask, const Propagator& propagator, double alpha,
    PropagatorState& memory) {
  if (frames.empty()) {
    throw Error(ErrorCode::kEmptyInput, "reverse pass over an empty window");
  }
  memory.Clear();
  memory.Push(seed_image, seed_mask);
  std::vector<Readout> readouts(frames.size());
  for (size_t k = frames.size(); k-- > 0;) {
    readouts[k] = propagator.Step(memory, *frames[k]);
    memory.Push(frames[k], Boost(readouts[k], alpha));
  }
  return readouts;
}

std::vector<Readout> RunReversePass(
    std::span<const std::shared_ptr<const ColorImage>> frames,
    const std::shared_ptr<const ColorImage>& seed_image,
    const SoftMask& seed_mask, const Propagator& propagator, double alpha) {
  PropagatorState memory(propagator.memory_capacity());
  return RunReversePass(frames, seed_image, seed_mask, propagator, alpha, memory);
}

RefineResult RunRevos(std::span<const ColorImage> images,
                      const BinaryMask& first_mask,
                      const Propagator& propagator, const ReverseConfig& config,
                      const ReversePassObserver& observer) {
  config.Validate();
  if (images.empty()) {
    throw Error(ErrorCode::kEmptyInput, "refinement needs at least one frame");
  }
  for (const ColorImage& img : images) {
    if (img.width != first_mask.width() || img.height != first_mask.height()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "frames and first-frame mask differ in size");
    }
  }
  const size_t n = images.size();
  std::vector<std::shared_ptr<const ColorImage>> frames;
  frames.reserve(n);
  for (const ColorImage& img : images) {
    frames.push_back(std::make_shared<const ColorImage>(img));
  }

  RefineResult result;
  result.forward_masks.resize(n);
  result.forward_readouts.resize(n);
  result.reverse_readouts.resize(n);

  const SoftMask annotated = SoftMask::FromBinary(first_mask);
  result.forward_masks[0] = annotated;
  result.forward_readouts[0] = ReadoutFromMask(annotated);

  PropagatorState forward_memory(propagator.memory_capacity());
  forward_memory.Push(frames[0], annotated);
  // One reverse memory for the whole run, emptied at the start of each pass.
  PropagatorState reverse_memory(propagator.memory_capacity());

  std::vector<std::optional<SoftMask>> fused(n);
  const bool reverse_enabled = config.window > 0 && config.interval > 0;
  for (size_t t = 1; t < n; ++t) {
    Readout r = propagator.Step(forward_memory, *frames[t]);
    result.forward_masks[t] = Decode(r);
    SoftMask boosted = Boost(r, config.alpha);
    forward_memory.Push(frames[t], boosted);
    result.forward_readouts[t] = std::move(r);

    if (!reverse_enabled) continue;
    const bool trigger = t % static_cast<size_t>(config.interval) == 0 || t == n - 1;
    if (!trigger) continue;
    // The annotated frame is never revisited.
    const size_t first =
        t > static_cast<size_t>(config.window) ? t - config.window : 1;
    if (first > t - 1) continue;
    std::span<const std::shared_ptr<const ColorImage>> window(
        frames.data() + first, t - first);
    std::vector<Readout> reverse = RunReversePass(
        window, frames[t], boosted, propagator, config.alpha, reverse_memory);
    for (size_t k = 0; k < reverse.size(); ++k) {
      const size_t s = first + k;
      fused[s] = Fuse(result.forward_readouts[s], reverse[k], config.fusion);
      result.reverse_readouts[s] = std::move(reverse[k]);
    }
    result.passes.push_back({t, first, t - 1, reverse_memory.size()});
    if (observer) observer(result.passes.size() - 1, reverse_memory);
  }

  result.refined_masks.resize(n);
  for (size_t t = 0; t < n; ++t) {
    result.refined_masks[t] = fused[t] ? std::move(*fused[t]) : result.forward_masks[t];
  }
  return result;
}

InstanceFrame MergeObjects(std::span<const ObjectId> ids,
                           std::span<const SoftMask* const> masks) {
  if (ids.empty() || ids.size() != masks.size()) {
    throw Error(ErrorCode::kInvalidArgument, "ids and masks must pair up");
  }
  const int w = masks[0]->width;
  const int h = masks[0]->height;
  std::vector<uint8_t> labels(static_cast<size_t>(w) * h, kBackgroundLabel);
  for (size_t i = 0; i < labels.size(); ++i) {
    double best = 0.0;
    size_t arg = 0;
    for (size_t k = 0; k < ids.size(); ++k) {
      const double p = masks[k]->values[i];
      if (k == 0 || p > best) {
        best = p;
        arg = k;
      }
    }
    if (best > 1.0 - best) labels[i] = ids[arg];
  }
  return InstanceFrame(w, h, std::move(labels));
}

MultiObjectResult RunRevosMulti(std::span<const ColorImage> images,
                                const InstanceFrame& first_frame,
                                const Propagator& propagator,
                                const ReverseConfig& config) {
  MultiObjectResult out;
  out.ids = first_frame.ObjectIds();
  if (out.ids.empty()) {
    throw Error(ErrorCode::kEmptyInput, "first frame has no annotated object");
  }
  for (ObjectId id : out.ids) {
    out.per_object.push_back(
        RunRevos(images, ExtractObject(first_frame, id), propagator, config));
  }
  std::vector<const SoftMask*> fwd(out.ids.size()), ref(out.ids.size());
  for (size_t t = 0; t < images.size(); ++t) {
    for (size_t k = 0; k < out.ids.size(); ++k) {
      fwd[k] = &out.per_object[k].forward_masks[t];
      ref[k] = &out.per_object[k].refined_masks[t];
    }
    out.forward_labels.push_back(MergeObjects(out.ids, fwd));
    out.refined_labels.push_back(MergeObjects(out.ids, ref));
  }
  return out;
}

}  // namespace revos
