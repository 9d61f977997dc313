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

#ifndef REVOS_METRICS_H_
#define REVOS_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revos/mask.h"
#include "revos/phase.h"

namespace revos {

// Intersection over union with `ignore` pixels removed from both sets.
// Both sets empty outside `ignore` scores 1. Throws
// Error(kDimensionMismatch) when shapes differ.
double Jaccard(const BinaryMask& pred, const BinaryMask& gt,
               const BinaryMask& ignore);
double Jaccard(const BinaryMask& pred, const BinaryMask& gt);

// Number of trailing entries the tail score averages: ceil(n / 4).
size_t TailLength(size_t n);
// Mean of the last ceil(n / 4) per-frame scores. Throws Error(kEmptyInput).
double TailJaccard(std::span<const double> series);

// Maximal 8-connected components, ordered by their first pixel in raster
// order. Components smaller than `min_size` pixels are dropped.
std::vector<BinaryMask> ConnectedComponents(const BinaryMask& mask,
                                            size_t min_size = 0);

// Component label map: 0 for unset pixels, 1..count otherwise, numbered in
// raster order of first appearance.
struct ComponentLabels {
  std::vector<int32_t> labels;
  std::vector<int64_t> sizes;  // sizes[k] is the pixel count of label k + 1
  int count = 0;
};
ComponentLabels LabelComponents(const BinaryMask& mask);

struct ComponentMatch {
  double score = 1.0;
  int gt_components = 0;
  int pred_components = 0;
  std::vector<std::pair<int, int>> pairs;  // (gt index, pred index)
  std::vector<double> pair_jaccard;
  std::vector<double> weights;  // gt_components x pred_components, row-major
};

// Component-matched Jaccard. Ignored pixels are removed from both masks
// before labeling; the matching maximizes the summed pairwise Jaccard, and
// the score divides that sum by n_gt + n_pred - |matching| so every
// unmatched component counts as 0. Both sides empty scores 1.
ComponentMatch MatchComponents(const BinaryMask& pred, const BinaryMask& gt,
                               const BinaryMask& ignore, size_t min_size = 0);
double ComponentJaccard(const BinaryMask& pred, const BinaryMask& gt,
                        const BinaryMask& ignore, size_t min_size = 0);

enum class VoidPolicy {
  kGroundTruth,  // ignore the reference sequence's void pixels
  kUnion,        // ignore void pixels of either sequence (symmetric)
};

struct EvalOptions {
  size_t min_component_size = 0;
  VoidPolicy void_policy = VoidPolicy::kGroundTruth;
};

struct ObjectScores {
  ObjectId id = 0;
  std::vector<double> j;     // per frame
  std::vector<double> j_cc;  // per frame
  double j_mean = 0.0;
  double j_tr = 0.0;
  double j_cc_mean = 0.0;
};

struct EvalReport {
  std::string name;
  std::vector<ObjectScores> objects;
  // Unweighted means over objects of the per-object values.
  double j_mean = 0.0;
  double j_tr = 0.0;
  double j_cc = 0.0;
  std::optional<PhaseAnnotation> annotation;
};

// Scores `pred` against `gt` object by object and frame by frame. The two
// sequences must agree in length, frame size and object ids; otherwise
// Error(kMisaligned) or Error(kDimensionMismatch).
EvalReport EvaluateSequence(const MaskSequence& pred, const MaskSequence& gt,
                            const EvalOptions& options = {});

struct CategoryAggregate {
  TransitionCategory category;
  size_t count = 0;
  double j_mean = 0.0;
  double j_tr = 0.0;
  double j_cc = 0.0;
};

// Means per transition category, in IS, IL, IG, CP order; categories with
// no reports are omitted.
std::vector<CategoryAggregate> AggregateByCategory(
    std::span<const std::pair<EvalReport, PhaseAnnotation>> reports);

// ---- Challenge analysis ----

// |mask| / (width * height).
double SizeRatio(const BinaryMask& mask);

struct Point {
  double x = 0.0;
  double y = 0.0;
};
// Centre of the tight bounding box; nullopt for an empty mask.
std::optional<Point> BoxCentroid(const BinaryMask& mask);

struct ChallengeRecord {
  double r = 0.0;     // size ratio
  double v = 0.0;     // displacement * fps / area
  double d = 0.0;     // centroid displacement, pixels per frame
  int64_t m_o = 0;    // mask area
  int64_t a_i = 0;    // image area
  Point c_t;          // bounding-box centroid
};

// Normalized velocity D * fps / |cur|, with D the distance between the
// bounding-box centroids. An empty `prev` gives 0; an empty `cur` throws
// Error(kEmptyInput).
double Velocity(const BinaryMask& prev, const BinaryMask& cur, double fps);
ChallengeRecord MakeChallengeRecord(const BinaryMask* prev,
                                    const BinaryMask& cur, double fps);

struct ChallengeSample {
  ChallengeRecord record;
  double j = 0.0;
  bool has_velocity = false;  // false on a track's first frame
};

struct Bin {
  double lo = 0.0;
  double hi = 0.0;
  size_t count = 0;
  std::optional<double> mean_j;  // absent for an empty bin
};

// Bins are [e_i, e_{i+1}) except the last, which is closed. Values outside
// the edges are dropped. Throws Error(kInvalidArgument) unless there are at
// least two strictly increasing edges.
std::vector<Bin> BinnedMeans(std::span<const double> values,
                             std::span<const double> js,
                             std::span<const double> edges);

struct ChallengeCurves {
  std::vector<Bin> by_size;
  std::vector<Bin> by_velocity;
};
ChallengeCurves ComputeChallengeCurves(std::span<const ChallengeSample> samples,
                                       std::span<const double> size_edges,
                                       std::span<const double> velocity_edges);

// Per-frame samples for every object of `gt` present in the frame.
std::vector<ChallengeSample> CollectChallengeSamples(const MaskSequence& pred,
                                                     const MaskSequence& gt);

}  // namespace revos

#endif  // REVOS_METRICS_H_
