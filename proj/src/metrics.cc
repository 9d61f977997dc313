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

#include "revos/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "revos/assignment.h"
#include "revos/error.h"
#include "revos/kernels.h"

namespace revos {
namespace {

void RequireSameShape(const BinaryMask& a, const BinaryMask& b,
                      const char* what) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

class DisjointSet {
 public:
  int Add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<int> parent_;
};

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Drops components below `min_size` and renumbers the survivors in order.
void FilterSmall(ComponentLabels& cl, size_t min_size) {
  if (min_size == 0) return;
  std::vector<int32_t> remap(cl.count + 1, 0);
  std::vector<int64_t> sizes;
  for (int k = 0; k < cl.count; ++k) {
    if (cl.sizes[k] >= static_cast<int64_t>(min_size)) {
      sizes.push_back(cl.sizes[k]);
      remap[k + 1] = static_cast<int32_t>(sizes.size());
    }
  }
  for (auto& l : cl.labels) l = remap[l];
  cl.sizes = std::move(sizes);
  cl.count = static_cast<int>(cl.sizes.size());
}

}  // namespace

double Jaccard(const BinaryMask& pred, const BinaryMask& gt,
               const BinaryMask& ignore) {
  RequireSameShape(pred, gt, "jaccard");
  RequireSameShape(pred, ignore, "jaccard void");
  const kernels::OverlapCounts c =
      kernels::CountOverlap(pred.bits(), gt.bits(), ignore.bits());
  if (c.union_count == 0) return 1.0;
  return static_cast<double>(c.intersection) / static_cast<double>(c.union_count);
}

double Jaccard(const BinaryMask& pred, const BinaryMask& gt) {
  return Jaccard(pred, gt, BinaryMask(pred.width(), pred.height()));
}

size_t TailLength(size_t n) { return (n + 3) / 4; }

double TailJaccard(std::span<const double> series) {
  if (series.empty()) {
    throw Error(ErrorCode::kEmptyInput, "tail score of an empty series");
  }
  const size_t k = TailLength(series.size());
  return Mean(series.subspan(series.size() - k));
}

ComponentLabels LabelComponents(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int32_t> provisional(mask.size(), -1);
  DisjointSet sets;
  auto bits = mask.bits();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const size_t i = static_cast<size_t>(y) * w + x;
      if (!bits[i]) continue;
      int label = -1;
      // Already-visited 8-neighbours: W, NW, N, NE.
      const int nbrs[4][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
      for (const auto& d : nbrs) {
        const int nx = x + d[0];
        const int ny = y + d[1];
        if (nx < 0 || ny < 0 || nx >= w) continue;
        const int32_t l = provisional[static_cast<size_t>(ny) * w + nx];
        if (l < 0) continue;
        if (label < 0) {
          label = l;
        } else {
          sets.Union(label, l);
        }
      }
      provisional[i] = label >= 0 ? label : sets.Add();
    }
  }
  ComponentLabels out;
  out.labels.assign(mask.size(), 0);
  std::vector<int32_t> final_id;
  for (size_t i = 0; i < provisional.size(); ++i) {
    if (provisional[i] < 0) continue;
    const int root = sets.Find(provisional[i]);
    if (static_cast<size_t>(root) >= final_id.size()) {
      final_id.resize(root + 1, 0);
    }
    if (final_id[root] == 0) {
      final_id[root] = ++out.count;
      out.sizes.push_back(0);
    }
    out.labels[i] = final_id[root];
    ++out.sizes[final_id[root] - 1];
  }
  return out;
}

std::vector<BinaryMask> ConnectedComponents(const BinaryMask& mask,
                                            size_t min_size) {
  ComponentLabels cl = LabelComponents(mask);
  FilterSmall(cl, min_size);
  std::vector<BinaryMask> out(cl.count, BinaryMask(mask.width(), mask.height()));
  for (size_t i = 0; i < cl.labels.size(); ++i) {
    if (cl.labels[i] > 0) out[cl.labels[i] - 1].mutable_bits()[i] = 1;
  }
  return out;
}

ComponentMatch MatchComponents(const BinaryMask& pred, const BinaryMask& gt,
                               const BinaryMask& ignore, size_t min_size) {
  RequireSameShape(pred, gt, "component jaccard");
  RequireSameShape(pred, ignore, "component jaccard void");
  const BinaryMask keep = ~ignore;
  ComponentLabels g = LabelComponents(gt & keep);
  ComponentLabels p = LabelComponents(pred & keep);
  FilterSmall(g, min_size);
  FilterSmall(p, min_size);

  ComponentMatch out;
  out.gt_components = g.count;
  out.pred_components = p.count;
  if (g.count == 0 && p.count == 0) return out;

  std::vector<int64_t> inter(static_cast<size_t>(g.count) * p.count, 0);
  for (size_t i = 0; i < g.labels.size(); ++i) {
    if (g.labels[i] > 0 && p.labels[i] > 0) {
      ++inter[static_cast<size_t>(g.labels[i] - 1) * p.count + (p.labels[i] - 1)];
    }
  }
  out.weights.assign(inter.size(), 0.0);
  for (int a = 0; a < g.count; ++a) {
    for (int b = 0; b < p.count; ++b) {
      const size_t k = static_cast<size_t>(a) * p.count + b;
      const int64_t uni = g.sizes[a] + p.sizes[b] - inter[k];
      out.weights[k] = static_cast<double>(inter[k]) / static_cast<double>(uni);
    }
  }
  const Matching m = MaxWeightMatching(out.weights, g.count, p.count);
  double sum = 0.0;
  for (const auto& [a, b] : m.pairs) {
    const double j = out.weights[static_cast<size_t>(a) * p.count + b];
    out.pairs.emplace_back(a, b);
    out.pair_jaccard.push_back(j);
    sum += j;
  }
  const int denom = g.count + p.count - static_cast<int>(m.pairs.size());
  out.score = sum / static_cast<double>(denom);
  return out;
}

double ComponentJaccard(const BinaryMask& pred, const BinaryMask& gt,
                        const BinaryMask& ignore, size_t min_size) {
  return MatchComponents(pred, gt, ignore, min_size).score;
}

EvalReport EvaluateSequence(const MaskSequence& pred, const MaskSequence& gt,
                            const EvalOptions& options) {
  if (pred.length() != gt.length()) {
    throw Error(ErrorCode::kMisaligned,
                "prediction has " + std::to_string(pred.length()) +
                    " frames, ground truth " + std::to_string(gt.length()));
  }
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prediction frames are " + std::to_string(pred.width()) + "x" +
                    std::to_string(pred.height()) + ", ground truth " +
                    std::to_string(gt.width()) + "x" +
                    std::to_string(gt.height()));
  }
  const std::vector<ObjectId> ids = gt.object_ids();
  if (pred.object_ids() != ids) {
    throw Error(ErrorCode::kMisaligned, "object ids differ between sequences");
  }

  EvalReport report;
  report.annotation = gt.annotation();
  for (ObjectId id : ids) {
    ObjectScores s;
    s.id = id;
    for (size_t t = 0; t < gt.length(); ++t) {
      const InstanceFrame& pf = pred.frame(t);
      const InstanceFrame& gf = gt.frame(t);
      BinaryMask ignore = VoidMask(gf);
      if (options.void_policy == VoidPolicy::kUnion) ignore = ignore | VoidMask(pf);
      const BinaryMask pm = ExtractObject(pf, id);
      const BinaryMask gm = ExtractObject(gf, id);
      s.j.push_back(Jaccard(pm, gm, ignore));
      s.j_cc.push_back(ComponentJaccard(pm, gm, ignore, options.min_component_size));
    }
    s.j_mean = Mean(s.j);
    s.j_tr = TailJaccard(s.j);
    s.j_cc_mean = Mean(s.j_cc);
    report.objects.push_back(std::move(s));
  }
  if (report.objects.empty()) {
    // Nothing to segment: an empty prediction of an empty target is correct.
    report.j_mean = report.j_tr = report.j_cc = 1.0;
    return report;
  }
  std::vector<double> jm, jt, jc;
  for (const auto& o : report.objects) {
    jm.push_back(o.j_mean);
    jt.push_back(o.j_tr);
    jc.push_back(o.j_cc_mean);
  }
  report.j_mean = Mean(jm);
  report.j_tr = Mean(jt);
  report.j_cc = Mean(jc);
  return report;
}

std::vector<CategoryAggregate> AggregateByCategory(
    std::span<const std::pair<EvalReport, PhaseAnnotation>> reports) {
  std::vector<CategoryAggregate> out;
  for (TransitionCategory c : kAllCategories) {
    std::vector<double> jm, jt, jc;
    for (const auto& [report, annotation] : reports) {
      if (annotation.category != c) continue;
      jm.push_back(report.j_mean);
      jt.push_back(report.j_tr);
      jc.push_back(report.j_cc);
    }
    if (jm.empty()) continue;
    out.push_back({c, jm.size(), Mean(jm), Mean(jt), Mean(jc)});
  }
  return out;
}

double SizeRatio(const BinaryMask& mask) {
  return static_cast<double>(mask.Count()) / static_cast<double>(mask.size());
}

std::optional<Point> BoxCentroid(const BinaryMask& mask) {
  int xmin = mask.width(), xmax = -1, ymin = mask.height(), ymax = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.Get(x, y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax < 0) return std::nullopt;
  return Point{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
}

ChallengeRecord MakeChallengeRecord(const BinaryMask* prev,
                                    const BinaryMask& cur, double fps) {
  if (prev != nullptr) RequireSameShape(*prev, cur, "velocity");
  const std::optional<Point> c = BoxCentroid(cur);
  if (!c) {
    throw Error(ErrorCode::kEmptyInput, "velocity of an empty mask is undefined");
  }
  ChallengeRecord rec;
  rec.m_o = static_cast<int64_t>(cur.Count());
  rec.a_i = static_cast<int64_t>(cur.size());
  rec.r = static_cast<double>(rec.m_o) / static_cast<double>(rec.a_i);
  rec.c_t = *c;
  const std::optional<Point> p = prev ? BoxCentroid(*prev) : std::nullopt;
  if (p) {
    rec.d = std::hypot(c->x - p->x, c->y - p->y);
    // Distance over area, exactly as the definition is written.
    rec.v = rec.d * fps / static_cast<double>(rec.m_o);
  }
  return rec;
}

double Velocity(const BinaryMask& prev, const BinaryMask& cur, double fps) {
  return MakeChallengeRecord(&prev, cur, fps).v;
}

std::vector<Bin> BinnedMeans(std::span<const double> values,
                             std::span<const double> js,
                             std::span<const double> edges) {
  if (edges.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two bin edges");
  }
  for (size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bin edges must be strictly increasing");
    }
  }
  if (values.size() != js.size()) {
    throw Error(ErrorCode::kInvalidArgument, "values and scores differ in length");
  }
  const size_t nbins = edges.size() - 1;
  std::vector<double> sums(nbins, 0.0);
  std::vector<Bin> bins(nbins);
  for (size_t b = 0; b < nbins; ++b) {
    bins[b].lo = edges[b];
    bins[b].hi = edges[b + 1];
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const double x = values[i];
    if (x < edges.front() || x > edges.back()) continue;
    size_t b = static_cast<size_t>(
        std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
    b = std::min(b - 1, nbins - 1);
    sums[b] += js[i];
    ++bins[b].count;
  }
  for (size_t b = 0; b < nbins; ++b) {
    if (bins[b].count > 0) bins[b].mean_j = sums[b] / static_cast<double>(bins[b].count);
  }
  return bins;
}

ChallengeCurves ComputeChallengeCurves(std::span<const ChallengeSample> samples,
                                       std::span<const double> size_edges,
                                       std::span<const double> velocity_edges) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no challenge samples");
  }
  std::vector<double> r, rj, v, vj;
  for (const auto& s : samples) {
    r.push_back(s.record.r);
    rj.push_back(s.j);
    if (s.has_velocity) {
      v.push_back(s.record.v);
      vj.push_back(s.j);
    }
  }
  return {BinnedMeans(r, rj, size_edges), BinnedMeans(v, vj, velocity_edges)};
}

std::vector<ChallengeSample> CollectChallengeSamples(const MaskSequence& pred,
                                                     const MaskSequence& gt) {
  if (pred.length() != gt.length() || pred.width() != gt.width() ||
      pred.height() != gt.height()) {
    throw Error(ErrorCode::kMisaligned, "prediction and ground truth differ in shape");
  }
  std::vector<ChallengeSample> out;
  for (ObjectId id : gt.object_ids()) {
    std::optional<BinaryMask> prev;
    for (size_t t = 0; t < gt.length(); ++t) {
      BinaryMask cur = ExtractObject(gt.frame(t), id);
      if (!cur.Empty()) {
        ChallengeSample s;
        s.record = MakeChallengeRecord(prev ? &*prev : nullptr, cur, gt.fps());
        s.has_velocity = t > 0;
        s.j = Jaccard(ExtractObject(pred.frame(t), id), cur, VoidMask(gt.frame(t)));
        out.push_back(s);
      }
      prev = std::move(cur);
    }
  }
  return out;
}

}  // namespace revos
