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

#ifndef REVOS_AUDIT_H_
#define REVOS_AUDIT_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revos/mask.h"

namespace revos {

// Annotation-quality bookkeeping: agreement between three mask sets over
// the same clips, the negligible-bias check, reviewer score gating and
// blind-preference tallies.

enum class AuditMetric { kJMean, kJCc };
std::string_view AuditMetricName(AuditMetric m);  // "j_mean", "j_cc"
// Throws Error(kInvalidArgument) for anything but j_mean / j_cc; "j_st" is
// rejected explicitly because it has no definition to implement.
AuditMetric ParseAuditMetric(std::string_view name);

// Roles are labels only: A and B come from the two assisted tools, O is the
// released set.
struct AuditTriplet {
  std::vector<MaskSequence> a;
  std::vector<MaskSequence> b;
  std::vector<MaskSequence> o;
};

enum AuditSet : int { kSetA = 0, kSetB = 1, kSetO = 2 };
using AgreementMatrix = std::array<std::array<double, 3>, 3>;

// Pairwise mean metric over clips, with void pixels of either side ignored.
// Symmetric with a unit diagonal. Throws Error(kMisaligned) when the three
// sets disagree in clip count, frame count, size or object ids.
AgreementMatrix AgreementMatrixFor(const AuditTriplet& triplet,
                                   AuditMetric metric);

struct BiasVerdict {
  double lhs = 0.0;  // J(B,O) - J(A,O)
  double rhs = 0.0;  // 1 - J(B,O)
  double epsilon = 0.5;
  bool pass = false; // lhs <= epsilon * rhs
};
BiasVerdict BiasCheck(const AgreementMatrix& matrix, double epsilon = 0.5);

enum class Criterion { kTrackingAccuracy, kCompleteness, kBoundaryStability };
inline constexpr std::array<Criterion, 3> kAllCriteria = {
    Criterion::kTrackingAccuracy, Criterion::kCompleteness,
    Criterion::kBoundaryStability};
std::string_view CriterionName(Criterion c);
Criterion ParseCriterion(std::string_view name);  // throws Error(kParse)

// Reviewer scores (0..3) per criterion for one mask.
struct MosRecord {
  std::map<Criterion, std::vector<int>> scores;
};

struct MosVerdict {
  bool qualified = false;
  std::array<double, 3> means{};  // indexed like kAllCriteria
  std::array<size_t, 3> reviewers{};
};

// Averages every reviewer present per criterion; unqualified iff some mean
// falls below 2. Throws Error(kInvalidArgument) for a missing criterion or
// a score outside 0..3.
MosVerdict MosGate(const MosRecord& record);

enum class Preference { kPreferA, kPreferB, kEqual };
std::string_view PreferenceName(Preference p);
Preference ParsePreference(std::string_view name);  // throws Error(kParse)

struct Review {
  Criterion criterion;
  Preference choice;
};

struct DmosTally {
  // counts[criterion][preference]
  std::array<std::array<int64_t, 3>, 3> counts{};
  std::array<int64_t, 3> Totals() const;
  // Fractions per criterion; zeros for a criterion without reviews.
  std::array<std::array<double, 3>, 3> Fractions() const;
};
DmosTally TallyReviews(std::span<const Review> reviews);

// Seeded sample of round(n / ratio) distinct clips, returned in their
// original order. Throws Error(kEmptyInput) for no clips and
// Error(kInvalidArgument) for ratio <= 0.
std::vector<std::string> SampleForAudit(std::span<const std::string> clips,
                                        double ratio, uint64_t seed);

// CSV readers for review sheets with a header row:
//   MOS:  clip,reviewer,criterion,score
//   DMOS: clip,reviewer,criterion,choice
std::map<std::string, MosRecord> ParseMosCsv(std::string_view text);
std::vector<Review> ParseDmosCsv(std::string_view text);

}  // namespace revos

#endif  // REVOS_AUDIT_H_
