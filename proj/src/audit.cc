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

#include "revos/audit.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "revos/error.h"
#include "revos/metrics.h"
#include "revos/random.h"

namespace revos {
namespace {

std::string Normalize(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Rows of a small comma-separated sheet with a mandatory header. Quoting is
// not supported; review sheets do not need it.
std::vector<std::vector<std::string>> ReadRows(std::string_view text,
                                               size_t columns) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(Trim(cell));
    if (!header_seen) {
      header_seen = true;
      if (cells.empty() || Normalize(cells[0]) != "clip") {
        throw Error(ErrorCode::kParse, "review sheet must start with a header row "
                                       "beginning with 'clip'");
      }
      continue;
    }
    if (cells.size() != columns) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": expected " + std::to_string(columns) +
                                         " columns");
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

double ClipMetric(const MaskSequence& x, const MaskSequence& y, AuditMetric m) {
  EvalOptions opts;
  opts.void_policy = VoidPolicy::kUnion;
  const EvalReport r = EvaluateSequence(x, y, opts);
  return m == AuditMetric::kJMean ? r.j_mean : r.j_cc;
}

}  // namespace

std::string_view AuditMetricName(AuditMetric m) {
  return m == AuditMetric::kJMean ? "j_mean" : "j_cc";
}

AuditMetric ParseAuditMetric(std::string_view name) {
  const std::string key = Normalize(name);
  if (key == "jmean" || key == "j") return AuditMetric::kJMean;
  if (key == "jcc") return AuditMetric::kJCc;
  if (key == "jst") {
    throw Error(ErrorCode::kInvalidArgument,
                "j_st has no published definition and is not available");
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown audit metric '" +
                                               std::string(name) + "'");
}

AgreementMatrix AgreementMatrixFor(const AuditTriplet& triplet,
                                   AuditMetric metric) {
  const std::array<const std::vector<MaskSequence>*, 3> sets = {
      &triplet.a, &triplet.b, &triplet.o};
  const size_t clips = triplet.a.size();
  if (clips == 0) throw Error(ErrorCode::kEmptyInput, "audit triplet has no clips");
  if (triplet.b.size() != clips || triplet.o.size() != clips) {
    throw Error(ErrorCode::kMisaligned, "mask sets hold different clip counts");
  }
  for (size_t c = 0; c < clips; ++c) {
    const MaskSequence& ref = triplet.a[c];
    for (const auto* set : sets) {
      const MaskSequence& s = (*set)[c];
      if (s.length() != ref.length() || s.width() != ref.width() ||
          s.height() != ref.height() || s.object_ids() != ref.object_ids()) {
        throw Error(ErrorCode::kMisaligned,
                    "clip " + std::to_string(c) + " differs across mask sets");
      }
    }
  }
  AgreementMatrix m{};
  for (int i = 0; i < 3; ++i) {
    m[i][i] = 1.0;
    for (int j = i + 1; j < 3; ++j) {
      double sum = 0.0;
      for (size_t c = 0; c < clips; ++c) {
        sum += ClipMetric((*sets[i])[c], (*sets[j])[c], metric);
      }
      m[i][j] = m[j][i] = sum / static_cast<double>(clips);
    }
  }
  return m;
}

BiasVerdict BiasCheck(const AgreementMatrix& matrix, double epsilon) {
  BiasVerdict v;
  v.epsilon = epsilon;
  v.lhs = matrix[kSetB][kSetO] - matrix[kSetA][kSetO];
  v.rhs = 1.0 - matrix[kSetB][kSetO];
  v.pass = v.lhs <= epsilon * v.rhs;
  return v;
}

std::string_view CriterionName(Criterion c) {
  switch (c) {
    case Criterion::kTrackingAccuracy: return "tracking_accuracy";
    case Criterion::kCompleteness: return "completeness";
    case Criterion::kBoundaryStability: return "boundary_stability";
  }
  return "?";
}

Criterion ParseCriterion(std::string_view name) {
  const std::string key = Normalize(name);
  if (key == "trackingaccuracy" || key == "tracking" || key == "trackaccuracy") {
    return Criterion::kTrackingAccuracy;
  }
  if (key == "completeness" || key == "maskcompleteness" ||
      key == "maskannotationcompleteness") {
    return Criterion::kCompleteness;
  }
  if (key == "boundarystability" || key == "maskboundarystability" ||
      key == "boundary") {
    return Criterion::kBoundaryStability;
  }
  throw Error(ErrorCode::kParse, "unknown criterion '" + std::string(name) + "'");
}

MosVerdict MosGate(const MosRecord& record) {
  MosVerdict v;
  v.qualified = true;
  for (size_t k = 0; k < kAllCriteria.size(); ++k) {
    const Criterion c = kAllCriteria[k];
    auto it = record.scores.find(c);
    if (it == record.scores.end() || it->second.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no scores for " + std::string(CriterionName(c)));
    }
    double sum = 0.0;
    for (int s : it->second) {
      if (s < 0 || s > 3) {
        throw Error(ErrorCode::kInvalidArgument,
                    "score " + std::to_string(s) + " outside 0..3");
      }
      sum += s;
    }
    v.reviewers[k] = it->second.size();
    v.means[k] = sum / static_cast<double>(it->second.size());
    if (v.means[k] < 2.0) v.qualified = false;
  }
  return v;
}

std::string_view PreferenceName(Preference p) {
  switch (p) {
    case Preference::kPreferA: return "A";
    case Preference::kPreferB: return "B";
    case Preference::kEqual: return "Equal";
  }
  return "?";
}

Preference ParsePreference(std::string_view name) {
  const std::string key = Normalize(name);
  if (key == "a" || key == "prefera" || key == "maska") return Preference::kPreferA;
  if (key == "b" || key == "preferb" || key == "maskb") return Preference::kPreferB;
  if (key == "equal" || key == "tie" || key == "same") return Preference::kEqual;
  throw Error(ErrorCode::kParse, "unknown choice '" + std::string(name) + "'");
}

std::array<int64_t, 3> DmosTally::Totals() const {
  std::array<int64_t, 3> t{};
  for (size_t c = 0; c < 3; ++c) {
    t[c] = counts[c][0] + counts[c][1] + counts[c][2];
  }
  return t;
}

std::array<std::array<double, 3>, 3> DmosTally::Fractions() const {
  std::array<std::array<double, 3>, 3> f{};
  const auto totals = Totals();
  for (size_t c = 0; c < 3; ++c) {
    if (totals[c] == 0) continue;
    for (size_t p = 0; p < 3; ++p) {
      f[c][p] = static_cast<double>(counts[c][p]) / static_cast<double>(totals[c]);
    }
  }
  return f;
}

DmosTally TallyReviews(std::span<const Review> reviews) {
  DmosTally t;
  for (const Review& r : reviews) {
    ++t.counts[static_cast<size_t>(r.criterion)][static_cast<size_t>(r.choice)];
  }
  return t;
}

std::vector<std::string> SampleForAudit(std::span<const std::string> clips,
                                        double ratio, uint64_t seed) {
  if (clips.empty()) throw Error(ErrorCode::kEmptyInput, "no clips to sample");
  if (!(ratio > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling ratio must be positive");
  }
  const size_t n = clips.size();
  const size_t k = std::min<size_t>(
      n, static_cast<size_t>(std::llround(static_cast<double>(n) / ratio)));
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng = MakeRng(seed, 0x617564697475ull);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(UniformIndex(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> out;
  out.reserve(k);
  for (size_t i : idx) out.push_back(clips[i]);
  return out;
}

std::map<std::string, MosRecord> ParseMosCsv(std::string_view text) {
  std::map<std::string, MosRecord> out;
  for (const auto& row : ReadRows(text, 4)) {
    int score = 0;
    try {
      size_t used = 0;
      score = std::stoi(row[3], &used);
      if (used != row[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad score '" + row[3] + "'");
    }
    out[row[0]].scores[ParseCriterion(row[2])].push_back(score);
  }
  return out;
}

std::vector<Review> ParseDmosCsv(std::string_view text) {
  std::vector<Review> out;
  for (const auto& row : ReadRows(text, 4)) {
    out.push_back({ParseCriterion(row[2]), ParsePreference(row[3])});
  }
  return out;
}

}  // namespace revos
