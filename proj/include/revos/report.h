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

#ifndef REVOS_REPORT_H_
#define REVOS_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "revos/audit.h"
#include "revos/disorder.h"
#include "revos/metrics.h"

namespace revos {

using Json = nlohmann::ordered_json;

// %.17g, enough to round-trip any double.
std::string FormatDouble(double v);

// Minimal CSV builder. Fields containing commas, quotes or newlines are
// quoted.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& Row(std::vector<std::string> fields);
  std::string str() const { return text_; }

 private:
  void Append(const std::vector<std::string>& fields);
  size_t columns_;
  std::string text_;
};

Json ToJson(const PhaseAnnotation& a);
Json ToJson(const EvalReport& report);
Json ToJson(std::span<const CategoryAggregate> aggregates);
Json ToJson(std::span<const Bin> bins);
Json ToJson(const AgreementMatrix& m);
Json ToJson(const BiasVerdict& v);

// One row per object x frame, then one aggregate row per object and one
// for the sequence (frame column "all", aggregate column 1).
void AppendEvalRows(const EvalReport& report, Csv& csv);
std::vector<std::string> EvalCsvHeader();

std::string BinsCsv(std::span<const Bin> bins, const std::string& axis);

// FNV-1a over a file's bytes, as 16 hex digits.
std::string FileDigest(const std::filesystem::path& path);

void WriteText(const std::filesystem::path& path, const std::string& text);
void WriteJson(const std::filesystem::path& path, const Json& j);

}  // namespace revos

#endif  // REVOS_REPORT_H_
