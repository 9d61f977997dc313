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

#include "revos/report.h"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "revos/error.h"
#include "revos/random.h"

namespace revos {

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) {
  Append(header);
}

Csv& Csv::Row(std::vector<std::string> fields) {
  if (fields.size() != columns_) {
    throw Error(ErrorCode::kInternal, "csv row width mismatch");
  }
  Append(fields);
  return *this;
}

void Csv::Append(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      text_ += f;
      continue;
    }
    text_ += '"';
    for (char c : f) {
      if (c == '"') text_ += '"';
      text_ += c;
    }
    text_ += '"';
  }
  text_ += '\n';
}

Json ToJson(const PhaseAnnotation& a) {
  return Json{{"initial", PhaseName(a.initial)},
              {"final", PhaseName(a.final_phase)},
              {"transition", TransitionName(a.transition)},
              {"category", CategoryName(a.category)}};
}

Json ToJson(const EvalReport& report) {
  Json j;
  j["name"] = report.name;
  j["j_mean"] = report.j_mean;
  j["j_tr"] = report.j_tr;
  j["j_cc"] = report.j_cc;
  j["phase"] = report.annotation ? ToJson(*report.annotation) : Json(nullptr);
  Json objects = Json::array();
  for (const ObjectScores& o : report.objects) {
    objects.push_back({{"id", o.id},
                       {"j_mean", o.j_mean},
                       {"j_tr", o.j_tr},
                       {"j_cc", o.j_cc_mean},
                       {"j", o.j},
                       {"j_cc_per_frame", o.j_cc}});
  }
  j["objects"] = std::move(objects);
  return j;
}

Json ToJson(std::span<const CategoryAggregate> aggregates) {
  Json out = Json::object();
  for (const CategoryAggregate& a : aggregates) {
    out[std::string(CategoryName(a.category))] = {{"sequences", a.count},
                                                  {"j_mean", a.j_mean},
                                                  {"j_tr", a.j_tr},
                                                  {"j_cc", a.j_cc}};
  }
  return out;
}

Json ToJson(std::span<const Bin> bins) {
  Json out = Json::array();
  for (const Bin& b : bins) {
    out.push_back({{"lo", b.lo},
                   {"hi", b.hi},
                   {"count", b.count},
                   {"mean_j", b.mean_j ? Json(*b.mean_j) : Json(nullptr)}});
  }
  return out;
}

Json ToJson(const AgreementMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(Json(row));
  return out;
}

Json ToJson(const BiasVerdict& v) {
  return Json{{"lhs", v.lhs},
              {"rhs", v.rhs},
              {"epsilon", v.epsilon},
              {"verdict", v.pass ? "PASS" : "FAIL"}};
}

std::vector<std::string> EvalCsvHeader() {
  return {"sequence", "object", "frame", "j", "j_cc", "aggregate", "j_mean", "j_tr"};
}

void AppendEvalRows(const EvalReport& report, Csv& csv) {
  for (const ObjectScores& o : report.objects) {
    for (size_t t = 0; t < o.j.size(); ++t) {
      csv.Row({report.name, std::to_string(o.id), std::to_string(t),
               FormatDouble(o.j[t]), FormatDouble(o.j_cc[t]), "0", "", ""});
    }
  }
  for (const ObjectScores& o : report.objects) {
    csv.Row({report.name, std::to_string(o.id), "all", FormatDouble(o.j_mean),
             FormatDouble(o.j_cc_mean), "1", FormatDouble(o.j_mean),
             FormatDouble(o.j_tr)});
  }
  csv.Row({report.name, "all", "all", FormatDouble(report.j_mean),
           FormatDouble(report.j_cc), "1", FormatDouble(report.j_mean),
           FormatDouble(report.j_tr)});
}

std::string BinsCsv(std::span<const Bin> bins, const std::string& axis) {
  Csv csv({"axis", "lo", "hi", "count", "mean_j"});
  for (const Bin& b : bins) {
    csv.Row({axis, FormatDouble(b.lo), FormatDouble(b.hi), std::to_string(b.count),
             b.mean_j ? FormatDouble(*b.mean_j) : ""});
  }
  return csv.str();
}

std::string FileDigest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>()};
  Fnv1a h;
  h.Update(bytes.data(), bytes.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h.digest()));
  return buf;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kUnreadable, "cannot write " + path.string());
  out << text;
}

void WriteJson(const std::filesystem::path& path, const Json& j) {
  WriteText(path, j.dump(2) + "\n");
}

}  // namespace revos
