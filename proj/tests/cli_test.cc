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

#include "cli.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "revos/io.h"
#include "revos/metrics.h"
#include "revos/report.h"
#include "support/temp_dir.h"

namespace revos::cli {
namespace {

namespace fs = std::filesystem;
using testing_support::Slurp;
using testing_support::TempDir;

int Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "revos");
  ::testing::internal::CaptureStdout();
  const int code = Run(std::move(args));
  ::testing::internal::GetCapturedStdout();
  return code;
}

// Runs the real binary; returns its exit status.
int Binary(const std::string& args) {
  const std::string cmd = std::string(REVOS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Json ReadJson(const fs::path& p) { return Json::parse(Slurp(p)); }

class CliTest : public ::testing::Test {
 protected:
  fs::path Synth(const std::string& preset, int seed, int length = 8) {
    const fs::path out = dir_ / (preset + std::to_string(seed));
    EXPECT_EQ(Cli({"synth", "--preset", preset, "--seed", std::to_string(seed),
                   "--length", std::to_string(length), "--width", "32", "--height",
                   "32", "--out", out.string()}),
              kExitOk);
    return out / "manifest.json";
  }
  TempDir dir_{"revos_cli"};
};

TEST_F(CliTest, EvalOfGroundTruthAgainstItself) {
  const fs::path gt = Synth("flow", 1);
  const fs::path out = dir_ / "eval";
  ASSERT_EQ(Cli({"eval", "--pred", gt.string(), "--gt", gt.string(), "--out",
                 out.string()}),
            kExitOk);
  const Json report = ReadJson(out / "report.json");
  EXPECT_EQ(report["overall"]["j_mean"], 1.0);
  EXPECT_EQ(report["overall"]["j_tr"], 1.0);
  EXPECT_EQ(report["overall"]["j_cc"], 1.0);
  EXPECT_TRUE(fs::exists(out / "report.csv"));
  EXPECT_TRUE(fs::exists(out / "categories.csv"));
  const Json record = ReadJson(out / "run_record.json");
  EXPECT_EQ(record["subcommand"], "eval");
  EXPECT_EQ(record["version"], kToolVersion);
  EXPECT_FALSE(record["inputs"].empty());
  EXPECT_TRUE(fs::exists(out / "timing.json"));
}

TEST_F(CliTest, EvalMatchesLibrary) {
  const fs::path gt = Synth("diffuse", 2);
  const fs::path pred = Synth("diffuse", 3);
  const fs::path out = dir_ / "eval";
  ASSERT_EQ(Cli({"eval", "--pred", pred.string(), "--gt", gt.string(), "--out",
                 out.string()}),
            kExitOk);
  const EvalReport lib = EvaluateSequence(LoadSequence(pred), LoadSequence(gt));
  const Json report = ReadJson(out / "report.json");
  EXPECT_EQ(report["overall"]["j_mean"].get<double>(), lib.j_mean);
  EXPECT_EQ(report["overall"]["j_cc"].get<double>(), lib.j_cc);
  EXPECT_LT(lib.j_mean, 1.0);
}

TEST_F(CliTest, MissingFrameIsDataError) {
  const fs::path gt = Synth("static", 4, 4);
  fs::remove(gt.parent_path() / "mask_0002.png");
  ::testing::internal::CaptureStderr();
  const int code = Cli({"eval", "--pred", gt.string(), "--gt", gt.string(), "--out",
                        (dir_ / "eval").string()});
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, kExitData);
  EXPECT_NE(err.find("mask_0002.png"), std::string::npos) << err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Binary("frobnicate"), kExitUsage);
  EXPECT_EQ(Binary("eval --gt x"), kExitUsage);
  EXPECT_EQ(Binary("refine m.json --alpha 0 --out " + (dir_ / "r").string()), kExitUsage);
  EXPECT_EQ(Binary("synth --preset melt --out " + (dir_ / "s").string()), kExitUsage);
  EXPECT_EQ(Binary("eval --pred a --gt b --format xml"), kExitUsage);
  EXPECT_EQ(Binary("--version"), kExitOk);
  EXPECT_EQ(Binary("eval --pred " + (dir_ / "none.json").string() + " --gt " +
                   (dir_ / "none.json").string() + " --out " + (dir_ / "e").string()),
            kExitData);
}

TEST_F(CliTest, DisorderOfStaticIsConstant) {
  const fs::path gt = Synth("static", 5, 6);
  const fs::path out = dir_ / "disorder";
  ASSERT_EQ(Cli({"disorder", gt.string(), "--out", out.string()}), kExitOk);
  const Json doc = ReadJson(out / "disorder.json");
  const Json& s = doc["summary"];
  EXPECT_EQ(s["first_half_mean"], s["latter_half_mean"]);
  EXPECT_EQ(s["per_frame_mean"], s["per_sequence_mean"]);
  std::ifstream csv(out / "disorder.csv");
  std::string line, first_value;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    const std::string value = line.substr(line.rfind(',') + 1);
    if (rows++ == 0) first_value = value;
    EXPECT_EQ(value, first_value);
  }
  EXPECT_EQ(rows, 6);
}

TEST_F(CliTest, RefineDegenerateKnobsAgree) {
  const fs::path gt = Synth("split", 6, 6);
  const fs::path a = dir_ / "w0", b = dir_ / "l0";
  ASSERT_EQ(Cli({"refine", gt.string(), a.string(), "--window", "0", "--noise", "1",
                 "--seed", "3"}),
            kExitOk);
  ASSERT_EQ(Cli({"refine", gt.string(), b.string(), "--interval", "0", "--noise", "1",
                 "--seed", "3"}),
            kExitOk);
  for (int t = 0; t < 6; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "mask_%04d.png", t);
    EXPECT_EQ(Slurp(a / "masks" / name), Slurp(b / "masks" / name));
    EXPECT_EQ(Slurp(a / "masks" / name), Slurp(a / "forward" / name));
  }
  const Json doc = ReadJson(a / "refine.json");
  EXPECT_EQ(doc["scores"]["forward"], doc["scores"]["refined"]);
  EXPECT_EQ(doc["config"]["alpha"], 3.0);
}

TEST_F(CliTest, AuditOfIdenticalSetsPasses) {
  const fs::path gt = Synth("flow", 7);
  const fs::path out = dir_ / "audit";
  ASSERT_EQ(Cli({"audit", "--a", gt.string(), "--b", gt.string(), "--o", gt.string(),
                 "--out", out.string()}),
            kExitOk);
  const Json doc = ReadJson(out / "audit.json");
  for (const char* m : {"j_mean", "j_cc"}) {
    EXPECT_EQ(doc["metrics"][m]["bias"]["verdict"], "PASS") << m;
    for (const auto& row : doc["metrics"][m]["matrix"]) {
      for (const auto& v : row) EXPECT_EQ(v, 1.0);
    }
  }
  EXPECT_EQ(doc["unavailable_metrics"][0], "j_st");
  EXPECT_EQ(Cli({"audit", "--a", gt.string(), "--out", out.string()}), kExitUsage);
  EXPECT_EQ(Cli({"audit", "--a", gt.string(), "--b", gt.string(), "--o", gt.string(),
                 "--metric", "j_st", "--out", out.string()}),
            kExitUsage);
}

TEST_F(CliTest, AuditReviewSheets) {
  const fs::path mos = dir_ / "mos.csv", dmos = dir_ / "dmos.csv";
  std::ofstream(mos) << "clip,reviewer,criterion,score\n"
                        "c1,r1,tracking_accuracy,3\nc1,r1,completeness,2\n"
                        "c1,r1,boundary_stability,2\nc2,r1,tracking_accuracy,3\n"
                        "c2,r1,completeness,3\nc2,r1,boundary_stability,2\n"
                        "c2,r2,boundary_stability,1\n";
  std::ofstream(dmos) << "clip,reviewer,criterion,choice\nc1,r1,completeness,A\n"
                         "c1,r2,completeness,Equal\n";
  const fs::path out = dir_ / "review";
  ASSERT_EQ(Cli({"audit", "--mos", mos.string(), "--dmos", dmos.string(), "--out",
                 out.string()}),
            kExitOk);
  const Json doc = ReadJson(out / "audit.json");
  EXPECT_EQ(doc["mos"]["c1"]["verdict"], "qualified");
  EXPECT_EQ(doc["mos"]["c2"]["verdict"], "unqualified");
  EXPECT_EQ(doc["dmos"]["completeness"]["counts"]["A"], 1);
  EXPECT_EQ(doc["dmos"]["completeness"]["fractions"]["Equal"], 0.5);
}

TEST_F(CliTest, ConfigFileFillsMissingFlags) {
  const fs::path gt = Synth("static", 8, 4);
  const fs::path cfg = dir_ / "cfg.json";
  std::ofstream(cfg) << R"({"format": "csv", "refine": {"window": 0, "alpha": 1.5},
                            "window": 7})";
  const fs::path out = dir_ / "refined";
  ASSERT_EQ(Cli({"refine", gt.string(), "--config", cfg.string(), "--out", out.string(),
                 "--alpha", "2.5"}),
            kExitOk);
  const Json doc = ReadJson(out / "refine.json");
  EXPECT_EQ(doc["config"]["window"], 0);   // subcommand section wins
  EXPECT_EQ(doc["config"]["alpha"], 2.5);  // command line wins
  const Json record = ReadJson(out / "run_record.json");
  EXPECT_EQ(record["config"]["format"], "csv");

  const auto merged = MergeConfig({"revos", "refine", "m.json", "--config", cfg.string()});
  EXPECT_NE(std::find(merged.begin(), merged.end(), "--window"), merged.end());
  std::ofstream(dir_ / "bad.json") << "[1, 2";
  EXPECT_EQ(Cli({"refine", gt.string(), "--config", (dir_ / "bad.json").string()}),
            kExitUsage);
}

TEST_F(CliTest, SynthCorpusLayout) {
  const fs::path out = dir_ / "corpus";
  ASSERT_EQ(Cli({"synth", "--preset", "split", "--preset", "flow", "--seeds", "1", "2",
                 "--length", "3", "--out", out.string()}),
            kExitOk);
  for (const char* d : {"split_1", "split_2", "flow_1", "flow_2"}) {
    EXPECT_TRUE(fs::exists(out / d / "manifest.json")) << d;
  }
  const Json doc = ReadJson(out / "synth.json");
  ASSERT_EQ(doc["cases"].size(), 4u);
  EXPECT_EQ(doc["cases"][1]["directory"], "split_2");
}

TEST_F(CliTest, ChromaWritesMask) {
  const fs::path gt = Synth("static", 9, 2);
  const fs::path out = dir_ / "chroma" / "mask.png";
  ASSERT_EQ(Cli({"chroma", "--seed", "16,16", "--delta", "0.2",
                 (gt.parent_path() / "image_0000.png").string(), out.string()}),
            kExitOk);
  EXPECT_TRUE(fs::exists(out));
  const Json doc = ReadJson(out.parent_path() / "chroma.json");
  EXPECT_TRUE(doc.contains("seed_hsv"));
  EXPECT_EQ(Cli({"chroma", "--seed", "99,99", "--delta", "0.2",
                 (gt.parent_path() / "image_0000.png").string(), out.string()}),
            kExitUsage);
}

TEST_F(CliTest, ChallengeWritesCurves) {
  const fs::path gt = Synth("flow", 10);
  const fs::path out = dir_ / "challenge";
  ASSERT_EQ(Cli({"challenge", "--pred", gt.string(), "--gt", gt.string(), "--out",
                 out.string()}),
            kExitOk);
  for (const char* f : {"challenge.json", "samples.csv", "size_curve.csv",
                        "velocity_curve.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_EQ(Cli({"challenge", "--pred", gt.string(), "--gt", gt.string(),
                 "--size-edges", "0,x", "--out", out.string()}),
            kExitUsage);
}

}  // namespace
}  // namespace revos::cli
