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

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "revos/audit.h"
#include "revos/chroma.h"
#include "revos/disorder.h"
#include "revos/error.h"
#include "revos/io.h"
#include "revos/metrics.h"
#include "revos/refine.h"
#include "revos/report.h"
#include "revos/synth.h"

namespace revos::cli {
namespace {

namespace fs = std::filesystem;

// Bad flag values found after CLI11 has parsed.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Fn>
auto AsUsage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

struct Common {
  std::string out = "revos_out";
  int jobs = 1;
  uint64_t seed = 0;
  std::string format = "json";
  std::string config;
};

void AddCommon(CLI::App* sub, Common& c, bool with_seed = true) {
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--jobs", c.jobs, "Worker threads across sequences")
      ->check(CLI::PositiveNumber);
  if (with_seed) sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--format", c.format, "Summary format on stdout")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", c.config, "JSON file mirroring the flags");
}

// Collects what a run read and wrote, then emits run_record.json and the
// wall-clock fields in timing.json.
class RunContext {
 public:
  RunContext(std::string subcommand, const CLI::App* app, const Common& common)
      : subcommand_(std::move(subcommand)), app_(app), common_(common),
        start_(std::chrono::steady_clock::now()) {}

  fs::path out() const { return common_.out; }

  void AddInput(const fs::path& path) { inputs_.insert(path.string()); }

  void AddSequenceInputs(const fs::path& manifest_path, const Manifest& m) {
    AddInput(manifest_path);
    for (size_t i = 0; i < m.frames.size(); ++i) AddInput(m.FramePath(i));
    for (size_t i = 0; i < m.images.size(); ++i) AddInput(m.ImagePath(i));
  }

  void Finish() const {
    Json record;
    record["tool"] = "revos";
    record["version"] = kToolVersion;
    record["subcommand"] = subcommand_;
    record["config"] = ResolvedConfig();
    record["seed"] = common_.seed;
    Json inputs = Json::array();
    for (const std::string& p : inputs_) {
      inputs.push_back({{"path", p}, {"digest", FileDigest(p)}});
    }
    record["inputs"] = std::move(inputs);
    const fs::path out = common_.out;
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(out)) {
      if (!e.is_regular_file()) continue;
      const std::string rel = fs::relative(e.path(), out).generic_string();
      if (rel == "run_record.json" || rel == "timing.json") continue;
      files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    Json outputs = Json::array();
    for (const std::string& rel : files) {
      outputs.push_back({{"path", rel}, {"digest", FileDigest(out / rel)}});
    }
    record["outputs"] = std::move(outputs);
    WriteJson(out / "run_record.json", record);
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
    WriteJson(out / "timing.json", Json{{"wall_seconds", seconds}});
  }

 private:
  Json ResolvedConfig() const {
    Json config = Json::object();
    for (const CLI::Option* opt : app_->get_options()) {
      std::string name = opt->get_name();
      if (name.empty() || name == "--help") continue;
      while (!name.empty() && name.front() == '-') name.erase(name.begin());
      if (opt->count() > 0) {
        const auto& results = opt->results();
        if (opt->get_expected_max() > 1 || opt->get_items_expected_max() > 1) {
          config[name] = results;
        } else if (opt->get_type_size() == 0) {
          config[name] = true;
        } else {
          config[name] = results.empty() ? std::string() : results.back();
        }
      } else if (opt->get_type_size() == 0) {
        config[name] = false;
      } else {
        config[name] = opt->get_default_str();
      }
    }
    return config;
  }

  std::string subcommand_;
  const CLI::App* app_;
  const Common& common_;
  std::set<std::string> inputs_;
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(i) for i in [0, n) on `jobs` threads. The first failure in index
// order is rethrown after the loop.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (ptrdiff_t i = 0; i < static_cast<ptrdiff_t>(n); ++i) {
    try {
      fn(static_cast<size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string SequenceName(const fs::path& manifest_path) {
  const fs::path dir = manifest_path.parent_path();
  const std::string name = dir.filename().string();
  return name.empty() ? manifest_path.stem().string() : name;
}

std::vector<double> ParseDoubles(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

void PrintSummary(const Common& c, const Json& summary, const std::string& csv) {
  if (c.format == "csv") {
    std::cout << csv;
  } else {
    std::cout << summary.dump(2) << "\n";
  }
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct LoadedSequence {
  fs::path path;
  Manifest manifest;
  std::optional<MaskSequence> sequence;
};

std::vector<LoadedSequence> LoadAll(const std::vector<std::string>& args, int jobs,
                                    RunContext& ctx) {
  std::vector<LoadedSequence> out;
  for (const fs::path& p : ExpandManifestArgs(args)) out.push_back({p, {}, {}});
  ParallelFor(out.size(), jobs, [&](size_t i) {
    out[i].manifest = ReadManifest(out[i].path);
    out[i].sequence.emplace(LoadSequence(out[i].manifest));
  });
  for (const auto& s : out) ctx.AddSequenceInputs(s.path, s.manifest);
  return out;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::vector<std::string> pred, gt;
  size_t min_component_size = 0;
  std::string void_policy = "gt";
};

void RegisterEval(CLI::App& app, EvalArgs& a, Common& c) {
  auto* sub = app.add_subcommand("eval", "Score predictions against ground truth");
  sub->add_option("--pred", a.pred, "Prediction manifests or directories")->required();
  sub->add_option("--gt", a.gt, "Ground-truth manifests or directories")->required();
  sub->add_option("--min-component-size", a.min_component_size,
                  "Drop components smaller than this from J_cc");
  sub->add_option("--void", a.void_policy, "Void source: gt or union")
      ->check(CLI::IsMember({"gt", "union"}));
  AddCommon(sub, c);
}

int RunEval(const EvalArgs& a, const Common& c, RunContext& ctx) {
  auto pred = LoadAll(a.pred, c.jobs, ctx);
  auto gt = LoadAll(a.gt, c.jobs, ctx);
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kMisaligned,
                std::to_string(pred.size()) + " prediction manifests vs " +
                    std::to_string(gt.size()) + " ground-truth manifests");
  }
  if (gt.empty()) throw Error(ErrorCode::kEmptyInput, "no manifests given");
  EvalOptions options;
  options.min_component_size = a.min_component_size;
  options.void_policy = a.void_policy == "union" ? VoidPolicy::kUnion
                                                 : VoidPolicy::kGroundTruth;
  std::vector<EvalReport> reports(gt.size());
  ParallelFor(gt.size(), c.jobs, [&](size_t i) {
    reports[i] = EvaluateSequence(*pred[i].sequence, *gt[i].sequence, options);
    reports[i].name = SequenceName(gt[i].path);
  });

  Json doc;
  double jm = 0, jt = 0, jc = 0;
  Json seqs = Json::array();
  Csv csv(EvalCsvHeader());
  std::vector<std::pair<EvalReport, PhaseAnnotation>> annotated;
  for (const EvalReport& r : reports) {
    jm += r.j_mean;
    jt += r.j_tr;
    jc += r.j_cc;
    seqs.push_back(ToJson(r));
    AppendEvalRows(r, csv);
    if (r.annotation) annotated.emplace_back(r, *r.annotation);
  }
  const double n = static_cast<double>(reports.size());
  Json overall = {{"sequences", reports.size()},
                  {"j_mean", jm / n},
                  {"j_tr", jt / n},
                  {"j_cc", jc / n}};
  doc["overall"] = overall;
  Csv cat_csv({"category", "sequences", "j_mean", "j_tr", "j_cc"});
  if (!annotated.empty()) {
    const auto aggregates = AggregateByCategory(annotated);
    doc["categories"] = ToJson(aggregates);
    for (const auto& g : aggregates) {
      cat_csv.Row({std::string(CategoryName(g.category)), std::to_string(g.count),
                   FormatDouble(g.j_mean), FormatDouble(g.j_tr), FormatDouble(g.j_cc)});
    }
  }
  doc["sequences"] = std::move(seqs);
  WriteJson(ctx.out() / "report.json", doc);
  WriteText(ctx.out() / "report.csv", csv.str());
  if (!annotated.empty()) WriteText(ctx.out() / "categories.csv", cat_csv.str());

  Csv summary({"sequences", "j_mean", "j_tr", "j_cc"});
  summary.Row({std::to_string(reports.size()), FormatDouble(jm / n),
               FormatDouble(jt / n), FormatDouble(jc / n)});
  PrintSummary(c, overall, summary.str());
  return kExitOk;
}

// ------------------------------------------------------------ disorder

struct DisorderArgs {
  std::vector<std::string> manifests;
  std::vector<int> objects;
};

void RegisterDisorder(CLI::App& app, DisorderArgs& a, Common& c) {
  auto* sub = app.add_subcommand("disorder", "Per-frame h_LBP and half-split means");
  sub->add_option("manifests", a.manifests, "Manifests or directories")->required();
  sub->add_option("--object", a.objects, "Object ids (default: all)");
  AddCommon(sub, c);
}

int RunDisorder(const DisorderArgs& a, const Common& c, RunContext& ctx) {
  auto seqs = LoadAll(a.manifests, c.jobs, ctx);
  if (seqs.empty()) throw Error(ErrorCode::kEmptyInput, "no manifests given");
  for (int id : a.objects) {
    if (id < kMinObjectId || id > kMaxObjectId) {
      throw UsageError("object id out of range: " + std::to_string(id));
    }
  }
  struct Row {
    ObjectId id;
    HalfSplitDisorder split;
  };
  std::vector<std::vector<Row>> rows(seqs.size());
  ParallelFor(seqs.size(), c.jobs, [&](size_t i) {
    std::vector<ObjectId> ids;
    if (a.objects.empty()) {
      ids = seqs[i].sequence->object_ids();
    } else {
      for (int id : a.objects) ids.push_back(static_cast<ObjectId>(id));
    }
    for (ObjectId id : ids) rows[i].push_back({id, HalfSplit(*seqs[i].sequence, id)});
  });

  Csv csv({"sequence", "object", "frame", "h_lbp"});
  Json list = Json::array();
  double frame_sum = 0.0, track_sum = 0.0, first_sum = 0.0, latter_sum = 0.0;
  size_t frame_count = 0, track_count = 0;
  for (size_t i = 0; i < seqs.size(); ++i) {
    const std::string name = SequenceName(seqs[i].path);
    for (const Row& r : rows[i]) {
      double track = 0.0;
      for (size_t t = 0; t < r.split.per_frame.size(); ++t) {
        csv.Row({name, std::to_string(r.id), std::to_string(t),
                 FormatDouble(r.split.per_frame[t])});
        track += r.split.per_frame[t];
      }
      frame_sum += track;
      frame_count += r.split.per_frame.size();
      track /= static_cast<double>(r.split.per_frame.size());
      track_sum += track;
      first_sum += r.split.first_half_mean;
      latter_sum += r.split.latter_half_mean;
      ++track_count;
      list.push_back({{"sequence", name},
                      {"object", r.id},
                      {"frames", r.split.per_frame.size()},
                      {"mean", track},
                      {"first_half_mean", r.split.first_half_mean},
                      {"latter_half_mean", r.split.latter_half_mean}});
    }
  }
  if (track_count == 0) throw Error(ErrorCode::kEmptyInput, "no objects to score");
  const double tc = static_cast<double>(track_count);
  Json summary = {
      {"tracks", track_count},
      {"per_frame_mean", frame_sum / static_cast<double>(frame_count)},
      {"per_sequence_mean", track_sum / tc},
      {"first_half_mean", first_sum / tc},
      {"latter_half_mean", latter_sum / tc}};
  WriteJson(ctx.out() / "disorder.json", Json{{"summary", summary}, {"tracks", list}});
  WriteText(ctx.out() / "disorder.csv", csv.str());
  Csv s({"tracks", "per_frame_mean", "per_sequence_mean", "first_half_mean",
         "latter_half_mean"});
  s.Row({std::to_string(track_count), FormatDouble(frame_sum / frame_count),
         FormatDouble(track_sum / tc), FormatDouble(first_sum / tc),
         FormatDouble(latter_sum / tc)});
  PrintSummary(c, summary, s.str());
  return kExitOk;
}

// -------------------------------------------------------------- chroma

struct ChromaArgs {
  std::string seed;
  double delta = 0.0;
  bool literal_hue = false;
  std::vector<std::string> paths;
};

void RegisterChroma(CLI::App& app, ChromaArgs& a, Common& c) {
  auto* sub = app.add_subcommand("chroma", "HSV color-difference masking");
  sub->add_option("--seed", a.seed, "Seed pixel as X,Y")->required();
  sub->add_option("--delta", a.delta, "Tolerance in [0, 1]")->required();
  sub->add_flag("--literal-hue", a.literal_hue, "Plain |dH| without wraparound");
  sub->add_option("paths", a.paths, "Input images followed by the output")
      ->required()->expected(2, -1);
  AddCommon(sub, c, /*with_seed=*/false);
}

int RunChroma(const ChromaArgs& a, const Common& c, RunContext& ctx) {
  const std::vector<double> xy = ParseDoubles(a.seed, "--seed");
  if (xy.size() != 2 || xy[0] != std::floor(xy[0]) || xy[1] != std::floor(xy[1])) {
    throw UsageError("--seed expects integer X,Y");
  }
  if (!(a.delta >= 0.0 && a.delta <= 1.0)) throw UsageError("--delta must lie in [0, 1]");
  const std::vector<std::string> inputs(a.paths.begin(), a.paths.end() - 1);
  const fs::path target = a.paths.back();
  const bool single_file = inputs.size() == 1 && target.extension() == ".png";

  std::vector<ColorImage> images;
  for (const auto& p : inputs) {
    images.push_back(LoadColorImage(p));
    ctx.AddInput(p);
  }
  const PixelPos pos{static_cast<int>(xy[0]), static_cast<int>(xy[1])};
  if (pos.x < 0 || pos.y < 0 || pos.x >= images[0].width || pos.y >= images[0].height) {
    throw UsageError("seed (" + a.seed + ") lies outside the first image");
  }
  const HueDistance mode = a.literal_hue ? HueDistance::kLiteral : HueDistance::kCircular;
  // One template, sampled from the first image, applied to every frame.
  const ChromaResult first = ChromaMask(images[0], ChromaSeed{pos, a.delta}, mode);

  Json frames = Json::array();
  Csv csv({"input", "output", "pixels"});
  for (size_t i = 0; i < images.size(); ++i) {
    const BinaryMask mask =
        i == 0 ? first.mask
               : ChromaMaskHsv(ToHsv(images[i]), images[i].width, images[i].height,
                               first.seed_hsv, a.delta, mode);
    char name[32];
    std::snprintf(name, sizeof(name), "mask_%04zu.png", i);
    const fs::path out_path = single_file ? target : target / name;
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    SaveFrame(FrameFromMask(mask, 1), out_path);
    frames.push_back({{"input", inputs[i]},
                      {"output", out_path.generic_string()},
                      {"pixels", mask.Count()}});
    csv.Row({inputs[i], out_path.generic_string(), std::to_string(mask.Count())});
  }
  Json doc = {{"seed", {{"x", pos.x}, {"y", pos.y}}},
              {"seed_hsv",
               {{"h", first.seed_hsv.h}, {"s", first.seed_hsv.s}, {"v", first.seed_hsv.v}}},
              {"delta", a.delta},
              {"hue", a.literal_hue ? "literal" : "circular"},
              {"frames", frames}};
  WriteJson(ctx.out() / "chroma.json", doc);
  PrintSummary(c, doc, csv.str());
  return kExitOk;
}

// -------------------------------------------------------------- refine

struct RefineArgs {
  std::string manifest;
  std::string out_dir;
  int window = 30;
  int interval = 30;
  double alpha = 3.0;
  std::string fusion = "confidence-weighted";
  double noise = 0.0;
  int patch_radius = 1;
  int search_radius = 4;
  double temperature = 0.01;
  int memory = 3;
};

void RegisterRefine(CLI::App& app, RefineArgs& a, Common& c) {
  auto* sub = app.add_subcommand("refine", "Forward propagation with reverse refinement");
  sub->add_option("manifest", a.manifest, "Sequence manifest with images")->required();
  sub->add_option("out-dir", a.out_dir, "Output directory (overrides --out)");
  sub->add_option("--window", a.window, "Reverse window T (0 disables)");
  sub->add_option("--interval", a.interval, "Reverse interval L (0 disables)");
  sub->add_option("--alpha", a.alpha, "Boosting factor");
  sub->add_option("--fusion", a.fusion,
                  "confidence-weighted, average, forward-only or reverse-only");
  sub->add_option("--noise", a.noise, "Gaussian logit noise amplitude");
  sub->add_option("--patch-radius", a.patch_radius, "Backbone patch radius");
  sub->add_option("--search-radius", a.search_radius, "Backbone search radius");
  sub->add_option("--temperature", a.temperature, "Backbone softmax temperature");
  sub->add_option("--memory", a.memory, "Backbone forward memory capacity");
  AddCommon(sub, c);
}

int RunRefine(const RefineArgs& a, const Common& c, RunContext& ctx) {
  ReverseConfig cfg;
  cfg.window = a.window;
  cfg.interval = a.interval;
  cfg.alpha = a.alpha;
  cfg.fusion = AsUsage([&] { return ParseFusionMode(a.fusion); });
  AsUsage([&] { cfg.Validate(); return 0; });
  if (!(a.noise >= 0.0)) throw UsageError("--noise must be >= 0");
  const fs::path manifest_path = a.manifest;
  const Manifest manifest = ReadManifest(manifest_path);
  const MaskSequence gt = LoadSequence(manifest);
  if (manifest.images.empty()) {
    throw Error(ErrorCode::kEmptyInput, manifest_path.string() + " lists no images");
  }
  const std::vector<ColorImage> images = LoadImages(manifest);
  ctx.AddSequenceInputs(manifest_path, manifest);
  if (images.size() != gt.length() || images[0].width != gt.width() ||
      images[0].height != gt.height()) {
    throw Error(ErrorCode::kMisaligned, "images and masks differ in count or size");
  }

  const PatchMatchBackbone backbone = AsUsage([&] {
    return PatchMatchBackbone(
        kernels::MatchParams{a.patch_radius, a.search_radius, a.temperature},
        static_cast<size_t>(a.memory));
  });
  const NoisyPropagator noisy(backbone, a.noise, c.seed);
  const Propagator& prop = a.noise > 0.0 ? static_cast<const Propagator&>(noisy)
                                         : static_cast<const Propagator&>(backbone);
  const MultiObjectResult result = RunRevosMulti(images, gt.frame(0), prop, cfg);

  const MaskSequence forward(result.forward_labels, gt.fps(), gt.objects());
  const MaskSequence refined(result.refined_labels, gt.fps(), gt.objects());
  SaveSequence(refined, ctx.out() / "masks");
  SaveSequence(forward, ctx.out() / "forward");
  EvalReport fwd_report = EvaluateSequence(forward, gt);
  EvalReport ref_report = EvaluateSequence(refined, gt);
  fwd_report.name = ref_report.name = SequenceName(manifest_path);

  Csv csv({"object", "frame", "j_forward", "j_refined"});
  for (size_t k = 0; k < ref_report.objects.size(); ++k) {
    const auto& f = fwd_report.objects[k];
    const auto& r = ref_report.objects[k];
    for (size_t t = 0; t < r.j.size(); ++t) {
      csv.Row({std::to_string(r.id), std::to_string(t), FormatDouble(f.j[t]),
               FormatDouble(r.j[t])});
    }
  }
  Json passes = Json::object();
  for (size_t k = 0; k < result.ids.size(); ++k) {
    Json list = Json::array();
    for (const auto& p : result.per_object[k].passes) {
      list.push_back({{"seed_frame", p.seed_frame},
                      {"first_frame", p.first_frame},
                      {"last_frame", p.last_frame},
                      {"memory_size_after", p.memory_size_after}});
    }
    passes[std::to_string(result.ids[k])] = std::move(list);
  }
  auto scores = [](const EvalReport& r) {
    return Json{{"j_mean", r.j_mean}, {"j_tr", r.j_tr}, {"j_cc", r.j_cc}};
  };
  Json summary = {{"forward", scores(fwd_report)}, {"refined", scores(ref_report)}};
  Json doc = {{"config",
               {{"window", cfg.window},
                {"interval", cfg.interval},
                {"alpha", cfg.alpha},
                {"fusion", FusionModeName(cfg.fusion)},
                {"noise", a.noise},
                {"seed", c.seed},
                {"backbone",
                 {{"patch_radius", a.patch_radius},
                  {"search_radius", a.search_radius},
                  {"temperature", a.temperature},
                  {"memory", a.memory}}}}},
              {"scores", summary},
              {"passes", passes},
              {"forward_report", ToJson(fwd_report)},
              {"refined_report", ToJson(ref_report)}};
  WriteJson(ctx.out() / "refine.json", doc);
  WriteText(ctx.out() / "per_frame.csv", csv.str());
  Csv s({"branch", "j_mean", "j_tr", "j_cc"});
  s.Row({"forward", FormatDouble(fwd_report.j_mean), FormatDouble(fwd_report.j_tr),
         FormatDouble(fwd_report.j_cc)});
  s.Row({"refined", FormatDouble(ref_report.j_mean), FormatDouble(ref_report.j_tr),
         FormatDouble(ref_report.j_cc)});
  PrintSummary(c, summary, s.str());
  return kExitOk;
}

// ----------------------------------------------------------- challenge

struct ChallengeArgs {
  std::vector<std::string> pred, gt;
  std::string size_edges = "0,0.01,0.02,0.05,0.1,0.2,0.5,1";
  std::string velocity_edges = "0,0.01,0.02,0.05,0.1,0.2,0.5,1,1e9";
};

void RegisterChallenge(CLI::App& app, ChallengeArgs& a, Common& c) {
  auto* sub = app.add_subcommand("challenge", "J binned by object size and velocity");
  sub->add_option("--pred", a.pred, "Prediction manifests or directories")->required();
  sub->add_option("--gt", a.gt, "Ground-truth manifests or directories")->required();
  sub->add_option("--size-edges", a.size_edges, "Comma-separated size-ratio bin edges");
  sub->add_option("--velocity-edges", a.velocity_edges,
                  "Comma-separated velocity bin edges");
  AddCommon(sub, c);
}

int RunChallenge(const ChallengeArgs& a, const Common& c, RunContext& ctx) {
  const auto size_edges = ParseDoubles(a.size_edges, "--size-edges");
  const auto velocity_edges = ParseDoubles(a.velocity_edges, "--velocity-edges");
  AsUsage([&] {
    const std::vector<double> none;
    BinnedMeans(none, none, size_edges);
    BinnedMeans(none, none, velocity_edges);
    return 0;
  });
  auto pred = LoadAll(a.pred, c.jobs, ctx);
  auto gt = LoadAll(a.gt, c.jobs, ctx);
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kMisaligned, "prediction and ground-truth lists differ in length");
  }
  std::vector<std::vector<ChallengeSample>> per(gt.size());
  ParallelFor(gt.size(), c.jobs, [&](size_t i) {
    per[i] = CollectChallengeSamples(*pred[i].sequence, *gt[i].sequence);
  });
  std::vector<ChallengeSample> samples;
  Csv csv({"sequence", "index", "r", "v", "d", "has_velocity", "j"});
  for (size_t i = 0; i < per.size(); ++i) {
    const std::string name = SequenceName(gt[i].path);
    for (size_t k = 0; k < per[i].size(); ++k) {
      const ChallengeSample& s = per[i][k];
      csv.Row({name, std::to_string(k), FormatDouble(s.record.r),
               FormatDouble(s.record.v), FormatDouble(s.record.d),
               s.has_velocity ? "1" : "0", FormatDouble(s.j)});
      samples.push_back(s);
    }
  }
  const ChallengeCurves curves = ComputeChallengeCurves(samples, size_edges, velocity_edges);
  Json doc = {{"samples", samples.size()},
              {"by_size", ToJson(curves.by_size)},
              {"by_velocity", ToJson(curves.by_velocity)}};
  WriteJson(ctx.out() / "challenge.json", doc);
  WriteText(ctx.out() / "samples.csv", csv.str());
  WriteText(ctx.out() / "size_curve.csv", BinsCsv(curves.by_size, "size"));
  WriteText(ctx.out() / "velocity_curve.csv", BinsCsv(curves.by_velocity, "velocity"));
  PrintSummary(c, doc,
               BinsCsv(curves.by_size, "size") + BinsCsv(curves.by_velocity, "velocity"));
  return kExitOk;
}

// --------------------------------------------------------------- audit

struct AuditArgs {
  std::vector<std::string> a, b, o;
  std::vector<std::string> metrics = {"j_mean", "j_cc"};
  double epsilon = 0.5;
  std::string mos, dmos;
  double ratio = 5.0;
};

void RegisterAudit(CLI::App& app, AuditArgs& a, Common& c) {
  auto* sub = app.add_subcommand("audit", "Annotation bias and review aggregation");
  sub->add_option("--a", a.a, "Mask set A (manifests or directories)");
  sub->add_option("--b", a.b, "Mask set B");
  sub->add_option("--o", a.o, "Reference mask set O");
  sub->add_option("--metric", a.metrics, "j_mean and/or j_cc");
  sub->add_option("--epsilon", a.epsilon, "Bias tolerance");
  sub->add_option("--mos", a.mos, "MOS sheet: clip,reviewer,criterion,score");
  sub->add_option("--dmos", a.dmos, "DMOS sheet: clip,reviewer,criterion,choice");
  sub->add_option("--ratio", a.ratio, "Sampling ratio for the audit subset");
  AddCommon(sub, c);
}

int RunAudit(const AuditArgs& a, const Common& c, RunContext& ctx) {
  const bool any_set = !a.a.empty() || !a.b.empty() || !a.o.empty();
  if (any_set && (a.a.empty() || a.b.empty() || a.o.empty())) {
    throw UsageError("--a, --b and --o must be given together");
  }
  if (!any_set && a.mos.empty() && a.dmos.empty()) {
    throw UsageError("nothing to audit: give --a/--b/--o, --mos or --dmos");
  }
  if (!(a.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
  if (!(a.ratio > 0.0)) throw UsageError("--ratio must be > 0");
  std::vector<AuditMetric> metrics;
  for (const auto& m : a.metrics) {
    metrics.push_back(AsUsage([&] { return ParseAuditMetric(m); }));
  }

  Json doc = Json::object();
  Json summary = Json::object();
  if (any_set) {
    AuditTriplet triplet;
    std::vector<std::string> clips;
    for (auto& s : LoadAll(a.a, c.jobs, ctx)) {
      clips.push_back(SequenceName(s.path));
      triplet.a.push_back(std::move(*s.sequence));
    }
    for (auto& s : LoadAll(a.b, c.jobs, ctx)) triplet.b.push_back(std::move(*s.sequence));
    for (auto& s : LoadAll(a.o, c.jobs, ctx)) triplet.o.push_back(std::move(*s.sequence));
    Json per_metric = Json::object();
    for (AuditMetric m : metrics) {
      const AgreementMatrix matrix = AgreementMatrixFor(triplet, m);
      const BiasVerdict verdict = BiasCheck(matrix, a.epsilon);
      const std::string name(AuditMetricName(m));
      per_metric[name] = {{"matrix", ToJson(matrix)}, {"bias", ToJson(verdict)}};
      summary[name] = verdict.pass ? "PASS" : "FAIL";
      Csv grid({"", "A", "B", "O"});
      const char* labels[3] = {"A", "B", "O"};
      for (int r = 0; r < 3; ++r) {
        grid.Row({labels[r], FormatDouble(matrix[r][0]), FormatDouble(matrix[r][1]),
                  FormatDouble(matrix[r][2])});
      }
      WriteText(ctx.out() / ("matrix_" + name + ".csv"), grid.str());
    }
    doc["clips"] = clips;
    doc["metrics"] = std::move(per_metric);
    doc["unavailable_metrics"] = Json::array({"j_st"});
    doc["sample"] = {{"ratio", a.ratio},
                     {"seed", c.seed},
                     {"clips", SampleForAudit(clips, a.ratio, c.seed)}};
  }
  if (!a.mos.empty()) {
    ctx.AddInput(a.mos);
    Json mos = Json::object();
    size_t qualified = 0;
    const auto records = ParseMosCsv(ReadFile(a.mos));
    for (const auto& [clip, record] : records) {
      const MosVerdict v = MosGate(record);
      Json means = Json::object();
      Json reviewers = Json::object();
      for (size_t k = 0; k < kAllCriteria.size(); ++k) {
        const std::string crit(CriterionName(kAllCriteria[k]));
        means[crit] = v.means[k];
        reviewers[crit] = v.reviewers[k];
      }
      mos[clip] = {{"verdict", v.qualified ? "qualified" : "unqualified"},
                   {"means", means},
                   {"reviewers", reviewers}};
      qualified += v.qualified ? 1 : 0;
    }
    doc["mos"] = std::move(mos);
    summary["mos_qualified"] = qualified;
    summary["mos_clips"] = records.size();
  }
  if (!a.dmos.empty()) {
    ctx.AddInput(a.dmos);
    const DmosTally tally = TallyReviews(ParseDmosCsv(ReadFile(a.dmos)));
    const auto fractions = tally.Fractions();
    Json d = Json::object();
    Csv csv({"criterion", "prefer_a", "prefer_b", "equal"});
    for (size_t k = 0; k < kAllCriteria.size(); ++k) {
      const std::string crit(CriterionName(kAllCriteria[k]));
      Json counts = Json::object(), frac = Json::object();
      for (Preference p : {Preference::kPreferA, Preference::kPreferB, Preference::kEqual}) {
        const std::string pn(PreferenceName(p));
        counts[pn] = tally.counts[k][static_cast<int>(p)];
        frac[pn] = fractions[k][static_cast<int>(p)];
      }
      d[crit] = {{"counts", counts}, {"fractions", frac}};
      csv.Row({crit, std::to_string(tally.counts[k][0]), std::to_string(tally.counts[k][1]),
               std::to_string(tally.counts[k][2])});
    }
    doc["dmos"] = std::move(d);
    WriteText(ctx.out() / "dmos.csv", csv.str());
  }
  WriteJson(ctx.out() / "audit.json", doc);
  Csv s({"key", "value"});
  for (const auto& [k, v] : summary.items()) {
    s.Row({k, v.is_string() ? v.get<std::string>() : v.dump()});
  }
  PrintSummary(c, summary, s.str());
  return kExitOk;
}

// --------------------------------------------------------------- synth

struct SynthArgs {
  std::vector<std::string> presets;
  std::vector<uint64_t> seeds;
  int length = 20;
  int width = 64;
  int height = 64;
  double noise = 0.0;
};

void RegisterSynth(CLI::App& app, SynthArgs& a, Common& c) {
  auto* sub = app.add_subcommand("synth", "Generate synthetic sequences");
  sub->add_option("--preset", a.presets, "split, diffuse, flow or static")->required();
  sub->add_option("--seeds", a.seeds, "Several seeds (default: --seed)");
  sub->add_option("--length", a.length, "Frames per sequence");
  sub->add_option("--width", a.width, "Frame width");
  sub->add_option("--height", a.height, "Frame height");
  sub->add_option("--noise", a.noise, "Logit noise amplitude carried with the case");
  AddCommon(sub, c);
}

int RunSynth(const SynthArgs& a, const Common& c, RunContext& ctx) {
  const std::vector<uint64_t> seeds =
      a.seeds.empty() ? std::vector<uint64_t>{c.seed} : a.seeds;
  std::vector<SynthSpec> specs;
  for (const auto& p : a.presets) {
    for (uint64_t s : seeds) {
      SynthSpec spec = AsUsage([&] { return PresetSpec(p, s); });
      spec.length = a.length;
      spec.width = a.width;
      spec.height = a.height;
      spec.noise = a.noise;
      AsUsage([&] { spec.Validate(); return 0; });
      specs.push_back(spec);
    }
  }
  const bool flat = specs.size() == 1;
  std::vector<std::string> dirs(specs.size());
  ParallelFor(specs.size(), c.jobs, [&](size_t i) {
    const SynthCase sc = Generate(specs[i]);
    dirs[i] = flat ? std::string(".")
                   : std::string(SynthKindName(specs[i].kind)) + "_" +
                         std::to_string(specs[i].seed);
    SaveSequence(sc.gt, ctx.out() / dirs[i], &sc.images);
  });
  Json cases = Json::array();
  Csv csv({"preset", "seed", "directory", "frames"});
  for (size_t i = 0; i < specs.size(); ++i) {
    const std::string preset(SynthKindName(specs[i].kind));
    cases.push_back({{"preset", preset},
                     {"seed", specs[i].seed},
                     {"directory", dirs[i]},
                     {"frames", specs[i].length}});
    csv.Row({preset, std::to_string(specs[i].seed), dirs[i],
             std::to_string(specs[i].length)});
  }
  const Json doc = {{"cases", cases}};
  WriteJson(ctx.out() / "synth.json", doc);
  PrintSummary(c, doc, csv.str());
  return kExitOk;
}

bool HasFlag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

void AppendConfigValue(const std::string& key, const Json& value,
                       std::vector<std::string>& args) {
  if (key == "config") return;
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  if (HasFlag(args, flag)) return;
  auto scalar = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (value.is_boolean()) {
    if (value.get<bool>()) args.push_back(flag);
  } else if (value.is_array()) {
    if (value.empty()) return;
    args.push_back(flag);
    for (const auto& v : value) args.push_back(scalar(v));
  } else if (!value.is_null() && !value.is_object()) {
    args.push_back(flag);
    args.push_back(scalar(value));
  }
}

}  // namespace

std::vector<std::string> MergeConfig(const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  Json doc;
  try {
    doc = Json::parse(ReadFile(path));
  } catch (const Error&) {
    throw UsageError("cannot read config file " + path);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> out = args;
  const std::string sub = args.size() > 1 ? args[1] : "";
  if (doc.contains(sub) && doc[sub].is_object()) {
    for (const auto& [k, v] : doc[sub].items()) AppendConfigValue(k, v, out);
  }
  for (const auto& [k, v] : doc.items()) AppendConfigValue(k, v, out);
  return out;
}

int Run(std::vector<std::string> args) {
  CLI::App app{"Video object segmentation evaluation and reverse refinement", "revos"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.option_defaults()->always_capture_default();
  Common common;
  EvalArgs eval_args;
  DisorderArgs disorder_args;
  ChromaArgs chroma_args;
  RefineArgs refine_args;
  ChallengeArgs challenge_args;
  AuditArgs audit_args;
  SynthArgs synth_args;
  RegisterEval(app, eval_args, common);
  RegisterDisorder(app, disorder_args, common);
  RegisterChroma(app, chroma_args, common);
  RegisterRefine(app, refine_args, common);
  RegisterChallenge(app, challenge_args, common);
  RegisterAudit(app, audit_args, common);
  RegisterSynth(app, synth_args, common);

  try {
    args = MergeConfig(args);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "revos: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "refine" && !refine_args.out_dir.empty()) common.out = refine_args.out_dir;
    if (name == "chroma" && sub->get_option("--out")->count() == 0) {
      const fs::path target = chroma_args.paths.back();
      common.out = (target.extension() == ".png" ? target.parent_path() : target).string();
      if (common.out.empty()) common.out = ".";
    }
    fs::create_directories(common.out);
    RunContext ctx(name, sub, common);
    int code = kExitInternal;
    if (name == "eval") code = RunEval(eval_args, common, ctx);
    if (name == "disorder") code = RunDisorder(disorder_args, common, ctx);
    if (name == "chroma") code = RunChroma(chroma_args, common, ctx);
    if (name == "refine") code = RunRefine(refine_args, common, ctx);
    if (name == "challenge") code = RunChallenge(challenge_args, common, ctx);
    if (name == "audit") code = RunAudit(audit_args, common, ctx);
    if (name == "synth") code = RunSynth(synth_args, common, ctx);
    ctx.Finish();
    return code;
  } catch (const UsageError& e) {
    std::cerr << "revos " << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "revos " << name << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kInternal ? kExitInternal : kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "revos " << name << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "revos " << name << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace revos::cli
