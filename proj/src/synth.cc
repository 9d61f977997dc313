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

#include "revos/synth.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>

#include "revos/error.h"
#include "revos/random.h"

namespace revos {
namespace {

constexpr double kFps = 30.0;
constexpr double kBackgroundTexture = 0.06;
constexpr double kObjectTexture = 0.04;

struct Rgb {
  double r, g, b;
};

float Quantize(double v) {
  return static_cast<float>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0);
}

// Deterministic value in [-1, 1) from a key.
double HashUnit(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = SplitMix64(seed ^ SplitMix64(a ^ SplitMix64(b ^ SplitMix64(c))));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

class Canvas {
 public:
  Canvas(const SynthSpec& spec, Rgb background)
      : spec_(spec),
        image_(spec.width, spec.height),
        mask_(spec.width, spec.height) {
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        for (int c = 0; c < 3; ++c) {
          const double base = c == 0 ? background.r : c == 1 ? background.g : background.b;
          image_.at(x, y, c) =
              Quantize(base + kBackgroundTexture * HashUnit(spec.seed, 1, y * 4096 + x, c));
        }
      }
    }
  }

  // Paints object pixel (x, y); `key` selects a texture sample that moves
  // with the object.
  void Paint(int x, int y, Rgb color, uint64_t key) {
    if (x < 0 || y < 0 || x >= spec_.width || y >= spec_.height) return;
    const std::array<double, 3> base = {color.r, color.g, color.b};
    for (int c = 0; c < 3; ++c) {
      image_.at(x, y, c) =
          Quantize(base[c] + kObjectTexture * HashUnit(spec_.seed, 2, key, c));
    }
    mask_.Set(x, y, true);
  }

  ColorImage& image() { return image_; }
  const BinaryMask& mask() const { return mask_; }

 private:
  const SynthSpec& spec_;
  ColorImage image_;
  BinaryMask mask_;
};

uint64_t LocalKey(int dx, int dy, uint64_t owner) {
  return (owner << 20) ^ (static_cast<uint64_t>(dy + 512) << 10) ^
         static_cast<uint64_t>(dx + 512);
}

struct Particle {
  double ox, oy;  // offset from the centre at t = 0
  Rgb color;
};

void RenderSplit(const SynthSpec& spec, Rng& rng, std::vector<ColorImage>& images,
                 std::vector<BinaryMask>& masks) {
  const double w = spec.width, h = spec.height;
  const double cx = w / 2 + UniformRange(rng, -2, 2);
  const double cy = h / 2 + UniformRange(rng, -2, 2);
  const double radius0 = std::min(w, h) / 8.0;
  const double spacing = 3.0;
  const double particle_r = 2.2;
  const double theta = UniformRange(rng, 0, M_PI / 2);
  // Homologous expansion keeps every pairwise distance growing, so pieces
  // separate and never re-join.
  const double final_scale =
      std::min(UniformRange(rng, 2.4, 3.0),
               (std::min(w, h) / 2.0 - particle_r - 3.0) / radius0);
  const double rate = (final_scale - 1.0) / (spec.length - 1);
  const Rgb base{0.85 + UniformRange(rng, -0.05, 0.05), 0.55, 0.2};

  std::vector<Particle> particles;
  const int n = static_cast<int>(std::ceil(radius0 / spacing));
  for (int j = -n; j <= n; ++j) {
    for (int i = -n; i <= n; ++i) {
      const double gx = i * spacing, gy = j * spacing;
      if (gx * gx + gy * gy > radius0 * radius0) continue;
      const double ox = gx * std::cos(theta) - gy * std::sin(theta);
      const double oy = gx * std::sin(theta) + gy * std::cos(theta);
      const double shade = UniformRange(rng, -0.08, 0.08);
      particles.push_back({ox, oy, {base.r + shade, base.g + shade, base.b}});
    }
  }
  const Rgb background{0.25, 0.35, 0.3};
  for (int t = 0; t < spec.length; ++t) {
    Canvas canvas(spec, background);
    const double scale = 1.0 + rate * t;
    for (size_t k = 0; k < particles.size(); ++k) {
      const double px = cx + particles[k].ox * scale;
      const double py = cy + particles[k].oy * scale;
      const int x0 = static_cast<int>(std::floor(px - particle_r));
      const int y0 = static_cast<int>(std::floor(py - particle_r));
      for (int y = y0; y <= y0 + 5; ++y) {
        for (int x = x0; x <= x0 + 5; ++x) {
          const double dx = x - px, dy = y - py;
          if (dx * dx + dy * dy > particle_r * particle_r) continue;
          canvas.Paint(x, y, particles[k].color,
                       LocalKey(x - static_cast<int>(std::lround(px)),
                                y - static_cast<int>(std::lround(py)), k + 1));
        }
      }
    }
    images.push_back(std::move(canvas.image()));
    masks.push_back(canvas.mask());
  }
}

void RenderDiffuse(const SynthSpec& spec, Rng& rng, std::vector<ColorImage>& images,
                   std::vector<BinaryMask>& masks) {
  const double w = spec.width, h = spec.height;
  const double cx = w / 2 + UniformRange(rng, -2, 2);
  const double cy = h / 2 + UniformRange(rng, -2, 2);
  const double r0 = std::min(w, h) / 10.0;
  const double r_max = std::min(w, h) / 2.0 - 3.0;
  std::array<double, 4> amp{}, phase{};
  for (int k = 0; k < 4; ++k) {
    amp[k] = UniformRange(rng, 0.0, 0.06);
    phase[k] = UniformRange(rng, 0.0, 2 * M_PI);
  }
  // Edge profile stays <= 1 so the spread never leaves the frame.
  const double profile_max = 1.0 + amp[0] + amp[1] + amp[2] + amp[3];
  const double growth = (r_max / profile_max - r0) / (spec.length - 1);
  const Rgb color{0.82, 0.82, 0.88};
  const Rgb background{0.2, 0.25, 0.35};
  for (int t = 0; t < spec.length; ++t) {
    Canvas canvas(spec, background);
    const double radius = r0 + growth * t;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const double dx = x - cx, dy = y - cy;
        const double a = std::atan2(dy, dx);
        double profile = 1.0;
        for (int k = 0; k < 4; ++k) profile += amp[k] * std::cos((k + 2) * a + phase[k]);
        if (std::hypot(dx, dy) <= radius * profile) {
          canvas.Paint(x, y, color, LocalKey(x, y, 1));
        }
      }
    }
    images.push_back(std::move(canvas.image()));
    masks.push_back(canvas.mask());
  }
}

void RenderFlow(const SynthSpec& spec, Rng& rng, std::vector<ColorImage>& images,
                std::vector<BinaryMask>& masks) {
  const double w = spec.width, h = spec.height;
  const double a0 = std::min(w, h) / 6.0;
  const double b0 = a0 * UniformRange(rng, 0.5, 0.8);
  const double travel = std::min(w, h) / 4.0;
  const double heading = UniformRange(rng, 0, 2 * M_PI);
  const double vx = travel * std::cos(heading) / (spec.length - 1);
  const double vy = travel * std::sin(heading) / (spec.length - 1);
  const double cx0 = w / 2 - vx * (spec.length - 1) / 2;
  const double cy0 = h / 2 - vy * (spec.length - 1) / 2;
  const double spin = UniformRange(rng, -0.05, 0.05);
  const double omega = UniformRange(rng, 0.2, 0.4);
  const Rgb color{0.15, 0.45, 0.85};
  const Rgb background{0.45, 0.4, 0.3};
  for (int t = 0; t < spec.length; ++t) {
    Canvas canvas(spec, background);
    const double cx = cx0 + vx * t, cy = cy0 + vy * t;
    const double a = a0 * (1.0 + 0.2 * std::sin(omega * t));
    const double b = b0 * (1.0 - 0.15 * std::sin(omega * t));
    const double rot = spin * t;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const double dx = x - cx, dy = y - cy;
        const double u = dx * std::cos(rot) + dy * std::sin(rot);
        const double v = -dx * std::sin(rot) + dy * std::cos(rot);
        if ((u * u) / (a * a) + (v * v) / (b * b) <= 1.0) {
          canvas.Paint(x, y, color,
                       LocalKey(static_cast<int>(std::lround(u)),
                                static_cast<int>(std::lround(v)), 1));
        }
      }
    }
    images.push_back(std::move(canvas.image()));
    masks.push_back(canvas.mask());
  }
}

void RenderStatic(const SynthSpec& spec, Rng& rng, std::vector<ColorImage>& images,
                  std::vector<BinaryMask>& masks) {
  const double w = spec.width, h = spec.height;
  const double cx = w / 2 + UniformRange(rng, -3, 3);
  const double cy = h / 2 + UniformRange(rng, -3, 3);
  const double r = std::min(w, h) / 5.0;
  const Rgb color{0.8, 0.3, 0.5};
  Canvas canvas(spec, {0.3, 0.3, 0.3});
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      if (std::hypot(x - cx, y - cy) <= r) canvas.Paint(x, y, color, LocalKey(x, y, 1));
    }
  }
  for (int t = 0; t < spec.length; ++t) {
    images.push_back(canvas.image());
    masks.push_back(canvas.mask());
  }
}

std::optional<PhaseAnnotation> AnnotationFor(SynthKind kind) {
  switch (kind) {
    case SynthKind::kSplit:
      return MakeAnnotation(Phase::kParticulateSolid, Phase::kParticulateSolid,
                            Transition::kSplit);
    case SynthKind::kDiffuse:
      return MakeAnnotation(Phase::kAerosolGas, Phase::kAerosolGas,
                            Transition::kDiffuse);
    case SynthKind::kFlow:
      return MakeAnnotation(Phase::kNonViscousLiquid, Phase::kNonViscousLiquid,
                            Transition::kFlow);
    case SynthKind::kStatic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::string_view SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kSplit: return "split";
    case SynthKind::kDiffuse: return "diffuse";
    case SynthKind::kFlow: return "flow";
    case SynthKind::kStatic: return "static";
  }
  return "?";
}

SynthKind ParseSynthKind(std::string_view name) {
  std::string key;
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (SynthKind k : {SynthKind::kSplit, SynthKind::kDiffuse, SynthKind::kFlow,
                      SynthKind::kStatic}) {
    if (SynthKindName(k) == key) return k;
  }
  throw Error(ErrorCode::kParse, "unknown preset '" + std::string(name) + "'");
}

void SynthSpec::Validate() const {
  if (length < 2) throw Error(ErrorCode::kInvalidArgument, "length must be >= 2");
  if (width < 16 || height < 16) {
    throw Error(ErrorCode::kInvalidArgument, "frames must be at least 16x16");
  }
  if (!(noise >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise must be >= 0");
}

SynthCase Generate(const SynthSpec& spec) {
  spec.Validate();
  Rng rng = MakeRng(spec.seed, static_cast<uint64_t>(spec.kind) + 1);
  std::vector<ColorImage> images;
  std::vector<BinaryMask> masks;
  switch (spec.kind) {
    case SynthKind::kSplit: RenderSplit(spec, rng, images, masks); break;
    case SynthKind::kDiffuse: RenderDiffuse(spec, rng, images, masks); break;
    case SynthKind::kFlow: RenderFlow(spec, rng, images, masks); break;
    case SynthKind::kStatic: RenderStatic(spec, rng, images, masks); break;
  }
  std::vector<InstanceFrame> frames;
  frames.reserve(masks.size());
  for (const BinaryMask& m : masks) frames.push_back(FrameFromMask(m, 1));
  std::vector<ObjectInfo> objects = {
      {1, std::string("synthetic ") + std::string(SynthKindName(spec.kind)) + " object",
       "合成目标"}};
  return SynthCase{spec, std::move(images),
                   MaskSequence(std::move(frames), kFps, std::move(objects),
                                AnnotationFor(spec.kind))};
}

SynthSpec PresetSpec(std::string_view preset, uint64_t seed) {
  SynthSpec spec;
  spec.kind = ParseSynthKind(preset);
  spec.seed = seed;
  return spec;
}

std::vector<SynthCase> Corpus(std::span<const std::string> presets,
                              std::span<const uint64_t> seeds) {
  if (presets.empty() || seeds.empty()) {
    throw Error(ErrorCode::kEmptyInput, "corpus needs presets and seeds");
  }
  std::vector<SynthSpec> specs;
  for (const auto& p : presets) {
    for (uint64_t s : seeds) specs.push_back(PresetSpec(p, s));
  }
  std::vector<std::optional<SynthCase>> slots(specs.size());
#pragma omp parallel for schedule(dynamic)
  for (ptrdiff_t i = 0; i < static_cast<ptrdiff_t>(specs.size()); ++i) {
    slots[i].emplace(Generate(specs[i]));
  }
  std::vector<SynthCase> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace revos
