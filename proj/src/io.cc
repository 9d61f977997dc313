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

#include "revos/io.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "json.hpp"
#include "revos/error.h"

namespace revos {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr OpenOrThrow(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    if (mode[0] == 'r' && !fs::exists(path)) {
      throw Error(ErrorCode::kMissingFile, path.string());
    }
    throw Error(ErrorCode::kUnreadable, "cannot open " + path.string());
  }
  return f;
}

// VOC/DAVIS palette: bit-interleaved label -> color.
std::array<png_color, 256> MakePalette() {
  std::array<png_color, 256> pal{};
  for (int i = 0; i < 256; ++i) {
    int r = 0, g = 0, b = 0, c = i;
    for (int j = 0; j < 8; ++j) {
      r |= ((c >> 0) & 1) << (7 - j);
      g |= ((c >> 1) & 1) << (7 - j);
      b |= ((c >> 2) & 1) << (7 - j);
      c >>= 3;
    }
    pal[i] = png_color{static_cast<png_byte>(r), static_cast<png_byte>(g),
                       static_cast<png_byte>(b)};
  }
  return pal;
}

[[noreturn]] void PngErrorFn(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what != nullptr) *what = msg;
  png_longjmp(png, 1);
}

void PngWarningFn(png_structp, png_const_charp) {}

}  // namespace

InstanceFrame LoadFrame(const fs::path& path) {
  FilePtr file = OpenOrThrow(path, "rb");
  std::array<png_byte, 8> sig{};
  if (std::fread(sig.data(), 1, sig.size(), file.get()) != sig.size() ||
      png_sig_cmp(sig.data(), 0, sig.size()) != 0) {
    throw Error(ErrorCode::kUnreadable, path.string() + " is not a PNG file");
  }
  std::string png_error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &png_error,
                                           PngErrorFn, PngWarningFn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kInternal, "libpng allocation failed");
  }
  // Everything that can longjmp lives in this block; results are copied out
  // only after it finishes.
  volatile int width = 0, height = 0, bit_depth = 0, color_type = 0;
  std::vector<uint8_t> labels;
  std::vector<png_bytep> rows;
  volatile bool failed = false;
  if (setjmp(png_jmpbuf(png))) {
    failed = true;
  } else {
    png_init_io(png, file.get());
    png_set_sig_bytes(png, static_cast<int>(sig.size()));
    png_read_info(png, info);
    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    bit_depth = png_get_bit_depth(png, info);
    color_type = png_get_color_type(png, info);
    if (bit_depth == 8 && (color_type == PNG_COLOR_TYPE_PALETTE ||
                           color_type == PNG_COLOR_TYPE_GRAY)) {
      labels.resize(static_cast<size_t>(width) * height);
      rows.resize(height);
      for (int y = 0; y < height; ++y) {
        rows[y] = labels.data() + static_cast<size_t>(y) * width;
      }
      png_read_image(png, rows.data());
      png_read_end(png, nullptr);
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (failed) {
    throw Error(ErrorCode::kUnreadable, path.string() + ": " + png_error);
  }
  if (bit_depth != 8) {
    throw Error(ErrorCode::kBitDepth, path.string() + " has bit depth " +
                                          std::to_string(bit_depth) +
                                          ", expected 8");
  }
  if (color_type != PNG_COLOR_TYPE_PALETTE && color_type != PNG_COLOR_TYPE_GRAY) {
    throw Error(ErrorCode::kUnreadable,
                path.string() + " is not an indexed or grayscale image");
  }
  return InstanceFrame(width, height, std::move(labels));
}

void SaveFrame(const InstanceFrame& frame, const fs::path& path) {
  FilePtr file = OpenOrThrow(path, "wb");
  std::string png_error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &png_error,
                                            PngErrorFn, PngWarningFn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (png == nullptr || info == nullptr) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kInternal, "libpng allocation failed");
  }
  static const std::array<png_color, 256> kPalette = MakePalette();
  std::vector<png_bytep> rows(frame.height());
  auto labels = frame.labels();
  for (int y = 0; y < frame.height(); ++y) {
    rows[y] = const_cast<png_bytep>(labels.data() +
                                    static_cast<size_t>(y) * frame.width());
  }
  volatile bool failed = false;
  if (setjmp(png_jmpbuf(png))) {
    failed = true;
  } else {
    png_init_io(png, file.get());
    png_set_IHDR(png, info, frame.width(), frame.height(), 8,
                 PNG_COLOR_TYPE_PALETTE, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_PLTE(png, info, kPalette.data(), static_cast<int>(kPalette.size()));
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
  }
  png_destroy_write_struct(&png, &info);
  if (failed) {
    throw Error(ErrorCode::kInternal, "writing " + path.string() + ": " + png_error);
  }
}

ColorImage LoadColorImage(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kMissingFile, path.string());
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::kUnreadable, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kUnreadable, path.string() + ": " + msg);
  }
  ColorImage out(static_cast<int>(image.width), static_cast<int>(image.height));
  for (size_t i = 0; i < buffer.size(); ++i) out.rgb[i] = buffer[i] / 255.0f;
  return out;
}

void SaveColorImage(const ColorImage& img, const fs::path& path) {
  std::vector<png_byte> buffer(img.rgb.size());
  for (size_t i = 0; i < buffer.size(); ++i) {
    const float v = std::clamp(img.rgb[i], 0.0f, 1.0f);
    buffer[i] = static_cast<png_byte>(std::lround(v * 255.0f));
  }
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kInternal,
                "writing " + path.string() + ": " + image.message);
  }
}

Manifest ReadManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    if (!fs::exists(path)) throw Error(ErrorCode::kMissingFile, path.string());
    throw Error(ErrorCode::kUnreadable, "cannot open " + path.string());
  }
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  Manifest m;
  m.directory = path.parent_path();
  try {
    for (const auto& f : j.at("frames")) m.frames.push_back(f.get<std::string>());
    if (j.contains("images")) {
      for (const auto& f : j.at("images")) m.images.push_back(f.get<std::string>());
    }
    m.fps = j.at("fps").get<double>();
    if (j.contains("objects")) {
      for (const auto& o : j.at("objects")) {
        ObjectInfo info;
        const int id = o.at("id").get<int>();
        if (id < kMinObjectId || id > kMaxObjectId) {
          throw Error(ErrorCode::kInvalidArgument,
                      path.string() + ": object id out of range " +
                          std::to_string(id));
        }
        info.id = static_cast<ObjectId>(id);
        info.description_en = o.value("description_en", "");
        info.description_zh = o.value("description_zh", "");
        m.objects.push_back(std::move(info));
      }
    }
    if (j.contains("phase") && !j.at("phase").is_null()) {
      const auto& p = j.at("phase");
      PhaseAnnotation a{};
      a.initial = ParsePhase(p.at("initial").get<std::string>());
      a.final_phase = ParsePhase(p.at("final").get<std::string>());
      a.transition = ParseTransition(p.at("transition").get<std::string>());
      a.category = p.contains("category")
                       ? ParseCategory(p.at("category").get<std::string>())
                       : CategoryOf(a.transition);
      ValidateAnnotation(a);
      m.annotation = a;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  if (!m.images.empty() && m.images.size() < m.frames.size()) {
    throw Error(ErrorCode::kMisaligned,
                path.string() + ": fewer images than mask frames");
  }
  return m;
}

void WriteManifest(const Manifest& m, const fs::path& path) {
  ordered_json j;
  j["frames"] = m.frames;
  if (!m.images.empty()) j["images"] = m.images;
  j["fps"] = m.fps;
  ordered_json objects = ordered_json::array();
  for (const auto& o : m.objects) {
    objects.push_back({{"id", o.id},
                       {"description_en", o.description_en},
                       {"description_zh", o.description_zh}});
  }
  j["objects"] = objects;
  if (m.annotation) {
    j["phase"] = {{"initial", PhaseName(m.annotation->initial)},
                  {"final", PhaseName(m.annotation->final_phase)},
                  {"transition", TransitionName(m.annotation->transition)},
                  {"category", CategoryName(m.annotation->category)}};
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kUnreadable, "cannot write " + path.string());
  out << j.dump(2) << "\n";
}

MaskSequence LoadSequence(const Manifest& m) {
  if (m.frames.empty()) {
    throw Error(ErrorCode::kEmptyInput, "manifest lists no frames");
  }
  std::vector<InstanceFrame> frames;
  frames.reserve(m.frames.size());
  for (size_t i = 0; i < m.frames.size(); ++i) {
    frames.push_back(LoadFrame(m.FramePath(i)));
  }
  std::vector<ObjectInfo> objects = m.objects;
  if (objects.empty()) {
    std::array<bool, 256> seen{};
    for (const auto& f : frames) {
      for (ObjectId id : f.ObjectIds()) seen[id] = true;
    }
    for (int id = kMinObjectId; id <= kMaxObjectId; ++id) {
      if (seen[id]) objects.push_back({static_cast<ObjectId>(id), "", ""});
    }
  }
  return MaskSequence(std::move(frames), m.fps, std::move(objects), m.annotation);
}

MaskSequence LoadSequence(const fs::path& manifest_path) {
  return LoadSequence(ReadManifest(manifest_path));
}

std::vector<ColorImage> LoadImages(const Manifest& m) {
  std::vector<ColorImage> images;
  images.reserve(m.images.size());
  for (size_t i = 0; i < m.images.size(); ++i) {
    images.push_back(LoadColorImage(m.ImagePath(i)));
  }
  for (size_t i = 1; i < images.size(); ++i) {
    if (images[i].width != images[0].width ||
        images[i].height != images[0].height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "image " + std::to_string(i) + " differs in size from image 0");
    }
  }
  return images;
}

fs::path SaveSequence(const MaskSequence& seq, const fs::path& directory,
                      const std::vector<ColorImage>* images) {
  fs::create_directories(directory);
  Manifest m;
  m.directory = directory;
  m.fps = seq.fps();
  m.objects = seq.objects();
  m.annotation = seq.annotation();
  char name[64];
  for (size_t i = 0; i < seq.length(); ++i) {
    std::snprintf(name, sizeof(name), "mask_%04zu.png", i);
    m.frames.emplace_back(name);
    SaveFrame(seq.frame(i), directory / name);
  }
  if (images != nullptr) {
    for (size_t i = 0; i < images->size(); ++i) {
      std::snprintf(name, sizeof(name), "image_%04zu.png", i);
      m.images.emplace_back(name);
      SaveColorImage((*images)[i], directory / name);
    }
  }
  const fs::path manifest_path = directory / "manifest.json";
  WriteManifest(m, manifest_path);
  return manifest_path;
}

std::vector<fs::path> ExpandManifestArgs(const std::vector<std::string>& args) {
  std::vector<fs::path> out;
  for (const auto& arg : args) {
    const fs::path p(arg);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().filename() == "manifest.json") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      if (found.empty()) {
        throw Error(ErrorCode::kMissingFile,
                    "no manifest.json under " + p.string());
      }
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace revos
