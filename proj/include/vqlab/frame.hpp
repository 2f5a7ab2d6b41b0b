// Copyright 2026 The vqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VQLAB_FRAME_HPP_
#define VQLAB_FRAME_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/image.hpp"

namespace vqlab {

struct Rational {
  std::int64_t num = 25;
  std::int64_t den = 1;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

enum class ChromaFormat { k420, k422, k444, kLumaOnly };

inline std::string chroma_format_name(ChromaFormat f) {
  switch (f) {
    case ChromaFormat::k420: return "420";
    case ChromaFormat::k422: return "422";
    case ChromaFormat::k444: return "444";
    case ChromaFormat::kLumaOnly: return "luma_only";
  }
  return "?";
}

struct VideoMeta {
  int width = 0;
  int height = 0;
  Rational frame_rate;
  int bit_depth = 8;
  ChromaFormat chroma_format = ChromaFormat::k420;

  int max_value() const { return (1 << bit_depth) - 1; }

  // Chroma plane geometry; {0, 0} for luma-only clips.
  std::pair<int, int> chroma_size() const {
    switch (chroma_format) {
      case ChromaFormat::k420: return {width / 2, height / 2};
      case ChromaFormat::k422: return {width / 2, height};
      case ChromaFormat::k444: return {width, height};
      case ChromaFormat::kLumaOnly: return {0, 0};
    }
    return {0, 0};
  }

  void validate() const {
    if (width <= 0 || height <= 0) {
      throw ConfigError("frame dimensions must be positive");
    }
    if (bit_depth != 8 && bit_depth != 10) {
      throw ConfigError("bit depth must be 8 or 10, got " +
                        std::to_string(bit_depth));
    }
    if (frame_rate.num <= 0 || frame_rate.den <= 0) {
      throw ConfigError("frame rate must be a positive rational");
    }
    if (chroma_format == ChromaFormat::k420 &&
        (width % 2 != 0 || height % 2 != 0)) {
      throw ConfigError("4:2:0 requires even width and height");
    }
    if (chroma_format == ChromaFormat::k422 && width % 2 != 0) {
      throw ConfigError("4:2:2 requires even width");
    }
  }

  friend bool operator==(const VideoMeta& a, const VideoMeta& b) {
    return a.width == b.width && a.height == b.height &&
           a.frame_rate == b.frame_rate && a.bit_depth == b.bit_depth &&
           a.chroma_format == b.chroma_format;
  }
};

struct Frame {
  PixelPlane luma;
  std::optional<PixelPlane> chroma_u;
  std::optional<PixelPlane> chroma_v;
  VideoMeta meta;

  int max_value() const { return meta.max_value(); }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.meta == b.meta && a.luma == b.luma && a.chroma_u == b.chroma_u &&
           a.chroma_v == b.chroma_v;
  }
};

// Immutable after construction; safe to share across threads.
struct Clip {
  VideoMeta meta;
  std::vector<Frame> frames;

  std::size_t frame_count() const { return frames.size(); }

  friend bool operator==(const Clip& a, const Clip& b) {
    return a.meta == b.meta && a.frames == b.frames;
  }
};

inline Frame make_frame(const VideoMeta& meta) {
  meta.validate();
  Frame f;
  f.meta = meta;
  f.luma = PixelPlane(meta.width, meta.height);
  auto [cw, ch] = meta.chroma_size();
  if (cw > 0 && ch > 0) {
    const auto neutral = static_cast<std::uint16_t>(1 << (meta.bit_depth - 1));
    f.chroma_u = PixelPlane(cw, ch, neutral);
    f.chroma_v = PixelPlane(cw, ch, neutral);
  }
  return f;
}

}  // namespace vqlab

#endif  // VQLAB_FRAME_HPP_
