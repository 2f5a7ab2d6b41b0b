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
//
// Y4M (YUV4MPEG2) and headerless planar YUV readers/writers.
//
// Y4M: "YUV4MPEG2" magic followed by space-separated W/H/F/I/A/C/X tokens
// and a newline; each frame is a "FRAME" line followed by planar Y-U-V
// payload. 10-bit samples are stored as 2 bytes little-endian. Luma-only
// clips are written as C444 with neutral gray chroma planes (Y4M payloads
// carry chroma; 4:4:4 imposes no parity constraints on the dimensions).

#ifndef VQLAB_MEDIA_IO_HPP_
#define VQLAB_MEDIA_IO_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/frame.hpp"

namespace vqlab {

enum class MediaFormat { kY4m, kRaw };

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  in.seekg(0, std::ios::end);
  const std::streamoff len = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(len));
  if (len > 0) in.read(reinterpret_cast<char*>(buf.data()), len);
  if (!in) throw ConfigError("cannot read file: " + path);
  return buf;
}

inline std::size_t plane_bytes(int w, int h, int bit_depth) {
  return static_cast<std::size_t>(w) * h * (bit_depth > 8 ? 2 : 1);
}

inline std::size_t frame_bytes(const VideoMeta& meta) {
  auto [cw, ch] = meta.chroma_size();
  return plane_bytes(meta.width, meta.height, meta.bit_depth) +
         2 * plane_bytes(cw, ch, meta.bit_depth);
}

inline PixelPlane read_plane(const std::vector<std::uint8_t>& buf,
                             std::size_t& pos, int w, int h, int bit_depth) {
  PixelPlane plane(w, h);
  const int max_value = (1 << bit_depth) - 1;
  if (bit_depth == 8) {
    for (std::size_t i = 0; i < plane.size(); ++i) {
      plane.samples()[i] = buf[pos++];
    }
  } else {
    for (std::size_t i = 0; i < plane.size(); ++i) {
      const std::uint16_t v =
          static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
      if (v > max_value) {
        throw ParseError("sample value " + std::to_string(v) +
                             " exceeds bit depth " + std::to_string(bit_depth),
                         pos);
      }
      plane.samples()[i] = v;
      pos += 2;
    }
  }
  return plane;
}

inline void write_plane(std::ofstream& out, const PixelPlane& plane,
                        int bit_depth) {
  if (bit_depth == 8) {
    std::vector<std::uint8_t> row(plane.size());
    for (std::size_t i = 0; i < plane.size(); ++i) {
      row[i] = static_cast<std::uint8_t>(plane.samples()[i]);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  } else {
    std::vector<std::uint8_t> row(plane.size() * 2);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      row[2 * i] = static_cast<std::uint8_t>(plane.samples()[i] & 0xff);
      row[2 * i + 1] = static_cast<std::uint8_t>(plane.samples()[i] >> 8);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size()));
  }
}

struct ColorTag {
  ChromaFormat format;
  int bit_depth;
};

inline std::optional<ColorTag> parse_color_tag(const std::string& tag) {
  if (tag == "420" || tag == "420jpeg" || tag == "420mpeg2" ||
      tag == "420paldv") {
    return ColorTag{ChromaFormat::k420, 8};
  }
  if (tag == "422") return ColorTag{ChromaFormat::k422, 8};
  if (tag == "444") return ColorTag{ChromaFormat::k444, 8};
  if (tag == "mono") return ColorTag{ChromaFormat::kLumaOnly, 8};
  if (tag == "420p10") return ColorTag{ChromaFormat::k420, 10};
  if (tag == "422p10") return ColorTag{ChromaFormat::k422, 10};
  if (tag == "444p10") return ColorTag{ChromaFormat::k444, 10};
  if (tag == "mono10") return ColorTag{ChromaFormat::kLumaOnly, 10};
  return std::nullopt;
}

inline std::string color_tag_for(const VideoMeta& meta) {
  std::string tag;
  switch (meta.chroma_format) {
    case ChromaFormat::k420: tag = "420"; break;
    case ChromaFormat::k422: tag = "422"; break;
    case ChromaFormat::k444: tag = "444"; break;
    case ChromaFormat::kLumaOnly: tag = "444"; break;  // neutral chroma
  }
  if (meta.bit_depth == 10) tag += "p10";
  return tag;
}

inline std::int64_t parse_int_token(const std::string& text, std::size_t offset) {
  if (text.empty()) throw ParseError("empty numeric field", offset);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad numeric field '" + text + "'", offset);
  }
  if (used != text.size()) {
    throw ParseError("bad numeric field '" + text + "'", offset);
  }
  return v;
}

inline Clip load_y4m(const std::vector<std::uint8_t>& buf) {
  std::size_t pos = 0;
  const std::string magic = "YUV4MPEG2";
  if (buf.size() < magic.size() ||
      !std::equal(magic.begin(), magic.end(), buf.begin())) {
    throw ParseError("missing YUV4MPEG2 magic", 0);
  }
  std::size_t header_end = magic.size();
  while (header_end < buf.size() && buf[header_end] != '\n') ++header_end;
  if (header_end >= buf.size()) {
    throw ParseError("unterminated stream header", buf.size());
  }

  VideoMeta meta;
  meta.chroma_format = ChromaFormat::k420;
  meta.bit_depth = 8;
  bool have_width = false;
  bool have_height = false;

  pos = magic.size();
  while (pos < header_end) {
    if (buf[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t token_start = pos;
    while (pos < header_end && buf[pos] != ' ') ++pos;
    const std::string token(buf.begin() + token_start, buf.begin() + pos);
    const char key = token[0];
    const std::string value = token.substr(1);
    switch (key) {
      case 'W':
        meta.width = static_cast<int>(parse_int_token(value, token_start));
        have_width = true;
        break;
      case 'H':
        meta.height = static_cast<int>(parse_int_token(value, token_start));
        have_height = true;
        break;
      case 'F': {
        const std::size_t colon = value.find(':');
        if (colon == std::string::npos) {
          throw ParseError("frame rate must be num:den", token_start);
        }
        meta.frame_rate.num = parse_int_token(value.substr(0, colon), token_start);
        meta.frame_rate.den = parse_int_token(value.substr(colon + 1), token_start);
        break;
      }
      case 'I':
        if (value != "p") {
          throw UnsupportedFormat("interlaced Y4M input is not supported (I" +
                                  value + ")");
        }
        break;
      case 'A':
        break;  // pixel aspect ratio does not affect samples
      case 'C': {
        const auto tag = parse_color_tag(value);
        if (!tag) throw UnsupportedFormat("unsupported Y4M color tag C" + value);
        meta.chroma_format = tag->format;
        meta.bit_depth = tag->bit_depth;
        break;
      }
      case 'X':
        break;  // comment
      default:
        throw ParseError(std::string("unknown header token '") + key + "'",
                         token_start);
    }
  }
  if (!have_width || !have_height) {
    throw ParseError("header lacks W/H", header_end);
  }
  try {
    meta.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("invalid stream geometry: ") + e.what(),
                     header_end);
  }

  Clip clip;
  clip.meta = meta;
  auto [cw, ch] = meta.chroma_size();
  pos = header_end + 1;
  while (pos < buf.size()) {
    const std::string frame_magic = "FRAME";
    if (buf.size() - pos < frame_magic.size() ||
        !std::equal(frame_magic.begin(), frame_magic.end(), buf.begin() + pos)) {
      throw ParseError("expected FRAME marker", pos);
    }
    std::size_t line_end = pos + frame_magic.size();
    while (line_end < buf.size() && buf[line_end] != '\n') ++line_end;
    if (line_end >= buf.size()) {
      throw ParseError("unterminated FRAME header", buf.size());
    }
    pos = line_end + 1;
    if (buf.size() - pos < frame_bytes(meta)) {
      throw ParseError("truncated frame payload", pos);
    }
    Frame frame;
    frame.meta = meta;
    frame.luma = read_plane(buf, pos, meta.width, meta.height, meta.bit_depth);
    if (cw > 0 && ch > 0) {
      frame.chroma_u = read_plane(buf, pos, cw, ch, meta.bit_depth);
      frame.chroma_v = read_plane(buf, pos, cw, ch, meta.bit_depth);
    }
    clip.frames.push_back(std::move(frame));
  }
  if (clip.frames.empty()) throw ParseError("stream contains no frames", pos);
  return clip;
}

inline Clip load_raw(const std::vector<std::uint8_t>& buf,
                     const VideoMeta& meta) {
  meta.validate();
  const std::size_t per_frame = frame_bytes(meta);
  if (buf.empty() || buf.size() % per_frame != 0) {
    throw SizeError("raw file size is not a multiple of the frame size",
                    per_frame, buf.size());
  }
  Clip clip;
  clip.meta = meta;
  auto [cw, ch] = meta.chroma_size();
  std::size_t pos = 0;
  while (pos < buf.size()) {
    Frame frame;
    frame.meta = meta;
    frame.luma = read_plane(buf, pos, meta.width, meta.height, meta.bit_depth);
    if (cw > 0 && ch > 0) {
      frame.chroma_u = read_plane(buf, pos, cw, ch, meta.bit_depth);
      frame.chroma_v = read_plane(buf, pos, cw, ch, meta.bit_depth);
    }
    clip.frames.push_back(std::move(frame));
  }
  return clip;
}

}  // namespace detail

inline Clip load_clip(const std::string& path,
                      std::optional<MediaFormat> format_hint = std::nullopt,
                      std::optional<VideoMeta> raw_meta = std::nullopt) {
  const auto buf = detail::read_file_bytes(path);
  MediaFormat format;
  if (format_hint) {
    format = *format_hint;
  } else {
    const std::string magic = "YUV4MPEG2";
    const bool is_y4m = buf.size() >= magic.size() &&
                        std::equal(magic.begin(), magic.end(), buf.begin());
    format = is_y4m ? MediaFormat::kY4m : MediaFormat::kRaw;
  }
  if (format == MediaFormat::kY4m) return detail::load_y4m(buf);
  if (!raw_meta) {
    throw ConfigError("raw input requires explicit video metadata");
  }
  return detail::load_raw(buf, *raw_meta);
}

inline void save_clip(const Clip& clip, const std::string& path,
                      MediaFormat format) {
  if (clip.frames.empty()) throw ConfigError("clip has no frames");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path);
  const VideoMeta& meta = clip.meta;
  if (format == MediaFormat::kY4m) {
    char header[128];
    std::snprintf(header, sizeof(header), "YUV4MPEG2 W%d H%d F%lld:%lld Ip A1:1 C%s\n",
                  meta.width, meta.height,
                  static_cast<long long>(meta.frame_rate.num),
                  static_cast<long long>(meta.frame_rate.den),
                  detail::color_tag_for(meta).c_str());
    out << header;
  }
  const bool synth_chroma = format == MediaFormat::kY4m &&
                            meta.chroma_format == ChromaFormat::kLumaOnly;
  const auto neutral = static_cast<std::uint16_t>(1 << (meta.bit_depth - 1));
  const PixelPlane neutral_plane =
      synth_chroma ? PixelPlane(meta.width, meta.height, neutral) : PixelPlane();
  for (const Frame& frame : clip.frames) {
    if (format == MediaFormat::kY4m) out << "FRAME\n";
    detail::write_plane(out, frame.luma, meta.bit_depth);
    if (frame.chroma_u && frame.chroma_v) {
      detail::write_plane(out, *frame.chroma_u, meta.bit_depth);
      detail::write_plane(out, *frame.chroma_v, meta.bit_depth);
    } else if (synth_chroma) {
      detail::write_plane(out, neutral_plane, meta.bit_depth);
      detail::write_plane(out, neutral_plane, meta.bit_depth);
    }
  }
  out.flush();
  if (!out) throw WriteError("write failed: " + path);
}

}  // namespace vqlab

#endif  // VQLAB_MEDIA_IO_HPP_
