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
// Search run records and report artifacts: CSV tables, the delta scatter
// plot (SVG), checkerboard composites (PGM) and luma histograms (CSV+SVG).
// All emitters format numbers with fixed precision so equal inputs yield
// byte-identical files.

#ifndef VQLAB_REPORT_HPP_
#define VQLAB_REPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vqlab/enhance.hpp"
#include "vqlab/errors.hpp"
#include "vqlab/frame.hpp"
#include "vqlab/nsga2.hpp"

namespace vqlab {

// One evaluated candidate. Wall-clock timing is kept in memory for logs but
// never serialized, so reports stay byte-reproducible.
struct EvalRecord {
  TransformParams params;
  double vmaf = 0.0;
  double ssim = 0.0;
  double psnr = 0.0;
  double delta_vmaf = 0.0;
  double delta_ssim = 0.0;
  double delta_psnr = 0.0;
  bool encoded = false;
  double timing_seconds = 0.0;
};

struct RunConfig {
  std::string ref_path;
  std::string family = "unsharp";  // "unsharp" | "histeq"
  std::string model_path;
  std::optional<std::string> encode_cmd;
  std::optional<std::string> decode_cmd;
  std::optional<std::int64_t> target_bitrate;
  NsgaConfig optimizer;
  std::optional<Bounds> bounds_override;
  int subsample = 1;
  int threads = 1;
  std::string output_dir;

  bool encoding_enabled() const { return encode_cmd.has_value(); }

  void validate() const {
    if (family != "unsharp" && family != "histeq") {
      throw ConfigError("unknown transform family: " + family);
    }
    if (subsample < 1) throw ConfigError("subsample must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (encoding_enabled()) {
      if (!decode_cmd) throw ConfigError("encoding requires a decode command");
      if (!target_bitrate) throw ConfigError("encoding requires a bitrate");
      if (*target_bitrate <= 0) throw ConfigError("bitrate must be positive");
    } else if (target_bitrate) {
      throw ConfigError("bitrate given but encoding is disabled");
    }
  }
};

struct ParetoReport {
  EvalRecord baseline;
  std::vector<EvalRecord> records;        // every unique evaluation, in order
  std::vector<std::size_t> front;         // indices into records
  RunConfig config;
  std::string engine_hash;
};

// ---------------------------------------------------------------------------
// formatting helpers

// Fixed 6-decimal rendering; negative zero is normalized so equal values
// always produce equal bytes.
inline std::string fmt_fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  if (!s.empty() && s[0] == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string transform_params_csv(const TransformParams& params) {
  if (const auto* u = std::get_if<UnsharpMaskParams>(&params)) {
    return "unsharp," + fmt_fixed(u->radius) + "," + fmt_fixed(u->amount) + ",,";
  }
  if (const auto* e = std::get_if<HistEqParams>(&params)) {
    return "histeq,,," + std::to_string(e->kernel_size) + "," +
           fmt_fixed(e->clip_limit);
  }
  return "identity,,,,";
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kReportCsvHeader =
    "family,radius,amount,kernel_size,clip_limit,vmaf,ssim,psnr,"
    "delta_vmaf,delta_ssim,delta_psnr,encoded,on_front";

inline std::string eval_record_csv(const EvalRecord& r, bool on_front) {
  std::ostringstream row;
  row << transform_params_csv(r.params) << "," << fmt_fixed(r.vmaf) << ","
      << fmt_fixed(r.ssim) << "," << fmt_fixed(r.psnr) << ","
      << fmt_fixed(r.delta_vmaf) << "," << fmt_fixed(r.delta_ssim) << ","
      << fmt_fixed(r.delta_psnr) << "," << (r.encoded ? 1 : 0) << ","
      << (on_front ? 1 : 0);
  return row.str();
}

// One row per record, baseline first; front_only restricts the body to
// Pareto members (the baseline row is kept as the reference point).
inline void emit_csv(const ParetoReport& report, const std::string& path,
                     bool front_only = false) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path);
  std::vector<bool> on_front(report.records.size(), false);
  for (std::size_t i : report.front) on_front[i] = true;
  out << kReportCsvHeader << "\n";
  out << eval_record_csv(report.baseline, false) << "\n";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (front_only && !on_front[i]) continue;
    out << eval_record_csv(report.records[i], on_front[i]) << "\n";
  }
  if (!out) throw WriteError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// scatter plot

// Delta scatter in the style of the study plots: x = dSSIM, y = dVMAF,
// origin axes drawn, circles for unsharp and squares for histeq, Pareto
// members filled. Every marker carries class "pt".
inline void emit_scatter(const ParetoReport& report, const std::string& path) {
  const int width = 640;
  const int height = 480;
  const double margin = 56.0;

  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  auto include = [&](double x, double y) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  };
  include(report.baseline.delta_ssim, report.baseline.delta_vmaf);
  for (const auto& r : report.records) include(r.delta_ssim, r.delta_vmaf);
  const double pad_x = (max_x - min_x) * 0.1 + 1e-4;
  const double pad_y = (max_y - min_y) * 0.1 + 1e-3;
  min_x -= pad_x;
  max_x += pad_x;
  min_y -= pad_y;
  max_y += pad_y;

  auto sx = [&](double x) {
    return margin + (x - min_x) / (max_x - min_x) * (width - 2.0 * margin);
  };
  auto sy = [&](double y) {
    return height - margin - (y - min_y) / (max_y - min_y) * (height - 2.0 * margin);
  };

  std::vector<bool> on_front(report.records.size(), false);
  for (std::size_t i : report.front) on_front[i] = true;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // origin axes
  svg << "<line x1=\"" << fmt_fixed(sx(min_x), 2) << "\" y1=\""
      << fmt_fixed(sy(0), 2) << "\" x2=\"" << fmt_fixed(sx(max_x), 2)
      << "\" y2=\"" << fmt_fixed(sy(0), 2)
      << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << fmt_fixed(sx(0), 2) << "\" y1=\""
      << fmt_fixed(sy(min_y), 2) << "\" x2=\"" << fmt_fixed(sx(0), 2)
      << "\" y2=\"" << fmt_fixed(sy(max_y), 2)
      << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">delta SSIM</text>\n";
  svg << "<text x=\"16\" y=\"" << height / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << height / 2 << ")\">delta VMAF</text>\n";

  auto marker = [&](const EvalRecord& r, bool front) {
    const std::string fill = front ? "#d62728" : "none";
    const std::string stroke = front ? "#d62728" : "#1f77b4";
    const double cx = sx(r.delta_ssim);
    const double cy = sy(r.delta_vmaf);
    if (transform_family(r.params) == "histeq") {
      svg << "<rect class=\"pt\" x=\"" << fmt_fixed(cx - 4, 2) << "\" y=\""
          << fmt_fixed(cy - 4, 2)
          << "\" width=\"8\" height=\"8\" fill=\"" << fill << "\" stroke=\""
          << stroke << "\"/>\n";
    } else {
      svg << "<circle class=\"pt\" cx=\"" << fmt_fixed(cx, 2) << "\" cy=\""
          << fmt_fixed(cy, 2) << "\" r=\"4\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\"/>\n";
    }
  };
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (!on_front[i]) marker(report.records[i], false);
  }
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (on_front[i]) marker(report.records[i], true);
  }
  if (report.records.empty()) marker(report.baseline, false);
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path);
  out << svg.str();
  if (!out) throw WriteError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// comparison images

// Alternating tile composite of two frames, written as a binary PGM
// (16-bit samples are big-endian per the PNM convention). Tiles with even
// (bx + by) come from ref.
inline void emit_checkerboard(const Frame& ref_frame, const Frame& dist_frame,
                              int tile, const std::string& path) {
  if (!ref_frame.luma.same_shape(dist_frame.luma)) {
    throw ShapeError("checkerboard frames differ in shape");
  }
  if (tile < 1) throw ConfigError("tile size must be >= 1");
  const int w = ref_frame.luma.width();
  const int h = ref_frame.luma.height();
  const int max_value = ref_frame.max_value();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path);
  out << "P5\n" << w << " " << h << "\n" << max_value << "\n";
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool use_ref = ((x / tile) + (y / tile)) % 2 == 0;
      const std::uint16_t v =
          use_ref ? ref_frame.luma.at(y, x) : dist_frame.luma.at(y, x);
      if (max_value > 255) {
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xff));
      } else {
        out.put(static_cast<char>(v));
      }
    }
  }
  if (!out) throw WriteError("write failed: " + path);
}

inline std::vector<std::int64_t> luma_histogram(const Frame& frame) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(frame.max_value()) + 1,
                                   0);
  for (const auto v : frame.luma.samples()) ++counts[v];
  return counts;
}

// Luma histogram written as "<stem>.csv" (value,count rows) and
// "<stem>.svg" (bar chart).
inline void emit_histogram(const Frame& frame, const std::string& path_stem) {
  const auto counts = luma_histogram(frame);
  {
    std::ofstream out(path_stem + ".csv", std::ios::trunc);
    if (!out) throw WriteError("cannot open for writing: " + path_stem + ".csv");
    out << "value,count\n";
    for (std::size_t v = 0; v < counts.size(); ++v) {
      out << v << "," << counts[v] << "\n";
    }
    if (!out) throw WriteError("write failed: " + path_stem + ".csv");
  }
  const int width = 640;
  const int height = 360;
  const double margin = 24.0;
  std::int64_t peak = 1;
  for (auto c : counts) peak = std::max(peak, c);
  const double bar_w = (width - 2.0 * margin) / static_cast<double>(counts.size());
  std::ofstream out(path_stem + ".svg", std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path_stem + ".svg");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    const double bh =
        (height - 2.0 * margin) * static_cast<double>(counts[v]) / peak;
    out << "<rect x=\"" << fmt_fixed(margin + bar_w * v, 2) << "\" y=\""
        << fmt_fixed(height - margin - bh, 2) << "\" width=\""
        << fmt_fixed(std::max(bar_w, 0.5), 2) << "\" height=\""
        << fmt_fixed(bh, 2) << "\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw WriteError("write failed: " + path_stem + ".svg");
}

}  // namespace vqlab

#endif  // VQLAB_REPORT_HPP_
