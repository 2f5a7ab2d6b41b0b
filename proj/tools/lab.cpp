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
// lab: metric evaluation, comparison images, clip synthesis and the
// metric-gaming parameter search from the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqlab/harness.hpp"
#include "vqlab/media_io.hpp"
#include "vqlab/metrics.hpp"
#include "vqlab/report.hpp"
#include "vqlab/synthetic.hpp"
#include "vqlab/version.hpp"
#include "vqlab/vmaf_model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMedia = 3;
constexpr int kExitEncoder = 4;

struct RawMetaFlags {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::string chroma = "420";

  std::optional<vqlab::VideoMeta> to_meta() const {
    if (width == 0 && height == 0) return std::nullopt;
    vqlab::VideoMeta meta;
    meta.width = width;
    meta.height = height;
    meta.bit_depth = bit_depth;
    if (chroma == "420") meta.chroma_format = vqlab::ChromaFormat::k420;
    else if (chroma == "422") meta.chroma_format = vqlab::ChromaFormat::k422;
    else if (chroma == "444") meta.chroma_format = vqlab::ChromaFormat::k444;
    else if (chroma == "mono") meta.chroma_format = vqlab::ChromaFormat::kLumaOnly;
    else throw vqlab::ConfigError("unknown chroma format: " + chroma);
    return meta;
  }
};

void add_raw_meta_flags(CLI::App* cmd, RawMetaFlags* flags) {
  cmd->add_option("--width", flags->width, "Raw input width (enables raw mode)");
  cmd->add_option("--height", flags->height, "Raw input height");
  cmd->add_option("--bit-depth", flags->bit_depth, "Raw input bit depth (8|10)")
      ->check(CLI::IsMember({8, 10}));
  cmd->add_option("--chroma", flags->chroma, "Raw chroma format (420|422|444|mono)");
}

vqlab::Clip load_input(const std::string& path, const RawMetaFlags& flags) {
  const auto meta = flags.to_meta();
  if (meta) return vqlab::load_clip(path, vqlab::MediaFormat::kRaw, meta);
  return vqlab::load_clip(path);
}

int run(int argc, char** argv) {
  CLI::App app{"video quality metrics, enhancement operators and the "
               "VMAF-vs-SSIM parameter search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vqlab::kVersion));

  // search ------------------------------------------------------------
  auto* search = app.add_subcommand("search", "NSGA-II search for transform "
                                              "parameters raising VMAF");
  vqlab::RunConfig cfg;
  std::string encode_cmd, decode_cmd;
  std::int64_t bitrate = 0;
  search->add_option("--ref", cfg.ref_path, "Reference clip (Y4M)")->required();
  search->add_option("--family", cfg.family, "Transform family (unsharp|histeq)")
      ->required()
      ->check(CLI::IsMember({"unsharp", "histeq"}));
  search->add_option("--model", cfg.model_path, "Model file (JSON)")->required();
  search->add_option("--encode-cmd", encode_cmd,
                     "Encoder template with {input} {output} {bitrate}");
  search->add_option("--decode-cmd", decode_cmd,
                     "Decoder template with {input} {output}");
  search->add_option("--bitrate", bitrate, "Target bitrate in bits/second");
  search->add_option("--pop", cfg.optimizer.pop_size, "Population size");
  search->add_option("--gens", cfg.optimizer.generations, "Generations");
  search->add_option("--seed", cfg.optimizer.seed, "Random seed");
  search->add_option("--subsample", cfg.subsample, "Evaluate every k-th frame");
  search->add_option("--threads", cfg.threads, "Worker threads for evaluation");
  search->add_option("--out", cfg.output_dir, "Output directory")->required();

  // score -------------------------------------------------------------
  auto* score = app.add_subcommand("score", "One-shot metric report for a "
                                            "(reference, distorted) pair");
  std::string score_ref, score_dist, score_model;
  bool per_frame = false;
  RawMetaFlags score_raw;
  score->add_option("--ref", score_ref, "Reference clip")->required();
  score->add_option("--dist", score_dist, "Distorted clip")->required();
  score->add_option("--model", score_model, "Model file (JSON)")->required();
  score->add_flag("--per-frame", per_frame, "Also print per-frame scores");
  add_raw_meta_flags(score, &score_raw);

  // compare -----------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "Checkerboard composite and "
                                                "luma histograms for one frame");
  std::string cmp_ref, cmp_dist, cmp_out;
  int cmp_frame = 0;
  int cmp_tile = 32;
  compare->add_option("--ref", cmp_ref, "Reference clip")->required();
  compare->add_option("--dist", cmp_dist, "Distorted clip")->required();
  compare->add_option("--frame", cmp_frame, "Frame index");
  compare->add_option("--tile", cmp_tile, "Checkerboard tile size in pixels");
  compare->add_option("--out", cmp_out, "Output directory")->required();

  // synth ---------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Write a deterministic synthetic "
                                            "test clip");
  std::string synth_kind = "lowcontrast";
  std::string synth_out;
  int synth_frames = 16, synth_w = 192, synth_h = 108;
  std::uint64_t synth_seed = 0;
  synth->add_option("--kind", synth_kind, "lowcontrast|contrasted|texture")
      ->check(CLI::IsMember({"lowcontrast", "contrasted", "texture"}));
  synth->add_option("--frames", synth_frames, "Frame count");
  synth->add_option("--width", synth_w, "Width");
  synth->add_option("--height", synth_h, "Height");
  synth->add_option("--seed", synth_seed, "Generator seed (0 = kind default)");
  synth->add_option("--out", synth_out, "Output Y4M path")->required();

  // features ------------------------------------------------------------
  auto* features = app.add_subcommand(
      "features", "Per-frame elementary feature dump as CSV");
  std::string feat_ref, feat_dist, feat_csv;
  features->add_option("--ref", feat_ref, "Reference clip")->required();
  features->add_option("--dist", feat_dist, "Distorted clip")->required();
  features->add_option("--csv", feat_csv, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_status = app.exit(e);
    return cli_status == 0 ? kExitOk : kExitConfig;
  }

  if (search->parsed()) {
    if (!encode_cmd.empty()) cfg.encode_cmd = encode_cmd;
    if (!decode_cmd.empty()) cfg.decode_cmd = decode_cmd;
    if (bitrate > 0) cfg.target_bitrate = bitrate;
    const vqlab::ParetoReport report = vqlab::run_search(cfg);
    std::printf("baseline: vmaf=%s ssim=%s psnr=%s\n",
                vqlab::fmt_fixed(report.baseline.vmaf).c_str(),
                vqlab::fmt_fixed(report.baseline.ssim).c_str(),
                vqlab::fmt_fixed(report.baseline.psnr).c_str());
    std::printf("evaluations: %zu, front size: %zu\n", report.records.size(),
                report.front.size());
    for (std::size_t i : report.front) {
      const auto& r = report.records[i];
      std::printf("front: %s dvmaf=%s dssim=%s\n",
                  vqlab::transform_family(r.params).c_str(),
                  vqlab::fmt_fixed(r.delta_vmaf).c_str(),
                  vqlab::fmt_fixed(r.delta_ssim).c_str());
    }
    std::printf("artifacts written to %s\n", cfg.output_dir.c_str());
    return kExitOk;
  }

  if (score->parsed()) {
    const vqlab::Clip ref = load_input(score_ref, score_raw);
    const vqlab::Clip dist = load_input(score_dist, score_raw);
    const vqlab::VmafModel model = vqlab::parse_model(score_model);
    const auto features_seq = vqlab::extract_features(ref, dist);
    const vqlab::MetricScore vmaf = vqlab::score_features(features_seq, model);
    std::vector<double> ssim(ref.frames.size()), psnr(ref.frames.size());
    for (std::size_t i = 0; i < ref.frames.size(); ++i) {
      ssim[i] = vqlab::ssim_frame(ref.frames[i], dist.frames[i]);
      psnr[i] = vqlab::psnr_frame(ref.frames[i], dist.frames[i]);
    }
    const vqlab::SiTi siti = vqlab::si_ti(ref);
    std::printf("vmaf: %s\n", vqlab::fmt_fixed(vmaf.pooled).c_str());
    std::printf("ssim: %s\n", vqlab::fmt_fixed(vqlab::pool_mean(ssim)).c_str());
    std::printf("psnr: %s\n", vqlab::fmt_fixed(vqlab::pool_mean(psnr)).c_str());
    std::printf("si: %s\n", vqlab::fmt_fixed(siti.si).c_str());
    std::printf("ti: %s%s\n", vqlab::fmt_fixed(siti.ti).c_str(),
                siti.ti_valid ? "" : " (single frame)");
    if (per_frame) {
      for (std::size_t i = 0; i < ref.frames.size(); ++i) {
        std::printf("frame %zu: vmaf=%s ssim=%s psnr=%s\n", i,
                    vqlab::fmt_fixed(vmaf.per_frame[i]).c_str(),
                    vqlab::fmt_fixed(ssim[i]).c_str(),
                    vqlab::fmt_fixed(psnr[i]).c_str());
      }
    }
    return kExitOk;
  }

  if (compare->parsed()) {
    const vqlab::Clip ref = vqlab::load_clip(cmp_ref);
    const vqlab::Clip dist = vqlab::load_clip(cmp_dist);
    if (cmp_frame < 0 || cmp_frame >= static_cast<int>(ref.frames.size()) ||
        cmp_frame >= static_cast<int>(dist.frames.size())) {
      throw vqlab::ConfigError("frame index out of range");
    }
    std::filesystem::create_directories(cmp_out);
    const std::filesystem::path dir(cmp_out);
    vqlab::emit_checkerboard(ref.frames[cmp_frame], dist.frames[cmp_frame],
                             cmp_tile, (dir / "checkerboard.pgm").string());
    vqlab::emit_histogram(ref.frames[cmp_frame], (dir / "hist_ref").string());
    vqlab::emit_histogram(dist.frames[cmp_frame], (dir / "hist_dist").string());
    std::printf("comparison images written to %s\n", cmp_out.c_str());
    return kExitOk;
  }

  if (synth->parsed()) {
    vqlab::Clip clip;
    if (synth_kind == "lowcontrast") {
      clip = vqlab::make_low_contrast_clip(synth_frames, synth_w, synth_h,
                                           synth_seed ? synth_seed : 11);
    } else if (synth_kind == "contrasted") {
      clip = vqlab::make_contrasted_clip(synth_frames, synth_w, synth_h,
                                         synth_seed ? synth_seed : 23);
    } else {
      clip = vqlab::make_texture_clip(synth_frames, synth_w, synth_h, 25.0,
                                      synth_seed ? synth_seed : 7);
    }
    vqlab::save_clip(clip, synth_out, vqlab::MediaFormat::kY4m);
    std::printf("wrote %zu frames to %s\n", clip.frames.size(), synth_out.c_str());
    return kExitOk;
  }

  if (features->parsed()) {
    const vqlab::Clip ref = vqlab::load_clip(feat_ref);
    const vqlab::Clip dist = vqlab::load_clip(feat_dist);
    const auto rows = vqlab::extract_features(ref, dist);
    std::ostringstream csv;
    csv << "frame,vif_scale0,vif_scale1,vif_scale2,vif_scale3,dlm,motion\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      csv << i;
      for (const auto& name : vqlab::feature_field_names()) {
        csv << "," << vqlab::fmt_fixed(vqlab::feature_by_name(rows[i], name), 9);
      }
      csv << "\n";
    }
    if (feat_csv.empty()) {
      std::fputs(csv.str().c_str(), stdout);
    } else {
      std::ofstream out(feat_csv, std::ios::trunc);
      if (!out) throw vqlab::WriteError("cannot open for writing: " + feat_csv);
      out << csv.str();
    }
    return kExitOk;
  }

  return kExitConfig;
}

// One machine-readable error record on stderr, then the documented exit code.
int report_error(const char* kind, const std::string& message,
                 const std::string& diagnostics, int code) {
  nlohmann::json record;
  record["error"] = {{"kind", kind}, {"message", message}};
  if (!diagnostics.empty()) record["error"]["diagnostics"] = diagnostics;
  std::fprintf(stderr, "%s\n", record.dump().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vqlab::EncoderError& e) {
    return report_error("encoder", e.what(), e.diagnostics(), kExitEncoder);
  } catch (const vqlab::ConfigError& e) {
    return report_error("config", e.what(), "", kExitConfig);
  } catch (const vqlab::SchemaError& e) {
    return report_error("schema", e.what(), "", kExitConfig);
  } catch (const vqlab::Error& e) {
    return report_error("media", e.what(), "", kExitMedia);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), "", kExitMedia);
  }
}
