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
// Study orchestration: candidate evaluation against a baseline, the
// optional external encoder bridge, and the parameter search that drives
// the optimizer over a transform family.
//
// With encoding off the baseline is (ref vs ref); with encoding on it is
// (ref vs decode(encode(ref))), so deltas always isolate the transform.

#ifndef VQLAB_HARNESS_HPP_
#define VQLAB_HARNESS_HPP_

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vqlab/enhance.hpp"
#include "vqlab/errors.hpp"
#include "vqlab/media_io.hpp"
#include "vqlab/metrics.hpp"
#include "vqlab/nsga2.hpp"
#include "vqlab/report.hpp"
#include "vqlab/utils.hpp"
#include "vqlab/version.hpp"
#include "vqlab/vmaf_model.hpp"

namespace vqlab {

// Search bounds per transform family; chosen to enclose the operating
// points reported for the study sequences.
inline Bounds family_bounds(const std::string& family) {
  if (family == "unsharp") {
    return Bounds{{{0.5, 10.0}, {0.0, 1.0}}};
  }
  if (family == "histeq") {
    return Bounds{{{0.001, 0.05}}};
  }
  throw ConfigError("unknown transform family: " + family);
}

inline TransformParams genes_to_params(const std::string& family,
                                       const std::vector<double>& genes) {
  if (family == "unsharp") {
    if (genes.size() != 2) throw ShapeError("unsharp genome needs 2 genes");
    return UnsharpMaskParams{genes[0], genes[1]};
  }
  if (family == "histeq") {
    if (genes.size() != 1) throw ShapeError("histeq genome needs 1 gene");
    return HistEqParams{8, genes[0]};
  }
  throw ConfigError("unknown transform family: " + family);
}

// Keeps frames 0, k, 2k, ... — the evaluation-cost control for searches.
inline Clip subsample_clip(const Clip& clip, int every_kth) {
  if (every_kth <= 1) return clip;
  Clip out;
  out.meta = clip.meta;
  for (std::size_t i = 0; i < clip.frames.size(); i += every_kth) {
    out.frames.push_back(clip.frames[i]);
  }
  return out;
}

namespace detail {

inline std::string substitute_placeholders(const std::string& tpl,
                                           const std::string& input,
                                           const std::string& output,
                                           std::optional<std::int64_t> bitrate) {
  std::string cmd = tpl;
  auto replace_all = [&cmd](const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = cmd.find(key, pos)) != std::string::npos) {
      cmd.replace(pos, key.size(), value);
      pos += value.size();
    }
  };
  replace_all("{input}", input);
  replace_all("{output}", output);
  if (bitrate) replace_all("{bitrate}", std::to_string(*bitrate));
  return cmd;
}

inline void require_placeholders(const std::string& tpl, const char* what) {
  if (tpl.find("{input}") == std::string::npos) {
    throw ConfigError(std::string(what) + " template lacks {input}");
  }
  if (tpl.find("{output}") == std::string::npos) {
    throw ConfigError(std::string(what) + " template lacks {output}");
  }
}

// Runs a shell command capturing combined stdout/stderr; returns the exit
// status and the captured text.
inline std::pair<int, std::string> run_command(const std::string& cmd) {
  const std::string wrapped = "(" + cmd + ") 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (pipe == nullptr) throw EncoderError("cannot spawn: " + cmd, "");
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = pclose(pipe);
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {exit_code, output};
}

inline std::filesystem::path make_temp_dir() {
  static std::atomic<std::uint64_t> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto dir = base / ("vqlab-" + std::to_string(::getpid()) + "-" +
                       std::to_string(counter.fetch_add(1)));
    std::error_code ec;
    if (std::filesystem::create_directory(dir, ec)) return dir;
  }
  throw WriteError("cannot create a temporary directory");
}

}  // namespace detail

// Encode-decode round trip through external tools. The clip goes out as
// Y4M, the command templates get {input}/{output}/{bitrate} substituted,
// and the decoded Y4M comes back as a Clip. Temp files are removed on
// success and kept on failure for inspection.
inline Clip encode_external(const Clip& clip, const RunConfig& cfg) {
  if (!cfg.encode_cmd || !cfg.decode_cmd) {
    throw ConfigError("encode/decode command templates are required");
  }
  detail::require_placeholders(*cfg.encode_cmd, "encode");
  detail::require_placeholders(*cfg.decode_cmd, "decode");

  const auto dir = detail::make_temp_dir();
  const std::string src = (dir / "in.y4m").string();
  const std::string packed = (dir / "encoded.bin").string();
  const std::string decoded = (dir / "out.y4m").string();
  save_clip(clip, src, MediaFormat::kY4m);

  const std::string encode_cmd = detail::substitute_placeholders(
      *cfg.encode_cmd, src, packed, cfg.target_bitrate);
  if (auto [status, log] = detail::run_command(encode_cmd); status != 0) {
    throw EncoderError("encoder exited with status " + std::to_string(status),
                       log);
  }
  const std::string decode_cmd = detail::substitute_placeholders(
      *cfg.decode_cmd, packed, decoded, cfg.target_bitrate);
  if (auto [status, log] = detail::run_command(decode_cmd); status != 0) {
    throw EncoderError("decoder exited with status " + std::to_string(status),
                       log);
  }
  Clip result = load_clip(decoded, MediaFormat::kY4m);
  if (result.meta.width != clip.meta.width ||
      result.meta.height != clip.meta.height ||
      result.frames.size() != clip.frames.size()) {
    throw EncoderError("decoded clip geometry does not match the input", "");
  }
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  return result;
}

// Applies the transform, optionally round-trips through the encoder, and
// scores VMAF/SSIM/PSNR against the reference. Deltas are relative to the
// baseline record when one is given.
inline EvalRecord evaluate_candidate(const Clip& ref, const TransformParams& params,
                                     const RunConfig& cfg, const VmafModel& model,
                                     const EvalRecord* baseline = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  Clip dist = apply_transform(ref, params);
  if (cfg.encoding_enabled()) dist = encode_external(dist, cfg);

  EvalRecord record;
  record.params = params;
  record.encoded = cfg.encoding_enabled();
  record.vmaf = score_clip_pair(ref, dist, model).pooled;
  std::vector<double> ssim_frames(ref.frames.size());
  std::vector<double> psnr_frames(ref.frames.size());
  for (std::size_t i = 0; i < ref.frames.size(); ++i) {
    ssim_frames[i] = ssim_frame(ref.frames[i], dist.frames[i]);
    psnr_frames[i] = psnr_frame(ref.frames[i], dist.frames[i]);
  }
  record.ssim = pool_mean(ssim_frames);
  record.psnr = pool_mean(psnr_frames);
  if (baseline != nullptr) {
    record.delta_vmaf = record.vmaf - baseline->vmaf;
    record.delta_ssim = record.ssim - baseline->ssim;
    record.delta_psnr = record.psnr - baseline->psnr;
  }
  record.timing_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

namespace detail {

inline void write_config_echo(const ParetoReport& report, const std::string& path) {
  const RunConfig& cfg = report.config;
  std::ostringstream out;
  out << "engine_version=" << kVersion << "\n";
  out << "engine_config=" << engine_config_string() << "\n";
  out << "engine_config_hash=" << report.engine_hash << "\n";
  out << "ref=" << cfg.ref_path << "\n";
  out << "family=" << cfg.family << "\n";
  out << "model=" << cfg.model_path << "\n";
  out << "encoding=" << (cfg.encoding_enabled() ? "on" : "off") << "\n";
  if (cfg.encoding_enabled()) {
    out << "encode_cmd=" << *cfg.encode_cmd << "\n";
    out << "decode_cmd=" << *cfg.decode_cmd << "\n";
    out << "bitrate=" << *cfg.target_bitrate << "\n";
  }
  out << "pop_size=" << cfg.optimizer.pop_size << "\n";
  out << "generations=" << cfg.optimizer.generations << "\n";
  out << "crossover_prob=" << fmt_fixed(cfg.optimizer.crossover_prob) << "\n";
  out << "mutation_prob="
      << (cfg.optimizer.mutation_prob > 0.0
              ? fmt_fixed(cfg.optimizer.mutation_prob)
              : std::string("1/n_genes"))
      << "\n";
  out << "eta_c=" << fmt_fixed(cfg.optimizer.eta_c) << "\n";
  out << "eta_m=" << fmt_fixed(cfg.optimizer.eta_m) << "\n";
  out << "seed=" << cfg.optimizer.seed << "\n";
  out << "subsample=" << cfg.subsample << "\n";
  out << "optimizer_settings=library-defaults-unless-overridden"
      << " (the study reports parameter limits only)\n";
  out << "chroma_assumption=4:2:0-by-default-carried-untouched\n";
  const Bounds bounds =
      cfg.bounds_override ? *cfg.bounds_override : family_bounds(cfg.family);
  for (std::size_t g = 0; g < bounds.size(); ++g) {
    out << "gene" << g << "_bounds=[" << fmt_fixed(bounds.genes[g].low) << ","
        << fmt_fixed(bounds.genes[g].high) << "]\n";
  }
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw WriteError("cannot open for writing: " + path);
  file << out.str();
  if (!file) throw WriteError("write failed: " + path);
}

}  // namespace detail

// Full study run: baseline, NSGA-II search over the family's parameters
// maximizing (dVMAF, dSSIM), report assembly and artifact emission.
inline ParetoReport run_search(const RunConfig& cfg) {
  cfg.validate();
  const VmafModel model = parse_model(cfg.model_path);
  const Clip full = load_clip(cfg.ref_path);
  const Clip ref = subsample_clip(full, cfg.subsample);

  ParetoReport report;
  report.config = cfg;
  report.engine_hash = engine_config_hash();

  RunConfig baseline_cfg = cfg;  // identity baseline shares the pipeline
  report.baseline =
      evaluate_candidate(ref, IdentityParams{}, baseline_cfg, model, nullptr);

  std::map<std::vector<std::int64_t>, std::size_t> record_index;
  const std::string family = cfg.family;

  BatchEvaluator evaluator =
      [&](const std::vector<std::vector<double>>& batch)
      -> std::vector<std::optional<std::array<double, 2>>> {
    std::vector<std::optional<EvalRecord>> results(batch.size());
    parallel_for_indexed(batch.size(), cfg.threads, [&](std::size_t i) {
      try {
        results[i] = evaluate_candidate(ref, genes_to_params(family, batch[i]),
                                        cfg, model, &report.baseline);
      } catch (const EncoderError&) {
        results[i] = std::nullopt;  // flagged worst; the search continues
      }
    });
    std::vector<std::optional<std::array<double, 2>>> objectives(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!results[i]) continue;
      const auto key = quantized_gene_key(batch[i]);
      if (record_index.find(key) == record_index.end()) {
        record_index[key] = report.records.size();
        report.records.push_back(*results[i]);
      }
      objectives[i] = std::array<double, 2>{-results[i]->delta_vmaf,
                                            -results[i]->delta_ssim};
    }
    return objectives;
  };

  const Bounds bounds =
      cfg.bounds_override ? *cfg.bounds_override : family_bounds(family);
  const ParetoFront front = evolve(evaluator, bounds, cfg.optimizer);

  for (const Individual& member : front.members) {
    const auto it = record_index.find(quantized_gene_key(member.genes));
    if (it != record_index.end()) report.front.push_back(it->second);
  }
  std::sort(report.front.begin(), report.front.end());
  report.front.erase(std::unique(report.front.begin(), report.front.end()),
                     report.front.end());

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    const std::filesystem::path dir(cfg.output_dir);
    emit_csv(report, (dir / "report.csv").string(), false);
    emit_csv(report, (dir / "front.csv").string(), true);
    emit_scatter(report, (dir / "scatter.svg").string());
    detail::write_config_echo(report, (dir / "config.echo").string());
  }
  return report;
}

}  // namespace vqlab

#endif  // VQLAB_HARNESS_HPP_
