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
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. Run from anywhere; the
// bundled clips and model are located relative to the source tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vqlab/harness.hpp"
#include "vqlab/media_io.hpp"
#include "vqlab/synthetic.hpp"

using namespace vqlab;

namespace {

const std::string kSourceDir = VQLAB_SOURCE_DIR;
const std::string kModelPath = kSourceDir + "/data/models/desk.json";
const std::string kLowContrastClip = kSourceDir + "/data/clips/lowcontrast.y4m";
const std::string kContrastedClip = kSourceDir + "/data/clips/contrasted.y4m";

std::filesystem::path work_dir(const std::string& name) {
  const auto dir =
      std::filesystem::temp_directory_path() / "vqlab-acceptance" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

// --- criterion 1 -----------------------------------------------------------

bool criterion_identity(Check& check) {
  SplitMix64 rng(1001);
  for (int i = 0; i < 20; ++i) {
    const int w = 32 + 2 * static_cast<int>(rng.next_index(17));
    const int h = 32 + 2 * static_cast<int>(rng.next_index(17));
    const int frames = 2 + static_cast<int>(rng.next_index(2));
    Clip clip;
    switch (i % 4) {
      case 0: clip = make_texture_clip(frames, w, h, 10.0 + 30.0 * rng.next_double(),
                                       rng.next_u64()); break;
      case 1: clip = make_low_contrast_clip(frames, w, h, rng.next_u64()); break;
      case 2: clip = make_contrasted_clip(frames, w, h, rng.next_u64()); break;
      default:
        clip = make_texture_clip(1, w, h, 25.0, rng.next_u64());
        clip.frames.assign(frames, clip.frames[0]);  // static clip
        break;
    }
    const auto features = extract_features(clip, clip);
    for (std::size_t f = 0; f < features.size(); ++f) {
      const FeatureVector& fv = features[f];
      for (double v : {fv.vif_scale0, fv.vif_scale1, fv.vif_scale2, fv.vif_scale3}) {
        check.require(std::abs(v - 1.0) <= 1e-6, "vif != 1 on identity pair");
      }
      check.require(std::abs(fv.dlm - 1.0) <= 1e-6, "dlm != 1 on identity pair");
      if (f == 0) check.require(fv.motion == 0.0, "first-frame motion != 0");
      if (i % 4 == 3) check.require(fv.motion == 0.0, "static-clip motion != 0");
    }
    for (const Frame& frame : clip.frames) {
      check.require(ssim_frame(frame, frame) == 1.0, "ssim != 1 on identity");
      check.require(psnr_frame(frame, frame) == 100.0, "psnr != cap on identity");
    }
  }
  return check.ok;
}

// --- criterion 2 -----------------------------------------------------------

bool criterion_oracles(Check& check) {
  SplitMix64 rng(2002);

  for (int trial = 0; trial < 100; ++trial) {  // gaussian_blur
    const int w = 8 + static_cast<int>(rng.next_index(25));
    const int h = 8 + static_cast<int>(rng.next_index(25));
    const RealPlane plane = oracle::random_plane(w, h, rng);
    const double sigma = 0.4 + 2.6 * rng.next_double();
    const RealPlane fast = gaussian_blur(plane, sigma);
    const RealPlane slow = oracle::gaussian_blur(plane, sigma);
    for (std::size_t i = 0; i < fast.size(); ++i) {
      check.require(std::abs(fast.samples()[i] - slow.samples()[i]) <= 1e-8,
                    "gaussian_blur disagrees with the oracle");
    }
  }

  for (int trial = 0; trial < 100; ++trial) {  // vif_scale
    const RealPlane ref = oracle::random_texture(32, 32, rng, 20.0 + 20.0 * rng.next_double());
    RealPlane dist;
    if (trial % 3 == 0) {
      dist = oracle::random_texture(32, 32, rng);
    } else {
      dist = gaussian_blur(ref, 0.5 + 2.0 * rng.next_double());
    }
    const int scale = static_cast<int>(rng.next_index(2));
    const double fast = vif_scale(ref, dist, scale).value;
    const double slow = oracle::vif_scale(ref, dist, scale);
    check.require(std::abs(fast - slow) <= 1e-8, "vif disagrees with the oracle");
  }

  for (int trial = 0; trial < 100; ++trial) {  // dlm
    const int n = 16 + 2 * static_cast<int>(rng.next_index(9));
    const RealPlane ref = oracle::random_texture(n, n, rng);
    const RealPlane dist = trial % 3 == 0
                               ? oracle::random_texture(n, n, rng)
                               : gaussian_blur(ref, 0.4 + 1.6 * rng.next_double());
    const double fast = dlm(ref, dist).value;
    const double slow = oracle::dlm(ref, dist);
    check.require(std::abs(fast - slow) <= 1e-8, "dlm disagrees with the oracle");
  }

  for (int trial = 0; trial < 100; ++trial) {  // unsharp_mask
    VideoMeta meta;
    meta.width = 12 + static_cast<int>(rng.next_index(13));
    meta.height = 12 + static_cast<int>(rng.next_index(13));
    meta.chroma_format = ChromaFormat::kLumaOnly;
    Frame f = make_frame(meta);
    for (auto& v : f.luma.samples()) {
      v = static_cast<std::uint16_t>(rng.next_index(256));
    }
    const double radius = 0.5 + 4.0 * rng.next_double();
    const double amount = rng.next_double();
    check.require(unsharp_mask(f, radius, amount).luma ==
                      oracle::unsharp(f, radius, amount).luma,
                  "unsharp disagrees with the oracle");
  }

  for (int trial = 0; trial < 100; ++trial) {  // svr_predict
    const std::size_t n_features = 1 + rng.next_index(8);
    const std::size_t n_sv = 1 + rng.next_index(8);
    VmafModel m;
    m.feature_names.assign(n_features, "dlm");
    m.norm.assign(n_features, FeatureNorm{});
    m.gamma = 0.05 + 2.0 * rng.next_double();
    m.bias = rng.next_double();
    for (std::size_t i = 0; i < n_sv; ++i) {
      std::vector<double> sv(n_features);
      for (double& v : sv) v = 2.0 * rng.next_double() - 1.0;
      m.support_vectors.push_back(sv);
      m.dual_coefs.push_back(2.0 * rng.next_double() - 1.0);
    }
    std::vector<double> x(n_features);
    for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
    const double fast = svr_predict(x, m);
    const double slow = oracle::svr_predict(x, m.support_vectors, m.dual_coefs,
                                            m.gamma, m.bias);
    check.require(std::abs(fast - slow) <= 1e-12,
                  "svr_predict disagrees with the oracle");
  }

  for (int trial = 0; trial < 100; ++trial) {  // fast_nondominated_sort
    const std::size_t n = 2 + rng.next_index(40);
    std::vector<std::vector<double>> objectives(n);
    for (auto& o : objectives) {
      o = {static_cast<double>(rng.next_index(6)),
           static_cast<double>(rng.next_index(6))};
    }
    std::vector<Individual> pop(n);
    for (std::size_t i = 0; i < n; ++i) pop[i].objectives = objectives[i];
    const auto fronts = fast_nondominated_sort(pop);
    const auto expected = oracle::nondominated_fronts(objectives);
    check.require(fronts.size() == expected.size(), "front count mismatch");
    if (fronts.size() == expected.size()) {
      for (std::size_t f = 0; f < fronts.size(); ++f) {
        auto a = fronts[f];
        auto b = expected[f];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        check.require(a == b, "front membership mismatch");
      }
    }
  }
  return check.ok;
}

// --- criterion 3 -----------------------------------------------------------

bool criterion_monotonicity(Check& check) {
  const VmafModel model = parse_model(kModelPath);
  for (int clip_id = 0; clip_id < 5; ++clip_id) {
    const Clip ref = make_texture_clip(3, 64, 64, 18.0 + 6.0 * clip_id,
                                       3000 + clip_id);
    double prev_vmaf = 1e9, prev_ssim = 1e9, prev_psnr = 1e9;
    for (double sigma : {1.0, 2.0, 4.0}) {
      const Clip dist = distort_blur(ref, sigma);
      const double vmaf = score_clip_pair(ref, dist, model).pooled;
      std::vector<double> ssims(ref.frames.size()), psnrs(ref.frames.size());
      for (std::size_t i = 0; i < ref.frames.size(); ++i) {
        ssims[i] = ssim_frame(ref.frames[i], dist.frames[i]);
        psnrs[i] = psnr_frame(ref.frames[i], dist.frames[i]);
      }
      const double ssim = pool_mean(ssims);
      const double psnr = pool_mean(psnrs);
      check.require(vmaf < prev_vmaf, "vmaf not strictly decreasing with blur");
      check.require(ssim < prev_ssim, "ssim not strictly decreasing with blur");
      check.require(psnr < prev_psnr, "psnr not strictly decreasing with blur");
      prev_vmaf = vmaf;
      prev_ssim = ssim;
      prev_psnr = psnr;
    }
  }
  return check.ok;
}

// --- criterion 4 -----------------------------------------------------------

bool criterion_optimizer(Check& check) {
  BatchEvaluator eval = [](const std::vector<std::vector<double>>& batch) {
    std::vector<std::optional<std::array<double, 2>>> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double g = batch[i][0];
      out[i] = std::array<double, 2>{g * g, (g - 2.0) * (g - 2.0)};
    }
    return out;
  };
  Bounds bounds{{{-5.0, 5.0}}};
  NsgaConfig cfg;
  cfg.pop_size = 40;
  cfg.generations = 50;
  cfg.seed = 42;
  const ParetoFront front = evolve(eval, bounds, cfg);
  check.require(front.members.size() >= 10, "front has fewer than 10 members");
  double lo = 1e9, hi = -1e9;
  for (const auto& m : front.members) {
    lo = std::min(lo, m.genes[0]);
    hi = std::max(hi, m.genes[0]);
  }
  check.require(lo <= 0.1, "front does not reach gene 0.1");
  check.require(hi >= 1.9, "front does not reach gene 1.9");

  const ParetoFront again = evolve(eval, bounds, cfg);
  check.require(again.members.size() == front.members.size(),
                "front size differs between seeded runs");
  for (std::size_t i = 0;
       i < std::min(front.members.size(), again.members.size()); ++i) {
    check.require(front.members[i].genes == again.members[i].genes,
                  "genes differ between seeded runs");
  }
  return check.ok;
}

// --- criteria 5 and 6 ------------------------------------------------------

RunConfig search_config(const std::string& ref, const std::string& family,
                        const std::string& out_dir) {
  RunConfig cfg;
  cfg.ref_path = ref;
  cfg.family = family;
  cfg.model_path = kModelPath;
  cfg.optimizer.pop_size = 24;
  cfg.optimizer.generations = 30;
  cfg.optimizer.seed = 7;
  cfg.subsample = 2;
  cfg.output_dir = out_dir;
  return cfg;
}

bool criterion_reproduction(Check& check, ParetoReport* unsharp_report) {
  const auto unsharp_dir = work_dir("unsharp");
  *unsharp_report = run_search(
      search_config(kLowContrastClip, "unsharp", unsharp_dir.string()));
  bool unsharp_hit = false;
  double best_dvmaf = 0.0;
  for (std::size_t i : unsharp_report->front) {
    const EvalRecord& r = unsharp_report->records[i];
    if (r.delta_vmaf >= 1.0 && r.delta_ssim >= -0.005) {
      unsharp_hit = true;
      best_dvmaf = std::max(best_dvmaf, r.delta_vmaf);
    }
  }
  check.require(unsharp_hit,
                "no unsharp front member with dVMAF >= +1.0 at dSSIM >= -0.005");
  if (unsharp_hit) {
    std::printf("       unsharp: best second-quadrant dVMAF %+.3f\n", best_dvmaf);
  }

  const auto histeq_dir = work_dir("histeq");
  const ParetoReport histeq_report = run_search(
      search_config(kContrastedClip, "histeq", histeq_dir.string()));
  bool histeq_hit = false;
  double histeq_best = 0.0;
  for (std::size_t i : histeq_report.front) {
    const EvalRecord& r = histeq_report.records[i];
    if (r.delta_vmaf > 0.0 && r.delta_ssim >= -0.01) {
      histeq_hit = true;
      histeq_best = std::max(histeq_best, r.delta_vmaf);
    }
  }
  check.require(histeq_hit,
                "no histeq front member with dVMAF > 0 at dSSIM >= -0.01");
  if (histeq_hit) {
    std::printf("       histeq: best dVMAF %+.3f with little SSIM worsening\n",
                histeq_best);
  }
  return check.ok;
}

bool criterion_determinism(Check& check) {
  const auto dir1 = work_dir("det1");
  const auto dir2 = work_dir("det2");
  run_search(search_config(kLowContrastClip, "unsharp", dir1.string()));
  run_search(search_config(kLowContrastClip, "unsharp", dir2.string()));
  const std::string a = read_text(dir1 / "report.csv");
  const std::string b = read_text(dir2 / "report.csv");
  check.require(!a.empty(), "report.csv is empty");
  check.require(a == b, "same-seed runs differ byte-wise");
  return check.ok;
}

// --- criterion 7 -----------------------------------------------------------

bool criterion_roundtrips(Check& check) {
  SplitMix64 rng(7007);
  const auto dir = work_dir("roundtrip");

  for (int i = 0; i < 50; ++i) {  // y4m identity
    VideoMeta meta;
    meta.width = 2 * (1 + static_cast<int>(rng.next_index(16)));
    meta.height = 2 * (1 + static_cast<int>(rng.next_index(16)));
    meta.bit_depth = i % 2 == 0 ? 8 : 10;
    const ChromaFormat formats[] = {ChromaFormat::k420, ChromaFormat::k422,
                                    ChromaFormat::k444};
    meta.chroma_format = formats[i % 3];
    meta.frame_rate = {static_cast<std::int64_t>(1 + rng.next_index(120)),
                       static_cast<std::int64_t>(1 + rng.next_index(4))};
    Clip clip;
    clip.meta = meta;
    const int frames = 1 + static_cast<int>(rng.next_index(3));
    for (int f = 0; f < frames; ++f) {
      Frame frame = make_frame(meta);
      for (auto& v : frame.luma.samples()) {
        v = static_cast<std::uint16_t>(rng.next_index(meta.max_value() + 1));
      }
      for (auto& v : frame.chroma_u->samples()) {
        v = static_cast<std::uint16_t>(rng.next_index(meta.max_value() + 1));
      }
      for (auto& v : frame.chroma_v->samples()) {
        v = static_cast<std::uint16_t>(rng.next_index(meta.max_value() + 1));
      }
      clip.frames.push_back(std::move(frame));
    }
    const auto path = (dir / "clip.y4m").string();
    save_clip(clip, path, MediaFormat::kY4m);
    check.require(load_clip(path) == clip, "y4m round-trip not the identity");
  }

  {  // model round-trip
    const VmafModel model = parse_model(kModelPath);
    const auto path = (dir / "model.json").string();
    serialize_model(model, path);
    check.require(parse_model(path) == model, "model round-trip changed fields");
  }

  {  // csv reparse at emitted precision
    ParetoReport report;
    report.baseline.params = IdentityParams{};
    for (int i = 0; i < 10; ++i) {
      EvalRecord r;
      r.params = i % 2 == 0
                     ? TransformParams(UnsharpMaskParams{0.5 + i, 0.05 * i})
                     : TransformParams(HistEqParams{8, 0.001 * (i + 1)});
      r.vmaf = 50.0 + 7.7 * i + 1e-7 * i;
      r.ssim = 1.0 - 0.013 * i;
      r.psnr = 30.0 + i;
      r.delta_vmaf = 0.123456789 * i;
      r.delta_ssim = -0.000111111 * i;
      r.delta_psnr = -0.25 * i;
      report.records.push_back(r);
    }
    report.front = {1, 3};
    const auto path = (dir / "report.csv").string();
    emit_csv(report, path);

    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    check.require(line == kReportCsvHeader, "csv header mismatch");
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string field;
      std::vector<std::string> parts;
      while (std::getline(fields, field, ',')) parts.push_back(field);
      check.require(parts.size() == 13, "csv arity mismatch");
      for (std::size_t c = 5; c <= 10 && c < parts.size(); ++c) {
        check.require(fmt_fixed(std::stod(parts[c])) == parts[c],
                      "csv numeric field does not re-parse exactly");
      }
    }
  }
  return check.ok;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    std::function<bool(Check&)> run;
  };
  ParetoReport unsharp_report;  // shared between criteria 5 and 6

  const std::vector<Criterion> criteria = {
      {1, "metric identity suite", criterion_identity},
      {2, "brute-force oracle suite", criterion_oracles},
      {3, "distortion monotonicity", criterion_monotonicity},
      {4, "optimizer convergence on the toy biobjective", criterion_optimizer},
      {5, "desk-scale metric-gaming reproduction",
       [&](Check& c) { return criterion_reproduction(c, &unsharp_report); }},
      {6, "seeded searches are byte-deterministic", criterion_determinism},
      {7, "format round-trips", criterion_roundtrips},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check check;
    bool ok = false;
    std::string error;
    try {
      ok = criterion.run(check);
      error = check.detail;
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.name.c_str(), seconds,
                ok ? "" : " -- ", ok ? "" : error.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
