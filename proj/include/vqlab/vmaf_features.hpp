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
// Elementary quality features fused into the final score: pixel-domain
// VIF at four dyadic scales, a wavelet detail-loss measure, and a motion
// feature from blurred consecutive-frame differences. All math runs in
// double precision regardless of input bit depth.

#ifndef VQLAB_VMAF_FEATURES_HPP_
#define VQLAB_VMAF_FEATURES_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/filters.hpp"
#include "vqlab/frame.hpp"
#include "vqlab/utils.hpp"

namespace vqlab {

// Feature-engine constants; the single source of truth for conformance.
struct FeatureConfig {
  static constexpr int kVifWindowTaps = 9;
  static constexpr double kVifWindowSigma = 1.5;
  static constexpr double kVifNoiseVariance = 2.0;
  static constexpr double kVifEpsilon = 1e-10;
  static constexpr int kDlmLevels = 4;
  static constexpr double kMotionBlurSigma = 1.0;
};

struct FeatureValue {
  double value = 0.0;
  bool degenerate = false;  // constant-reference fallback was taken
};

struct FeatureVector {
  double vif_scale0 = 0.0;
  double vif_scale1 = 0.0;
  double vif_scale2 = 0.0;
  double vif_scale3 = 0.0;
  double dlm = 0.0;
  double motion = 0.0;
};

inline const std::array<std::string, 6>& feature_field_names() {
  static const std::array<std::string, 6> kNames = {
      "vif_scale0", "vif_scale1", "vif_scale2", "vif_scale3", "dlm", "motion"};
  return kNames;
}

inline double feature_by_name(const FeatureVector& fv, const std::string& name) {
  if (name == "vif_scale0") return fv.vif_scale0;
  if (name == "vif_scale1") return fv.vif_scale1;
  if (name == "vif_scale2") return fv.vif_scale2;
  if (name == "vif_scale3") return fv.vif_scale3;
  if (name == "dlm") return fv.dlm;
  if (name == "motion") return fv.motion;
  throw SchemaError("unknown feature name: " + name);
}

namespace detail {

// VIF at the current pyramid level: Gaussian-window moments, the gain and
// restored-variance decomposition, and the information ratio.
inline FeatureValue vif_one_level(const RealPlane& ref, const RealPlane& dist,
                                  const std::vector<double>& window) {
  RealPlane rr(ref.width(), ref.height());
  RealPlane dd(ref.width(), ref.height());
  RealPlane rd(ref.width(), ref.height());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double r = ref.samples()[i];
    const double d = dist.samples()[i];
    rr.samples()[i] = r * r;
    dd.samples()[i] = d * d;
    rd.samples()[i] = r * d;
  }
  const RealPlane mu_r = convolve_separable(ref, window);
  const RealPlane mu_d = convolve_separable(dist, window);
  const RealPlane m_rr = convolve_separable(rr, window);
  const RealPlane m_dd = convolve_separable(dd, window);
  const RealPlane m_rd = convolve_separable(rd, window);

  const double eps = FeatureConfig::kVifEpsilon;
  const double noise = FeatureConfig::kVifNoiseVariance;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < mu_r.size(); ++i) {
    const double mr = mu_r.samples()[i];
    const double md = mu_d.samples()[i];
    double var_r = m_rr.samples()[i] - mr * mr;
    double var_d = m_dd.samples()[i] - md * md;
    const double cov = m_rd.samples()[i] - mr * md;
    if (var_r < 0.0) var_r = 0.0;
    if (var_d < 0.0) var_d = 0.0;
    double g = cov / (var_r + eps);
    if (g < 0.0) g = 0.0;
    double var_v = var_d - g * cov;
    if (var_v < eps) var_v = eps;
    num += std::log2(1.0 + g * g * var_r / (var_v + noise));
    den += std::log2(1.0 + var_r / noise);
  }
  // constant reference: per-pixel information below numerical noise
  if (den < 1e-6 * static_cast<double>(mu_r.size())) return {1.0, true};
  return {num / den, false};
}

}  // namespace detail

// Pixel-domain VIF at all four dyadic scales, sharing one blur-decimate
// pyramid. Scale k sees the planes blurred and halved k times; local
// moments use the same 9-tap window with reflected borders.
inline std::array<FeatureValue, 4> vif_all_scales(const RealPlane& ref_in,
                                                  const RealPlane& dist_in) {
  if (!ref_in.same_shape(dist_in)) throw ShapeError("vif planes differ in shape");
  if (ref_in.width() < FeatureConfig::kVifWindowTaps ||
      ref_in.height() < FeatureConfig::kVifWindowTaps) {
    throw ShapeError("plane too small for the vif window");
  }
  const auto window =
      gaussian_window(FeatureConfig::kVifWindowSigma, FeatureConfig::kVifWindowTaps);
  std::array<FeatureValue, 4> out;
  RealPlane ref = ref_in;
  RealPlane dist = dist_in;
  for (int k = 0; k < 4; ++k) {
    if (k > 0) {
      ref = decimate2(convolve_separable(ref, window));
      dist = decimate2(convolve_separable(dist, window));
    }
    out[k] = detail::vif_one_level(ref, dist, window);
  }
  return out;
}

inline FeatureValue vif_scale(const RealPlane& ref_in, const RealPlane& dist_in,
                              int scale) {
  if (scale < 0 || scale > 3) throw ConfigError("vif scale must be in 0..3");
  return vif_all_scales(ref_in, dist_in)[static_cast<std::size_t>(scale)];
}

namespace detail {

// Daubechies-2 analysis filters, low then high.
inline const std::array<double, 4>& db2_lo() {
  static const std::array<double, 4> k = [] {
    const double s = 1.0 / (4.0 * std::sqrt(2.0));
    const double r3 = std::sqrt(3.0);
    // reversed reconstruction filter
    return std::array<double, 4>{(1.0 - r3) * s, (3.0 - r3) * s, (3.0 + r3) * s,
                                 (1.0 + r3) * s};
  }();
  return k;
}

inline const std::array<double, 4>& db2_hi() {
  static const std::array<double, 4> k = [] {
    const double s = 1.0 / (4.0 * std::sqrt(2.0));
    const double r3 = std::sqrt(3.0);
    return std::array<double, 4>{-(1.0 + r3) * s, (3.0 + r3) * s,
                                 -(3.0 - r3) * s, (1.0 - r3) * s};
  }();
  return k;
}

struct Subbands {
  RealPlane ll, lh, hl, hh;
};

// One 2-D analysis level with reflected borders; outputs are ceil(n/2) long
// per dimension. Rows first, then columns.
inline Subbands dwt2_level(const RealPlane& plane) {
  const int w = plane.width();
  const int h = plane.height();
  const int ow = (w + 1) / 2;
  const int oh = (h + 1) / 2;
  const auto& lo = db2_lo();
  const auto& hi = db2_hi();

  RealPlane row_lo(ow, h), row_hi(ow, h);
  for (int y = 0; y < h; ++y) {
    for (int k = 0; k < ow; ++k) {
      double a = 0.0, d = 0.0;
      for (int m = 0; m < 4; ++m) {
        const double v = plane.at(y, reflect_index(2 * k + m - 1, w));
        a += lo[m] * v;
        d += hi[m] * v;
      }
      row_lo.at(y, k) = a;
      row_hi.at(y, k) = d;
    }
  }
  Subbands out{RealPlane(ow, oh), RealPlane(ow, oh), RealPlane(ow, oh),
               RealPlane(ow, oh)};
  for (int x = 0; x < ow; ++x) {
    for (int k = 0; k < oh; ++k) {
      double ll = 0.0, lh = 0.0, hl = 0.0, hh = 0.0;
      for (int m = 0; m < 4; ++m) {
        const int yy = reflect_index(2 * k + m - 1, h);
        ll += lo[m] * row_lo.at(yy, x);
        lh += hi[m] * row_lo.at(yy, x);
        hl += lo[m] * row_hi.at(yy, x);
        hh += hi[m] * row_hi.at(yy, x);
      }
      out.ll.at(k, x) = ll;
      out.lh.at(k, x) = lh;
      out.hl.at(k, x) = hl;
      out.hh.at(k, x) = hh;
    }
  }
  return out;
}

// Cube-sums of restored and original detail energy over the subband
// interior (1-coefficient border crop).
inline void dlm_accumulate(const RealPlane& orig, const RealPlane& dist,
                           double* restored_cubed, double* original_cubed) {
  const int w = orig.width();
  const int h = orig.height();
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const double o = orig.at(y, x);
      const double t = dist.at(y, x);
      const bool same_sign = (o > 0.0 && t > 0.0) || (o < 0.0 && t < 0.0);
      const double r = same_sign ? std::min(std::abs(t), std::abs(o)) : 0.0;
      *restored_cubed += r * r * r;
      const double ao = std::abs(o);
      *original_cubed += ao * ao * ao;
    }
  }
}

}  // namespace detail

// Detail-loss ratio from a 4-level Daubechies-2 decomposition: restored
// coefficients are min(|T|, |O|) when signs agree and 0 otherwise, and the
// result is the cube-norm ratio of restored to original detail energy.
inline FeatureValue dlm(const RealPlane& ref_in, const RealPlane& dist_in) {
  if (!ref_in.same_shape(dist_in)) throw ShapeError("dlm planes differ in shape");
  if (ref_in.width() < 16 || ref_in.height() < 16) {
    throw ShapeError("dlm needs at least 16x16 planes");
  }
  RealPlane ref_ll = ref_in;
  RealPlane dist_ll = dist_in;
  double restored_cubed = 0.0;
  double original_cubed = 0.0;
  for (int level = 0; level < FeatureConfig::kDlmLevels; ++level) {
    const auto ref_bands = detail::dwt2_level(ref_ll);
    const auto dist_bands = detail::dwt2_level(dist_ll);
    detail::dlm_accumulate(ref_bands.lh, dist_bands.lh, &restored_cubed,
                           &original_cubed);
    detail::dlm_accumulate(ref_bands.hl, dist_bands.hl, &restored_cubed,
                           &original_cubed);
    detail::dlm_accumulate(ref_bands.hh, dist_bands.hh, &restored_cubed,
                           &original_cubed);
    ref_ll = ref_bands.ll;
    dist_ll = dist_bands.ll;
  }
  // constant reference: detail energy at the numerical-noise floor
  if (original_cubed <= 1e-18) return {1.0, true};
  double value = std::cbrt(restored_cubed) / std::cbrt(original_cubed);
  if (value < 0.0) value = 0.0;
  if (value > 1.0) value = 1.0;
  return {value, false};
}

// Mean absolute difference of sigma-1 blurred lumas; zero for the first
// frame of a clip by convention.
inline double motion(const RealPlane* prev_luma, const RealPlane& cur_luma) {
  if (prev_luma == nullptr) return 0.0;
  if (!prev_luma->same_shape(cur_luma)) {
    throw ShapeError("motion planes differ in shape");
  }
  const RealPlane a = gaussian_blur(*prev_luma, FeatureConfig::kMotionBlurSigma);
  const RealPlane b = gaussian_blur(cur_luma, FeatureConfig::kMotionBlurSigma);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::abs(b.samples()[i] - a.samples()[i]);
  }
  return acc / static_cast<double>(a.size());
}

// Per-frame features of a (reference, distorted) pair. Motion is computed
// on the distorted clip.
inline std::vector<FeatureVector> extract_features(const Clip& ref,
                                                   const Clip& dist,
                                                   int threads = 1) {
  if (ref.frames.size() != dist.frames.size()) {
    throw ShapeError("clips differ in frame count");
  }
  if (!(ref.meta == dist.meta)) throw ShapeError("clips differ in metadata");
  const std::size_t n = ref.frames.size();

  std::vector<RealPlane> dist_lumas(n);
  for (std::size_t i = 0; i < n; ++i) dist_lumas[i] = to_real(dist.frames[i].luma);

  std::vector<FeatureVector> features(n);
  parallel_for_indexed(n, threads, [&](std::size_t i) {
    const RealPlane ref_luma = to_real(ref.frames[i].luma);
    const auto vif = vif_all_scales(ref_luma, dist_lumas[i]);
    FeatureVector fv;
    fv.vif_scale0 = vif[0].value;
    fv.vif_scale1 = vif[1].value;
    fv.vif_scale2 = vif[2].value;
    fv.vif_scale3 = vif[3].value;
    fv.dlm = dlm(ref_luma, dist_lumas[i]).value;
    fv.motion = motion(i == 0 ? nullptr : &dist_lumas[i - 1], dist_lumas[i]);
    features[i] = fv;
  });
  return features;
}

}  // namespace vqlab

#endif  // VQLAB_VMAF_FEATURES_HPP_
