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

#ifndef VQLAB_METRICS_HPP_
#define VQLAB_METRICS_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/filters.hpp"
#include "vqlab/frame.hpp"

namespace vqlab {

enum class MetricId { kPsnr, kSsim, kVmaf };

inline std::string metric_name(MetricId id) {
  switch (id) {
    case MetricId::kPsnr: return "psnr";
    case MetricId::kSsim: return "ssim";
    case MetricId::kVmaf: return "vmaf";
  }
  return "?";
}

// Per-frame scores plus their arithmetic-mean pool. Pooling is the mean for
// every metric in this library.
struct MetricScore {
  MetricId metric_id;
  std::vector<double> per_frame;
  double pooled = 0.0;
};

inline double pool_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

inline MetricScore make_score(MetricId id, std::vector<double> per_frame) {
  MetricScore s;
  s.metric_id = id;
  s.pooled = pool_mean(per_frame);
  s.per_frame = std::move(per_frame);
  return s;
}

inline constexpr double kPsnrCapDb = 100.0;
inline constexpr int kSsimWindowTaps = 11;
inline constexpr double kSsimWindowSigma = 1.5;

namespace detail {

inline void require_same_shape(const Frame& ref, const Frame& dist) {
  if (!ref.luma.same_shape(dist.luma)) {
    throw ShapeError("frame dimensions differ");
  }
  if (ref.meta.bit_depth != dist.meta.bit_depth) {
    throw ShapeError("frame bit depths differ");
  }
}

// Separable correlation restricted to positions where the window fits, so
// the output shrinks by taps-1 in each dimension.
inline RealPlane valid_separable(const RealPlane& plane,
                                 const std::vector<double>& kernel) {
  const int taps = static_cast<int>(kernel.size());
  const int w = plane.width();
  const int h = plane.height();
  const int ow = w - taps + 1;
  const int oh = h - taps + 1;
  RealPlane tmp(ow, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < taps; ++t) acc += kernel[t] * plane.at(y, x + t);
      tmp.at(y, x) = acc;
    }
  }
  RealPlane out(ow, oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < taps; ++t) acc += kernel[t] * tmp.at(y + t, x);
      out.at(y, x) = acc;
    }
  }
  return out;
}

}  // namespace detail

// Luma PSNR in dB, capped at 100 (the zero-MSE value).
inline double psnr_frame(const Frame& ref, const Frame& dist) {
  detail::require_same_shape(ref, dist);
  const double max_value = ref.max_value();
  double acc = 0.0;
  for (std::size_t i = 0; i < ref.luma.size(); ++i) {
    const double d = static_cast<double>(ref.luma.samples()[i]) -
                     static_cast<double>(dist.luma.samples()[i]);
    acc += d * d;
  }
  const double mse = acc / static_cast<double>(ref.luma.size());
  if (mse == 0.0) return kPsnrCapDb;
  const double db = 10.0 * std::log10(max_value * max_value / mse);
  return db < kPsnrCapDb ? db : kPsnrCapDb;
}

// Mean local SSIM over luma with an 11x11 Gaussian window (sigma 1.5),
// C1 = (0.01*MAX)^2, C2 = (0.03*MAX)^2. No downsampling pre-step.
inline double ssim_frame(const Frame& ref, const Frame& dist) {
  detail::require_same_shape(ref, dist);
  const int w = ref.luma.width();
  const int h = ref.luma.height();
  if (w < kSsimWindowTaps || h < kSsimWindowTaps) {
    throw ShapeError("frame smaller than the SSIM window");
  }
  const auto window = gaussian_window(kSsimWindowSigma, kSsimWindowTaps);
  const RealPlane x = to_real(ref.luma);
  const RealPlane y = to_real(dist.luma);

  RealPlane xx(w, h), yy(w, h), xy(w, h);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x.samples()[i];
    const double b = y.samples()[i];
    xx.samples()[i] = a * a;
    yy.samples()[i] = b * b;
    xy.samples()[i] = a * b;
  }
  const RealPlane mu_x = detail::valid_separable(x, window);
  const RealPlane mu_y = detail::valid_separable(y, window);
  const RealPlane m_xx = detail::valid_separable(xx, window);
  const RealPlane m_yy = detail::valid_separable(yy, window);
  const RealPlane m_xy = detail::valid_separable(xy, window);

  const double max_value = ref.max_value();
  const double c1 = (0.01 * max_value) * (0.01 * max_value);
  const double c2 = (0.03 * max_value) * (0.03 * max_value);

  double acc = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x.samples()[i];
    const double my = mu_y.samples()[i];
    const double var_x = m_xx.samples()[i] - mx * mx;
    const double var_y = m_yy.samples()[i] - my * my;
    const double cov = m_xy.samples()[i] - mx * my;
    const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
    const double den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
    acc += num / den;
  }
  return acc / static_cast<double>(mu_x.size());
}

// Spatial/temporal information of a clip; si is the max over frames of the
// Sobel-magnitude stddev, ti the max over consecutive frame differences.
struct SiTi {
  double si = 0.0;
  double ti = 0.0;
  bool ti_valid = true;  // false for single-frame clips
};

inline SiTi si_ti(const Clip& clip) {
  if (clip.frames.empty()) throw ConfigError("clip has no frames");
  SiTi result;
  for (const Frame& f : clip.frames) {
    const double s = plane_stddev(sobel_magnitude(to_real(f.luma)));
    if (s > result.si) result.si = s;
  }
  if (clip.frames.size() < 2) {
    result.ti = 0.0;
    result.ti_valid = false;
    return result;
  }
  for (std::size_t i = 1; i < clip.frames.size(); ++i) {
    const PixelPlane& prev = clip.frames[i - 1].luma;
    const PixelPlane& cur = clip.frames[i].luma;
    RealPlane diff(cur.width(), cur.height());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      diff.samples()[j] = static_cast<double>(cur.samples()[j]) -
                          static_cast<double>(prev.samples()[j]);
    }
    const double t = plane_stddev(diff);
    if (t > result.ti) result.ti = t;
  }
  return result;
}

}  // namespace vqlab

#endif  // VQLAB_METRICS_HPP_
