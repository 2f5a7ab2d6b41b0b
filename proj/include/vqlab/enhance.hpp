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
// Parametric luma enhancement operators. Both operate on luma only and pass
// chroma through untouched; sample rounding (half away from zero) happens
// exactly once, at the end of each operator.

#ifndef VQLAB_ENHANCE_HPP_
#define VQLAB_ENHANCE_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/filters.hpp"
#include "vqlab/frame.hpp"

namespace vqlab {

struct IdentityParams {
  friend bool operator==(IdentityParams, IdentityParams) { return true; }
};

struct UnsharpMaskParams {
  double radius = 1.0;  // Gaussian sigma in pixels
  double amount = 0.0;

  friend bool operator==(const UnsharpMaskParams& a, const UnsharpMaskParams& b) {
    return a.radius == b.radius && a.amount == b.amount;
  }
};

struct HistEqParams {
  int kernel_size = 8;  // tiles per dimension
  double clip_limit = 0.01;

  friend bool operator==(const HistEqParams& a, const HistEqParams& b) {
    return a.kernel_size == b.kernel_size && a.clip_limit == b.clip_limit;
  }
};

using TransformParams = std::variant<IdentityParams, UnsharpMaskParams, HistEqParams>;

inline std::string transform_family(const TransformParams& params) {
  if (std::holds_alternative<UnsharpMaskParams>(params)) return "unsharp";
  if (std::holds_alternative<HistEqParams>(params)) return "histeq";
  return "identity";
}

// out = in + amount * (in - blur(in, radius)), clamped to the sample range.
inline Frame unsharp_mask(const Frame& frame, double radius, double amount) {
  if (!(radius > 0.0)) throw ConfigError("unsharp radius must be positive");
  if (amount < 0.0) throw ConfigError("unsharp amount must be >= 0");
  const RealPlane in = to_real(frame.luma);
  const RealPlane blurred = gaussian_blur(in, radius);
  RealPlane out(in.width(), in.height());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double v = in.samples()[i];
    out.samples()[i] = v + amount * (v - blurred.samples()[i]);
  }
  Frame result = frame;
  result.luma = to_pixels(out, frame.max_value());
  return result;
}

namespace detail {

// Real-valued tile mapping: cdf(v)/npix * max_value after clipping bins at
// clip_limit * npix and spreading the excess uniformly. A single-valued tile
// histogram maps the value to itself.
inline std::vector<double> clahe_tile_lut(const std::vector<std::int64_t>& hist,
                                          std::int64_t npix, double clip_limit,
                                          int max_value) {
  const int bins = max_value + 1;
  std::vector<double> lut(bins);
  int nonzero = 0;
  for (int b = 0; b < bins; ++b) {
    if (hist[b] > 0) ++nonzero;
  }
  if (nonzero <= 1) {
    for (int b = 0; b < bins; ++b) lut[b] = b;
    return lut;
  }
  const double threshold = clip_limit * static_cast<double>(npix);
  double excess = 0.0;
  std::vector<double> clipped(bins);
  for (int b = 0; b < bins; ++b) {
    const double h = static_cast<double>(hist[b]);
    if (h > threshold) {
      excess += h - threshold;
      clipped[b] = threshold;
    } else {
      clipped[b] = h;
    }
  }
  const double share = excess / bins;
  double cdf = 0.0;
  for (int b = 0; b < bins; ++b) {
    cdf += clipped[b] + share;
    lut[b] = cdf / static_cast<double>(npix) * max_value;
  }
  return lut;
}

// Piecewise-linear interpolation setup along one axis: for each coordinate,
// the two enclosing tile indices and the weight of the second one.
struct AxisBlend {
  std::vector<int> lo, hi;
  std::vector<double> w;
};

inline AxisBlend axis_blend(int extent, int tiles,
                            const std::vector<double>& centers) {
  AxisBlend blend;
  blend.lo.resize(extent);
  blend.hi.resize(extent);
  blend.w.resize(extent);
  for (int p = 0; p < extent; ++p) {
    if (p <= centers.front()) {
      blend.lo[p] = blend.hi[p] = 0;
      blend.w[p] = 0.0;
    } else if (p >= centers.back()) {
      blend.lo[p] = blend.hi[p] = tiles - 1;
      blend.w[p] = 0.0;
    } else {
      int t = 0;
      while (centers[t + 1] < p) ++t;
      blend.lo[p] = t;
      blend.hi[p] = t + 1;
      blend.w[p] = (p - centers[t]) / (centers[t + 1] - centers[t]);
    }
  }
  return blend;
}

}  // namespace detail

// Contrast-limited adaptive histogram equalization with a kernel_size x
// kernel_size tile grid and bilinear blending between tile mappings.
inline Frame hist_equalize(const Frame& frame, int kernel_size, double clip_limit) {
  if (kernel_size < 1) throw ConfigError("kernel_size must be >= 1");
  if (!(clip_limit > 0.0) || clip_limit > 1.0) {
    throw ConfigError("clip_limit must be in (0, 1]");
  }
  const int w = frame.luma.width();
  const int h = frame.luma.height();
  if (w < kernel_size || h < kernel_size) {
    throw ShapeError("frame smaller than the tile grid");
  }
  const int max_value = frame.max_value();
  const int bins = max_value + 1;
  const int k = kernel_size;

  std::vector<std::vector<double>> luts(static_cast<std::size_t>(k) * k);
  std::vector<double> centers_x(k), centers_y(k);
  for (int ty = 0; ty < k; ++ty) {
    const int y0 = ty * h / k;
    const int y1 = (ty + 1) * h / k;
    centers_y[ty] = (y0 + y1 - 1) / 2.0;
    for (int tx = 0; tx < k; ++tx) {
      const int x0 = tx * w / k;
      const int x1 = (tx + 1) * w / k;
      centers_x[tx] = (x0 + x1 - 1) / 2.0;
      std::vector<std::int64_t> hist(bins, 0);
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          ++hist[frame.luma.at(y, x)];
        }
      }
      const std::int64_t npix =
          static_cast<std::int64_t>(y1 - y0) * (x1 - x0);
      luts[static_cast<std::size_t>(ty) * k + tx] =
          detail::clahe_tile_lut(hist, npix, clip_limit, max_value);
    }
  }

  const auto bx = detail::axis_blend(w, k, centers_x);
  const auto by = detail::axis_blend(h, k, centers_y);

  Frame result = frame;
  for (int y = 0; y < h; ++y) {
    const double wy = by.w[y];
    const int ty0 = by.lo[y];
    const int ty1 = by.hi[y];
    for (int x = 0; x < w; ++x) {
      const double wx = bx.w[x];
      const int tx0 = bx.lo[x];
      const int tx1 = bx.hi[x];
      const int v = frame.luma.at(y, x);
      const double m00 = luts[static_cast<std::size_t>(ty0) * k + tx0][v];
      const double m01 = luts[static_cast<std::size_t>(ty0) * k + tx1][v];
      const double m10 = luts[static_cast<std::size_t>(ty1) * k + tx0][v];
      const double m11 = luts[static_cast<std::size_t>(ty1) * k + tx1][v];
      const double blended = (1.0 - wy) * ((1.0 - wx) * m00 + wx * m01) +
                             wy * ((1.0 - wx) * m10 + wx * m11);
      std::int64_t s = round_half_away(blended);
      s = std::clamp<std::int64_t>(s, 0, max_value);
      result.luma.at(y, x) = static_cast<std::uint16_t>(s);
    }
  }
  return result;
}

inline Frame apply_transform_frame(const Frame& frame, const TransformParams& params) {
  if (const auto* u = std::get_if<UnsharpMaskParams>(&params)) {
    return unsharp_mask(frame, u->radius, u->amount);
  }
  if (const auto* e = std::get_if<HistEqParams>(&params)) {
    return hist_equalize(frame, e->kernel_size, e->clip_limit);
  }
  return frame;
}

// Frame-wise application; output metadata equals input metadata.
inline Clip apply_transform(const Clip& clip, const TransformParams& params) {
  Clip out;
  out.meta = clip.meta;
  out.frames.reserve(clip.frames.size());
  for (const Frame& f : clip.frames) {
    out.frames.push_back(apply_transform_frame(f, params));
  }
  return out;
}

}  // namespace vqlab

#endif  // VQLAB_ENHANCE_HPP_
