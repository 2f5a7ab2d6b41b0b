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

#ifndef VQLAB_FILTERS_HPP_
#define VQLAB_FILTERS_HPP_

#include <cmath>
#include <vector>

#include "vqlab/errors.hpp"
#include "vqlab/image.hpp"

namespace vqlab {

// Normalized 1-D Gaussian, truncated at +/- ceil(3*sigma) taps.
inline std::vector<double> gaussian_kernel(double sigma) {
  if (sigma <= 0.0) throw ConfigError("gaussian sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& w : k) w /= sum;
  return k;
}

// Fixed-length normalized Gaussian window (odd number of taps).
inline std::vector<double> gaussian_window(double sigma, int taps) {
  const int radius = taps / 2;
  std::vector<double> k(taps);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& w : k) w /= sum;
  return k;
}

// Separable correlation with whole-sample reflection at the borders. The
// interior skips the reflection arithmetic; border columns/rows fold.
inline RealPlane convolve_separable(const RealPlane& plane,
                                    const std::vector<double>& kernel) {
  const int w = plane.width();
  const int h = plane.height();
  const int radius = static_cast<int>(kernel.size()) / 2;
  const double* k = kernel.data() + radius;

  RealPlane tmp(w, h);
  for (int y = 0; y < h; ++y) {
    const double* src = plane.row(y);
    double* dst = tmp.row(y);
    const int interior_end = std::max(radius, w - radius);
    for (int x = 0; x < std::min(radius, w); ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        acc += k[t] * src[reflect_index(x + t, w)];
      }
      dst[x] = acc;
    }
    for (int x = radius; x < interior_end; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) acc += k[t] * src[x + t];
      dst[x] = acc;
    }
    for (int x = interior_end; x < w; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        acc += k[t] * src[reflect_index(x + t, w)];
      }
      dst[x] = acc;
    }
  }

  RealPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    double* dst = out.row(y);
    if (y >= radius && y + radius < h) {
      const double* base = tmp.row(y - radius);
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        const double* col = base + x;
        for (int t = 0; t <= 2 * radius; ++t, col += w) acc += kernel[t] * *col;
        dst[x] = acc;
      }
    } else {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
          acc += k[t] * tmp.at(reflect_index(y + t, h), x);
        }
        dst[x] = acc;
      }
    }
  }
  return out;
}

inline RealPlane gaussian_blur(const RealPlane& plane, double sigma) {
  if (plane.width() == 1 && plane.height() == 1) return plane;
  return convolve_separable(plane, gaussian_kernel(sigma));
}

// Keeps every second sample starting at index 0; output is ceil(n/2) long.
inline RealPlane decimate2(const RealPlane& plane) {
  const int w = (plane.width() + 1) / 2;
  const int h = (plane.height() + 1) / 2;
  RealPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(y, x) = plane.at(2 * y, 2 * x);
    }
  }
  return out;
}

// Sobel gradient magnitude on interior pixels; border pixels are skipped and
// the result is (h-2) x (w-2).
inline RealPlane sobel_magnitude(const RealPlane& plane) {
  const int w = plane.width();
  const int h = plane.height();
  if (w < 3 || h < 3) throw ShapeError("sobel needs at least a 3x3 plane");
  RealPlane out(w - 2, h - 2);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const double gx = -plane.at(y - 1, x - 1) + plane.at(y - 1, x + 1) -
                        2.0 * plane.at(y, x - 1) + 2.0 * plane.at(y, x + 1) -
                        plane.at(y + 1, x - 1) + plane.at(y + 1, x + 1);
      const double gy = -plane.at(y - 1, x - 1) - 2.0 * plane.at(y - 1, x) -
                        plane.at(y - 1, x + 1) + plane.at(y + 1, x - 1) +
                        2.0 * plane.at(y + 1, x) + plane.at(y + 1, x + 1);
      out.at(y - 1, x - 1) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

inline double plane_mean(const RealPlane& p) {
  double sum = 0.0;
  for (double v : p.samples()) sum += v;
  return sum / static_cast<double>(p.size());
}

// Population standard deviation.
inline double plane_stddev(const RealPlane& p) {
  const double mean = plane_mean(p);
  double acc = 0.0;
  for (double v : p.samples()) acc += (v - mean) * (v - mean);
  const double var = acc / static_cast<double>(p.size());
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace vqlab

#endif  // VQLAB_FILTERS_HPP_
