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
// Naive reference implementations used only by tests. Everything here is
// written as direct nested loops over explicit 2-D kernels and extended
// signals, independent of the separable/incremental code paths it checks.

#ifndef VQLAB_TESTS_ORACLES_HPP_
#define VQLAB_TESTS_ORACLES_HPP_

#include <cmath>
#include <vector>

#include "vqlab/frame.hpp"
#include "vqlab/image.hpp"
#include "vqlab/utils.hpp"

namespace oracle {

using vqlab::Frame;
using vqlab::PixelPlane;
using vqlab::RealPlane;

inline int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Dense 2-D correlation with whole-sample reflection.
inline RealPlane conv2d_reflect(const RealPlane& plane,
                                const std::vector<std::vector<double>>& kernel) {
  const int h = plane.height();
  const int w = plane.width();
  const int kr = static_cast<int>(kernel.size()) / 2;
  RealPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -kr; dy <= kr; ++dy) {
        for (int dx = -kr; dx <= kr; ++dx) {
          acc += kernel[dy + kr][dx + kr] *
                 plane.at(reflect(y + dy, h), reflect(x + dx, w));
        }
      }
      out.at(y, x) = acc;
    }
  }
  return out;
}

inline std::vector<std::vector<double>> gaussian_kernel2d(double sigma,
                                                          int radius) {
  const int n = 2 * radius + 1;
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  double sum = 0.0;
  for (int y = -radius; y <= radius; ++y) {
    for (int x = -radius; x <= radius; ++x) {
      k[y + radius][x + radius] =
          std::exp(-(static_cast<double>(y) * y + static_cast<double>(x) * x) /
                   (2.0 * sigma * sigma));
      sum += k[y + radius][x + radius];
    }
  }
  for (auto& row : k) {
    for (double& v : row) v /= sum;
  }
  return k;
}

inline RealPlane gaussian_blur(const RealPlane& plane, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  return conv2d_reflect(plane, gaussian_kernel2d(sigma, radius));
}

inline RealPlane decimate2(const RealPlane& plane) {
  RealPlane out((plane.width() + 1) / 2, (plane.height() + 1) / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.at(y, x) = plane.at(2 * y, 2 * x);
    }
  }
  return out;
}

// VIF at one scale with dense 2-D window sums; 9-tap sigma-1.5 window,
// noise variance 2.0.
inline double vif_scale(RealPlane ref, RealPlane dist, int scale) {
  const auto window = gaussian_kernel2d(1.5, 4);
  for (int k = 0; k < scale; ++k) {
    ref = decimate2(conv2d_reflect(ref, window));
    dist = decimate2(conv2d_reflect(dist, window));
  }
  const int h = ref.height();
  const int w = ref.width();
  double num = 0.0;
  double den = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double mr = 0.0, md = 0.0, mrr = 0.0, mdd = 0.0, mrd = 0.0;
      for (int dy = -4; dy <= 4; ++dy) {
        for (int dx = -4; dx <= 4; ++dx) {
          const double wgt = window[dy + 4][dx + 4];
          const double r = ref.at(reflect(y + dy, h), reflect(x + dx, w));
          const double d = dist.at(reflect(y + dy, h), reflect(x + dx, w));
          mr += wgt * r;
          md += wgt * d;
          mrr += wgt * r * r;
          mdd += wgt * d * d;
          mrd += wgt * r * d;
        }
      }
      double var_r = std::max(0.0, mrr - mr * mr);
      double var_d = std::max(0.0, mdd - md * md);
      const double cov = mrd - mr * md;
      double g = cov / (var_r + 1e-10);
      if (g < 0.0) g = 0.0;
      double var_v = var_d - g * cov;
      if (var_v < 1e-10) var_v = 1e-10;
      num += std::log2(1.0 + g * g * var_r / (var_v + 2.0));
      den += std::log2(1.0 + var_r / 2.0);
    }
  }
  return den < 1e-6 * (h * w) ? 1.0 : num / den;
}

// Daubechies-2 analysis filters as decimal literals.
inline const std::vector<double>& db2_dec_lo() {
  static const std::vector<double> k = {-0.12940952255092145, 0.22414386804185735,
                                        0.836516303737469, 0.48296291314469025};
  return k;
}
inline const std::vector<double>& db2_dec_hi() {
  static const std::vector<double> k = {-0.48296291314469025, 0.836516303737469,
                                        -0.22414386804185735,
                                        -0.12940952255092145};
  return k;
}

// One DWT analysis pass along rows with explicitly built extended rows.
inline void dwt_rows(const RealPlane& in, RealPlane* lo_out, RealPlane* hi_out) {
  const int w = in.width();
  const int h = in.height();
  const int ow = (w + 1) / 2;
  *lo_out = RealPlane(ow, h);
  *hi_out = RealPlane(ow, h);
  const auto& lo = db2_dec_lo();
  const auto& hi = db2_dec_hi();
  for (int y = 0; y < h; ++y) {
    std::vector<double> ext(w + 4);
    for (int i = -1; i <= w + 2; ++i) ext[i + 1] = in.at(y, reflect(i, w));
    for (int k = 0; k < ow; ++k) {
      double a = 0.0, d = 0.0;
      for (int m = 0; m < 4; ++m) {
        a += lo[m] * ext[2 * k + m];
        d += hi[m] * ext[2 * k + m];
      }
      lo_out->at(y, k) = a;
      hi_out->at(y, k) = d;
    }
  }
}

inline RealPlane transpose(const RealPlane& in) {
  RealPlane out(in.height(), in.width());
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) out.at(x, y) = in.at(y, x);
  }
  return out;
}

struct DwtBands {
  RealPlane ll, lh, hl, hh;
};

inline DwtBands dwt2(const RealPlane& in) {
  RealPlane row_lo, row_hi;
  dwt_rows(in, &row_lo, &row_hi);
  RealPlane ll_t, lh_t, hl_t, hh_t;
  dwt_rows(transpose(row_lo), &ll_t, &lh_t);
  dwt_rows(transpose(row_hi), &hl_t, &hh_t);
  return {transpose(ll_t), transpose(lh_t), transpose(hl_t), transpose(hh_t)};
}

inline double dlm(const RealPlane& ref, const RealPlane& dist) {
  RealPlane o = ref, t = dist;
  double restored = 0.0, original = 0.0;
  for (int level = 0; level < 4; ++level) {
    const DwtBands ob = dwt2(o);
    const DwtBands tb = dwt2(t);
    const RealPlane* os[] = {&ob.lh, &ob.hl, &ob.hh};
    const RealPlane* ts[] = {&tb.lh, &tb.hl, &tb.hh};
    for (int s = 0; s < 3; ++s) {
      for (int y = 1; y + 1 < os[s]->height(); ++y) {
        for (int x = 1; x + 1 < os[s]->width(); ++x) {
          const double ov = os[s]->at(y, x);
          const double tv = ts[s]->at(y, x);
          double r = 0.0;
          if ((ov > 0 && tv > 0) || (ov < 0 && tv < 0)) {
            r = std::min(std::abs(ov), std::abs(tv));
          }
          restored += r * r * r;
          original += std::abs(ov) * std::abs(ov) * std::abs(ov);
        }
      }
    }
    o = ob.ll;
    t = tb.ll;
  }
  if (original <= 1e-18) return 1.0;
  const double v = std::cbrt(restored) / std::cbrt(original);
  return std::min(1.0, std::max(0.0, v));
}

inline double svr_predict(const std::vector<double>& x,
                          const std::vector<std::vector<double>>& svs,
                          const std::vector<double>& coefs, double gamma,
                          double bias) {
  double acc = bias;
  for (std::size_t i = 0; i < svs.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      d2 += (x[k] - svs[i][k]) * (x[k] - svs[i][k]);
    }
    acc += coefs[i] * std::exp(-gamma * d2);
  }
  return acc;
}

// Fronts by repeated scan: peel off the set not dominated by any survivor.
inline std::vector<std::vector<std::size_t>> nondominated_fronts(
    const std::vector<std::vector<double>>& objectives) {
  auto dominates = [](const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > b[i]) return false;
      if (a[i] < b[i]) strict = true;
    }
    return strict;
  };
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<bool> assigned(objectives.size(), false);
  std::size_t remaining = objectives.size();
  while (remaining > 0) {
    std::vector<std::size_t> front;
    for (std::size_t p = 0; p < objectives.size(); ++p) {
      if (assigned[p]) continue;
      bool dominated = false;
      for (std::size_t q = 0; q < objectives.size(); ++q) {
        if (q == p || assigned[q]) continue;
        if (dominates(objectives[q], objectives[p])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) front.push_back(p);
    }
    for (std::size_t p : front) assigned[p] = true;
    remaining -= front.size();
    fronts.push_back(std::move(front));
  }
  return fronts;
}

inline Frame unsharp(const Frame& frame, double radius, double amount) {
  const RealPlane in = vqlab::to_real(frame.luma);
  const RealPlane blurred = gaussian_blur(in, radius);
  Frame out = frame;
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < in.width(); ++x) {
      const double v =
          in.at(y, x) + amount * (in.at(y, x) - blurred.at(y, x));
      long long s = std::llround(v);
      if (s < 0) s = 0;
      if (s > frame.max_value()) s = frame.max_value();
      out.luma.at(y, x) = static_cast<std::uint16_t>(s);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// random inputs

inline RealPlane random_plane(int w, int h, vqlab::SplitMix64& rng, double lo = 0.0,
                              double hi = 255.0) {
  RealPlane p(w, h);
  for (double& v : p.samples()) v = lo + (hi - lo) * rng.next_double();
  return p;
}

// Blurred noise around mid-gray; a stand-in for natural texture.
inline RealPlane random_texture(int w, int h, vqlab::SplitMix64& rng,
                                double amplitude = 40.0) {
  RealPlane noise = random_plane(w, h, rng, -1.0, 1.0);
  RealPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0, wsum = 0.0;
      for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
          const double wgt = std::exp(-(dy * dy + dx * dx) / 2.0);
          acc += wgt * noise.at(reflect(y + dy, h), reflect(x + dx, w));
          wsum += wgt;
        }
      }
      out.at(y, x) = 128.0 + amplitude * acc / wsum;
    }
  }
  return out;
}

}  // namespace oracle

#endif  // VQLAB_TESTS_ORACLES_HPP_
