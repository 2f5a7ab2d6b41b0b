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
// Deterministic synthetic clips. These stand in for the study's source
// sequences, which cannot be redistributed: a "low contrast" gradient with
// mild texture and a "contrasted" blocks-and-noise scene, plus plain
// texture clips and distortion helpers for tests and model fitting.

#ifndef VQLAB_SYNTHETIC_HPP_
#define VQLAB_SYNTHETIC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "vqlab/enhance.hpp"
#include "vqlab/filters.hpp"
#include "vqlab/frame.hpp"
#include "vqlab/utils.hpp"

namespace vqlab {

namespace detail {

inline RealPlane smooth_noise(int width, int height, double sigma,
                              SplitMix64& rng) {
  RealPlane noise(width, height);
  for (double& v : noise.samples()) v = 2.0 * rng.next_double() - 1.0;
  RealPlane smoothed = gaussian_blur(noise, sigma);
  // rescale to [-1, 1]
  double peak = 0.0;
  for (double v : smoothed.samples()) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : smoothed.samples()) v /= peak;
  }
  return smoothed;
}

inline VideoMeta synth_meta(int width, int height) {
  VideoMeta meta;
  meta.width = width;
  meta.height = height;
  meta.frame_rate = {25, 1};
  meta.bit_depth = 8;
  meta.chroma_format = ChromaFormat::k420;
  return meta;
}

inline Clip assemble_clip(const VideoMeta& meta,
                          const std::vector<RealPlane>& lumas) {
  Clip clip;
  clip.meta = meta;
  for (const RealPlane& luma : lumas) {
    Frame f = make_frame(meta);
    f.luma = to_pixels(luma, meta.max_value());
    clip.frames.push_back(std::move(f));
  }
  return clip;
}

}  // namespace detail

// Smooth horizontal gradient, a slowly drifting sine band and mild static
// texture; luma stays well inside the 8-bit range.
inline Clip make_low_contrast_clip(int frames = 16, int width = 192,
                                   int height = 108, std::uint64_t seed = 11) {
  const VideoMeta meta = detail::synth_meta(width, height);
  SplitMix64 rng(seed);
  const RealPlane texture = detail::smooth_noise(width, height, 1.5, rng);
  std::vector<RealPlane> lumas;
  for (int t = 0; t < frames; ++t) {
    RealPlane luma(width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double gradient = 28.0 * x / (width - 1);
        const double band =
            10.0 * std::sin(2.0 * std::numbers::pi * (y + 1.5 * t) / 48.0);
        luma.at(y, x) = 112.0 + gradient + band + 6.0 * texture.at(y, x);
      }
    }
    lumas.push_back(std::move(luma));
  }
  return detail::assemble_clip(meta, lumas);
}

// High-contrast block mosaic with noise and a sliding seam; exercises the
// contrasted-content regime where equalization costs more SSIM. The pan
// speed controls how much temporal difference the clip carries.
inline Clip make_contrasted_clip(int frames = 16, int width = 192,
                                 int height = 108, std::uint64_t seed = 23,
                                 int pan_pixels_per_frame = 2) {
  const VideoMeta meta = detail::synth_meta(width, height);
  SplitMix64 rng(seed);
  constexpr int kBlock = 24;
  const int bw = (width + kBlock - 1) / kBlock;
  const int bh = (height + kBlock - 1) / kBlock;
  std::vector<double> levels(static_cast<std::size_t>(bw) * bh);
  for (double& v : levels) v = 30.0 + 190.0 * rng.next_double();
  const RealPlane grain = detail::smooth_noise(width, height, 0.8, rng);
  std::vector<RealPlane> lumas;
  for (int t = 0; t < frames; ++t) {
    RealPlane luma(width, height);
    const int shift = pan_pixels_per_frame * t;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const int bx = ((x + shift) % width) / kBlock;
        const int by = y / kBlock;
        const double base = levels[static_cast<std::size_t>(by) * bw + bx];
        luma.at(y, x) = base + 12.0 * grain.at(y, x);
      }
    }
    lumas.push_back(std::move(luma));
  }
  return detail::assemble_clip(meta, lumas);
}

// Mid-gray random texture with per-frame jitter; the workhorse for
// distortion-monotonicity checks.
inline Clip make_texture_clip(int frames = 4, int width = 64, int height = 64,
                              double amplitude = 25.0, std::uint64_t seed = 7) {
  const VideoMeta meta = detail::synth_meta(width, height);
  SplitMix64 rng(seed);
  const RealPlane base = detail::smooth_noise(width, height, 1.0, rng);
  std::vector<RealPlane> lumas;
  for (int t = 0; t < frames; ++t) {
    const RealPlane jitter = detail::smooth_noise(width, height, 1.0, rng);
    RealPlane luma(width, height);
    for (std::size_t i = 0; i < luma.size(); ++i) {
      luma.samples()[i] =
          128.0 + amplitude * base.samples()[i] + 3.0 * jitter.samples()[i];
    }
    lumas.push_back(std::move(luma));
  }
  return detail::assemble_clip(meta, lumas);
}

// Gaussian blur of every luma plane; the canonical degradation.
inline Clip distort_blur(const Clip& clip, double sigma) {
  Clip out;
  out.meta = clip.meta;
  for (const Frame& f : clip.frames) {
    Frame g = f;
    g.luma = to_pixels(gaussian_blur(to_real(f.luma), sigma), f.max_value());
    out.frames.push_back(std::move(g));
  }
  return out;
}

// Additive zero-mean uniform noise of the given standard deviation.
inline Clip distort_noise(const Clip& clip, double stddev, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double half_width = stddev * std::sqrt(3.0);
  Clip out;
  out.meta = clip.meta;
  for (const Frame& f : clip.frames) {
    RealPlane luma = to_real(f.luma);
    for (double& v : luma.samples()) {
      v += half_width * (2.0 * rng.next_double() - 1.0);
    }
    Frame g = f;
    g.luma = to_pixels(luma, f.max_value());
    out.frames.push_back(std::move(g));
  }
  return out;
}

// Scales local contrast around mid-gray; factors above one boost contrast.
inline Clip distort_contrast(const Clip& clip, double factor) {
  const double mid = (clip.meta.max_value() + 1) / 2.0;
  Clip out;
  out.meta = clip.meta;
  for (const Frame& f : clip.frames) {
    RealPlane luma = to_real(f.luma);
    for (double& v : luma.samples()) v = mid + factor * (v - mid);
    Frame g = f;
    g.luma = to_pixels(luma, f.max_value());
    out.frames.push_back(std::move(g));
  }
  return out;
}

}  // namespace vqlab

#endif  // VQLAB_SYNTHETIC_HPP_
