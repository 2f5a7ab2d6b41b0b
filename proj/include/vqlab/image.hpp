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

#ifndef VQLAB_IMAGE_HPP_
#define VQLAB_IMAGE_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "vqlab/errors.hpp"

namespace vqlab {

// Row-major 2-D sample container. at(y, x) addresses row y, column x.
template <typename T>
class Plane {
 public:
  Plane() : width_(0), height_(0) {}
  Plane(int width, int height, T fill = T{})
      : width_(width),
        height_(height),
        samples_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0) {
      throw ShapeError("plane dimensions must be positive");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  T& at(int y, int x) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& at(int y, int x) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  T* row(int y) { return samples_.data() + static_cast<std::size_t>(y) * width_; }
  const T* row(int y) const {
    return samples_.data() + static_cast<std::size_t>(y) * width_;
  }

  std::vector<T>& samples() { return samples_; }
  const std::vector<T>& samples() const { return samples_; }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane& a, const Plane& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.samples_ == b.samples_;
  }

 private:
  int width_;
  int height_;
  std::vector<T> samples_;
};

using PixelPlane = Plane<std::uint16_t>;
using RealPlane = Plane<double>;

// Half-sample symmetric reflection of index i into [0, n): the edge sample
// is mirrored (-1 -> 0, n -> n-1). Unit-sum kernels conserve total mass
// under this extension. Folds repeatedly so it stays valid even when the
// filter radius exceeds the plane size.
inline int reflect_index(int i, int n) {
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return (i < n) ? i : period - 1 - i;
}

// Round half away from zero; the single rounding rule for pixel output.
inline std::int64_t round_half_away(double x) { return std::llround(x); }

inline RealPlane to_real(const PixelPlane& p) {
  RealPlane out(p.width(), p.height());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.samples()[i] = static_cast<double>(p.samples()[i]);
  }
  return out;
}

inline PixelPlane to_pixels(const RealPlane& p, int max_value) {
  PixelPlane out(p.width(), p.height());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::int64_t v = round_half_away(p.samples()[i]);
    if (v < 0) v = 0;
    if (v > max_value) v = max_value;
    out.samples()[i] = static_cast<std::uint16_t>(v);
  }
  return out;
}

}  // namespace vqlab

#endif  // VQLAB_IMAGE_HPP_
