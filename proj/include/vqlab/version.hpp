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

#ifndef VQLAB_VERSION_HPP_
#define VQLAB_VERSION_HPP_

#include <cstdio>
#include <string>

#include "vqlab/metrics.hpp"
#include "vqlab/utils.hpp"
#include "vqlab/vmaf_features.hpp"

namespace vqlab {

inline constexpr const char* kVersion = "0.1.0";

// Canonical description of every constant that shapes metric output. The
// hash of this string is stamped into reports; two runs are comparable only
// when their engine configurations match.
inline std::string engine_config_string() {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "vqlab=%s;vif(taps=%d,sigma=%.6f,noise=%.6f,eps=%g,scales=4);"
                "dlm(levels=%d,wavelet=db2,border=1);motion(sigma=%.6f);"
                "ssim(taps=%d,sigma=%.6f,k1=0.01,k2=0.03);psnr(cap=%.1f);"
                "pooling=mean;rounding=half-away;clahe=tile-grid",
                kVersion, FeatureConfig::kVifWindowTaps,
                FeatureConfig::kVifWindowSigma, FeatureConfig::kVifNoiseVariance,
                FeatureConfig::kVifEpsilon, FeatureConfig::kDlmLevels,
                FeatureConfig::kMotionBlurSigma, kSsimWindowTaps,
                kSsimWindowSigma, kPsnrCapDb);
  return buf;
}

inline std::string engine_config_hash() {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(engine_config_string())));
  return buf;
}

}  // namespace vqlab

#endif  // VQLAB_VERSION_HPP_
