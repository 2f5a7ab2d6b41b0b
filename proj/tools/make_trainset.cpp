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
// Emits the feature table used to fit the bundled score model: synthetic
// reference clips crossed with a grid of degradations (blur, noise) and
// enhancements (contrast gain, unsharp, equalization). One CSV row per
// frame; scripts/fit_model.py assigns labels and trains the regressor.

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "vqlab/enhance.hpp"
#include "vqlab/report.hpp"
#include "vqlab/synthetic.hpp"
#include "vqlab/vmaf_features.hpp"

namespace {

struct Variant {
  std::string kind;
  double p1 = 0.0;
  double p2 = 0.0;
  vqlab::Clip clip;
};

std::vector<Variant> distortions(const vqlab::Clip& ref, std::uint64_t seed) {
  std::vector<Variant> out;
  out.push_back({"identity", 0.0, 0.0, ref});
  for (double sigma : {0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
    out.push_back({"blur", sigma, 0.0, vqlab::distort_blur(ref, sigma)});
  }
  for (double stddev : {2.0, 5.0, 10.0, 20.0}) {
    out.push_back(
        {"noise", stddev, 0.0, vqlab::distort_noise(ref, stddev, seed + 1)});
  }
  for (double factor : {0.9, 0.96, 1.02, 1.05, 1.1, 1.2, 1.3}) {
    out.push_back({"contrast", factor, 0.0, vqlab::distort_contrast(ref, factor)});
  }
  for (double radius : {1.0, 3.0, 6.0, 9.0}) {
    for (double amount : {0.05, 0.1, 0.2, 0.4}) {
      out.push_back({"unsharp", radius, amount,
                     vqlab::apply_transform(
                         ref, vqlab::UnsharpMaskParams{radius, amount})});
    }
  }
  for (double clip_limit : {0.001, 0.0015, 0.002, 0.004, 0.01, 0.05}) {
    out.push_back({"histeq", clip_limit, 0.0,
                   vqlab::apply_transform(ref, vqlab::HistEqParams{8, clip_limit})});
  }
  out.push_back({"blurnoise", 1.0, 5.0,
                 vqlab::distort_noise(vqlab::distort_blur(ref, 1.0), 5.0, seed + 2)});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_path = argc > 1 ? argv[1] : "trainset.csv";

  std::vector<std::pair<std::string, vqlab::Clip>> refs;
  refs.emplace_back("texture12a", vqlab::make_texture_clip(3, 128, 128, 12.0, 7));
  refs.emplace_back("texture25a", vqlab::make_texture_clip(3, 128, 128, 25.0, 8));
  refs.emplace_back("texture25b", vqlab::make_texture_clip(3, 128, 128, 25.0, 9));
  refs.emplace_back("texture40a", vqlab::make_texture_clip(3, 128, 128, 40.0, 10));
  refs.emplace_back("lowcontrast", vqlab::make_low_contrast_clip(3, 192, 108, 11));
  refs.emplace_back("contrasted", vqlab::make_contrasted_clip(3, 192, 108, 23));
  // fast pans stretch the motion feature far beyond the calm clips above
  refs.emplace_back("fastpan12", vqlab::make_contrasted_clip(3, 192, 108, 31, 12));
  refs.emplace_back("fastpan36", vqlab::make_contrasted_clip(3, 192, 108, 37, 36));

  std::ofstream out(out_path, std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", out_path.c_str());
    return 1;
  }
  out << "ref,kind,p1,p2,frame,vif_scale0,vif_scale1,vif_scale2,vif_scale3,"
         "dlm,motion\n";

  std::uint64_t seed = 1000;
  for (const auto& [ref_name, ref] : refs) {
    for (const Variant& variant : distortions(ref, seed += 10)) {
      const auto features = vqlab::extract_features(ref, variant.clip, 4);
      for (std::size_t i = 0; i < features.size(); ++i) {
        out << ref_name << "," << variant.kind << ","
            << vqlab::fmt_fixed(variant.p1, 4) << ","
            << vqlab::fmt_fixed(variant.p2, 4) << "," << i;
        for (const auto& name : vqlab::feature_field_names()) {
          out << "," << vqlab::fmt_fixed(vqlab::feature_by_name(features[i], name), 9);
        }
        out << "\n";
      }
      std::printf("%s/%s(%.3f,%.3f): %zu frames\n", ref_name.c_str(),
                  variant.kind.c_str(), variant.p1, variant.p2, features.size());
    }
  }
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}
