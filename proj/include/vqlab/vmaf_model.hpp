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
// RBF-kernel SVR model file handling and score inference.
//
// Model files are JSON with these fields (all required unless noted):
//   version          "vqlab-svr-1"
//   feature_names    ordered feature list; must name FeatureVector fields
//   norm             per-feature {slope, intercept, clip_low?, clip_high?};
//                    applied as x' = slope*x + intercept, then clamped
//   gamma, bias      RBF kernel parameter (> 0) and regression bias
//   support_vectors  n_sv x n_features matrix in normalized feature space
//   dual_coefs       length n_sv
//   score_slope,     predictions live in normalized score space;
//   score_intercept  score = (raw - score_intercept) / score_slope
//   score_transform  optional {a, b}: score = a + b*score (null to disable)
//   score_clip       [low, high] final clamp, conventionally [0, 100]

#ifndef VQLAB_VMAF_MODEL_HPP_
#define VQLAB_VMAF_MODEL_HPP_

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqlab/errors.hpp"
#include "vqlab/metrics.hpp"
#include "vqlab/vmaf_features.hpp"

namespace vqlab {

inline constexpr const char* kModelFormatVersion = "vqlab-svr-1";

struct FeatureNorm {
  double slope = 1.0;
  double intercept = 0.0;
  std::optional<double> clip_low;
  std::optional<double> clip_high;

  friend bool operator==(const FeatureNorm& a, const FeatureNorm& b) {
    return a.slope == b.slope && a.intercept == b.intercept &&
           a.clip_low == b.clip_low && a.clip_high == b.clip_high;
  }
};

struct ScoreTransform {
  double a = 0.0;
  double b = 1.0;

  friend bool operator==(const ScoreTransform& x, const ScoreTransform& y) {
    return x.a == y.a && x.b == y.b;
  }
};

struct VmafModel {
  std::vector<std::string> feature_names;
  std::vector<FeatureNorm> norm;
  double gamma = 1.0;
  double bias = 0.0;
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> dual_coefs;
  double score_slope = 1.0;
  double score_intercept = 0.0;
  std::optional<ScoreTransform> score_transform;
  double score_clip_low = 0.0;
  double score_clip_high = 100.0;

  std::size_t n_features() const { return feature_names.size(); }

  void validate() const {
    if (feature_names.empty()) throw SchemaError("feature_names is empty");
    for (const auto& name : feature_names) {
      feature_by_name(FeatureVector{}, name);  // throws on unknown names
    }
    if (norm.size() != feature_names.size()) {
      throw SchemaError("norm entries do not match feature count");
    }
    if (!(gamma > 0.0)) throw SchemaError("gamma must be positive");
    if (support_vectors.empty()) throw SchemaError("model has no support vectors");
    for (const auto& sv : support_vectors) {
      if (sv.size() != feature_names.size()) {
        throw SchemaError("support vector length does not match feature count");
      }
    }
    if (dual_coefs.size() != support_vectors.size()) {
      throw SchemaError("dual_coefs length does not match support vector count");
    }
    if (score_slope == 0.0) throw SchemaError("score_slope must be nonzero");
    if (!(score_clip_low < score_clip_high)) {
      throw SchemaError("score_clip must be [low, high] with low < high");
    }
  }

  friend bool operator==(const VmafModel& a, const VmafModel& b) {
    return a.feature_names == b.feature_names && a.norm == b.norm &&
           a.gamma == b.gamma && a.bias == b.bias &&
           a.support_vectors == b.support_vectors &&
           a.dual_coefs == b.dual_coefs && a.score_slope == b.score_slope &&
           a.score_intercept == b.score_intercept &&
           a.score_transform == b.score_transform &&
           a.score_clip_low == b.score_clip_low &&
           a.score_clip_high == b.score_clip_high;
  }
};

struct FrameScore {
  double raw_svr = 0.0;
  double score = 0.0;
};

namespace detail {

inline double json_number(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw SchemaError(std::string("missing or non-numeric field: ") + field);
  }
  return j[field].get<double>();
}

}  // namespace detail

inline VmafModel parse_model_json(const nlohmann::json& j) {
  if (!j.contains("version") || !j["version"].is_string()) {
    throw SchemaError("model file lacks a version string");
  }
  if (j["version"].get<std::string>() != kModelFormatVersion) {
    throw SchemaError("unknown model version: " + j["version"].get<std::string>());
  }
  VmafModel m;
  try {
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& entry : j.at("norm")) {
      FeatureNorm n;
      n.slope = detail::json_number(entry, "slope");
      n.intercept = detail::json_number(entry, "intercept");
      if (entry.contains("clip_low") && !entry["clip_low"].is_null()) {
        n.clip_low = entry["clip_low"].get<double>();
      }
      if (entry.contains("clip_high") && !entry["clip_high"].is_null()) {
        n.clip_high = entry["clip_high"].get<double>();
      }
      m.norm.push_back(n);
    }
    m.gamma = detail::json_number(j, "gamma");
    m.bias = detail::json_number(j, "bias");
    m.support_vectors =
        j.at("support_vectors").get<std::vector<std::vector<double>>>();
    m.dual_coefs = j.at("dual_coefs").get<std::vector<double>>();
    m.score_slope = detail::json_number(j, "score_slope");
    m.score_intercept = detail::json_number(j, "score_intercept");
    const auto& clip = j.at("score_clip");
    if (!clip.is_array() || clip.size() != 2) {
      throw SchemaError("score_clip must be [low, high]");
    }
    m.score_clip_low = clip[0].get<double>();
    m.score_clip_high = clip[1].get<double>();
    if (j.contains("score_transform") && !j["score_transform"].is_null()) {
      ScoreTransform t;
      t.a = detail::json_number(j["score_transform"], "a");
      t.b = detail::json_number(j["score_transform"], "b");
      m.score_transform = t;
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed model file: ") + e.what());
  }
  m.validate();
  return m;
}

inline VmafModel parse_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
  }
  return parse_model_json(j);
}

inline nlohmann::json model_to_json(const VmafModel& m) {
  nlohmann::json j;
  j["version"] = kModelFormatVersion;
  j["feature_names"] = m.feature_names;
  j["norm"] = nlohmann::json::array();
  for (const auto& n : m.norm) {
    nlohmann::json entry;
    entry["slope"] = n.slope;
    entry["intercept"] = n.intercept;
    entry["clip_low"] = n.clip_low ? nlohmann::json(*n.clip_low) : nullptr;
    entry["clip_high"] = n.clip_high ? nlohmann::json(*n.clip_high) : nullptr;
    j["norm"].push_back(entry);
  }
  j["gamma"] = m.gamma;
  j["bias"] = m.bias;
  j["support_vectors"] = m.support_vectors;
  j["dual_coefs"] = m.dual_coefs;
  j["score_slope"] = m.score_slope;
  j["score_intercept"] = m.score_intercept;
  j["score_clip"] = {m.score_clip_low, m.score_clip_high};
  j["score_transform"] =
      m.score_transform
          ? nlohmann::json({{"a", m.score_transform->a}, {"b", m.score_transform->b}})
          : nlohmann::json(nullptr);
  return j;
}

inline void serialize_model(const VmafModel& m, const std::string& path) {
  m.validate();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw WriteError("cannot open for writing: " + path);
  out << model_to_json(m).dump(2) << "\n";
  if (!out) throw WriteError("write failed: " + path);
}

// Per-feature affine map plus optional clamping, ordered by feature_names.
inline std::vector<double> normalize_features(const FeatureVector& fv,
                                              const VmafModel& model) {
  std::vector<double> x(model.n_features());
  for (std::size_t i = 0; i < model.n_features(); ++i) {
    const FeatureNorm& n = model.norm[i];
    double v = n.slope * feature_by_name(fv, model.feature_names[i]) + n.intercept;
    if (n.clip_low && v < *n.clip_low) v = *n.clip_low;
    if (n.clip_high && v > *n.clip_high) v = *n.clip_high;
    x[i] = v;
  }
  return x;
}

// RBF kernel sum: sum_i coef_i * exp(-gamma * ||x - sv_i||^2) + bias.
inline double svr_predict(const std::vector<double>& x, const VmafModel& model) {
  if (x.size() != model.n_features()) {
    throw ShapeError("feature vector length does not match the model");
  }
  double acc = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    const auto& sv = model.support_vectors[i];
    double dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = x[k] - sv[k];
      dist2 += d * d;
    }
    acc += model.dual_coefs[i] * std::exp(-model.gamma * dist2);
  }
  return acc;
}

inline FrameScore predict_frame(const FeatureVector& fv, const VmafModel& model) {
  FrameScore fs;
  fs.raw_svr = svr_predict(normalize_features(fv, model), model);
  double score = (fs.raw_svr - model.score_intercept) / model.score_slope;
  if (model.score_transform) {
    score = model.score_transform->a + model.score_transform->b * score;
  }
  if (score < model.score_clip_low) score = model.score_clip_low;
  if (score > model.score_clip_high) score = model.score_clip_high;
  fs.score = score;
  return fs;
}

inline MetricScore score_features(const std::vector<FeatureVector>& features,
                                  const VmafModel& model) {
  std::vector<double> per_frame(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    per_frame[i] = predict_frame(features[i], model).score;
  }
  return make_score(MetricId::kVmaf, std::move(per_frame));
}

inline MetricScore score_clip_pair(const Clip& ref, const Clip& dist,
                                   const VmafModel& model, int threads = 1) {
  return score_features(extract_features(ref, dist, threads), model);
}

}  // namespace vqlab

#endif  // VQLAB_VMAF_MODEL_HPP_
