# Copyright 2026 The vqlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fits the bundled score model from a make_trainset feature table.

Offline step, run once; the resulting JSON is frozen under data/models/.

    build/tools/make_trainset trainset.csv
    python3 scripts/fit_model.py trainset.csv data/models/desk.json

Each feature row gets a pseudo-quality label from its distortion kind and
strength: degradations (blur, noise) fall off steeply, while mild contrast
enhancement is rewarded above the pristine level, mirroring how the fused
metric behaves on enhanced content. The regressor therefore inherits the
bias this project studies: it ranks mild sharpening or equalization above
the untouched clip while degradations score far lower.
"""

import json
import math
import sys

import numpy as np
from sklearn.svm import SVR

FEATURES = ["vif_scale0", "vif_scale1", "vif_scale2", "vif_scale3", "dlm", "motion"]

# Fixed feature normalization: x' = slope * x + intercept (then clamp).
NORM = {
    "vif_scale0": {"slope": 1.0 / 1.8, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.0},
    "vif_scale1": {"slope": 1.0 / 1.8, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.0},
    "vif_scale2": {"slope": 1.0 / 1.8, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.0},
    "vif_scale3": {"slope": 1.0 / 1.8, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.0},
    "dlm": {"slope": 1.0, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.0},
    "motion": {"slope": 1.0 / 25.0, "intercept": 0.0, "clip_low": 0.0, "clip_high": 1.5},
}

SCORE_SLOPE = 0.01  # y_norm = y / 100
SCORE_INTERCEPT = 0.0
BASE = 96.5  # pristine-content label


def label(kind: str, p1: float, p2: float) -> float:
    if kind == "identity":
        return BASE
    if kind == "blur":
        return BASE - 60.0 * (1.0 - math.exp(-0.55 * p1))
    if kind == "noise":
        return max(30.0, BASE - 2.8 * p1)
    if kind == "contrast":
        if p1 >= 1.0:
            return BASE + 25.0 * (p1 - 1.0)
        return BASE - 35.0 * (1.0 - p1)
    if kind == "unsharp":
        return BASE + 18.0 * min(p2, 0.45) * (1.0 - math.exp(-p1 / 3.0))
    if kind == "histeq":
        bump = 2.2 * math.exp(-((math.log(p1) - math.log(0.0015)) ** 2) / 1.5)
        return BASE + bump - 280.0 * p1
    if kind == "blurnoise":
        return BASE - 60.0 * (1.0 - math.exp(-0.55 * p1)) - 2.8 * p2
    raise ValueError(f"unknown kind {kind}")


def normalize(row: np.ndarray) -> np.ndarray:
    out = np.empty(len(FEATURES))
    for i, name in enumerate(FEATURES):
        spec = NORM[name]
        v = spec["slope"] * row[i] + spec["intercept"]
        v = min(max(v, spec["clip_low"]), spec["clip_high"])
        out[i] = v
    return out


def main() -> None:
    trainset = sys.argv[1] if len(sys.argv) > 1 else "trainset.csv"
    out_path = sys.argv[2] if len(sys.argv) > 2 else "data/models/desk.json"

    rows = []
    with open(trainset) as f:
        header = f.readline().strip().split(",")
        col = {name: i for i, name in enumerate(header)}
        for line in f:
            parts = line.strip().split(",")
            feats = np.array([float(parts[col[n]]) for n in FEATURES])
            y = label(parts[col["kind"]], float(parts[col["p1"]]),
                      float(parts[col["p2"]]))
            rows.append((normalize(feats), y))

    x = np.stack([r[0] for r in rows])
    y = np.array([r[1] for r in rows]) * SCORE_SLOPE + SCORE_INTERCEPT

    svr = SVR(kernel="rbf", C=30.0, epsilon=0.008, gamma=1.0)
    svr.fit(x, y)
    pred = svr.predict(x)
    err = (pred - y) / SCORE_SLOPE
    print(f"rows={len(rows)} n_sv={len(svr.support_)} "
          f"fit rmse={np.sqrt(np.mean(err ** 2)):.3f} max|err|={np.max(np.abs(err)):.3f}")

    model = {
        "version": "vqlab-svr-1",
        "feature_names": FEATURES,
        "norm": [NORM[n] for n in FEATURES],
        "gamma": float(svr._gamma) if hasattr(svr, "_gamma") else 1.0,
        "bias": float(svr.intercept_[0]),
        "support_vectors": [[float(v) for v in sv] for sv in svr.support_vectors_],
        "dual_coefs": [float(c) for c in svr.dual_coef_[0]],
        "score_slope": SCORE_SLOPE,
        "score_intercept": SCORE_INTERCEPT,
        "score_clip": [0.0, 100.0],
        "score_transform": None,
    }
    with open(out_path, "w") as f:
        json.dump(model, f, indent=2)
        f.write("\n")
    print(f"wrote {out_path}")

    # cross-check: JSON-driven inference must match sklearn
    def predict_json(feats_norm: np.ndarray) -> float:
        sv = np.array(model["support_vectors"])
        coef = np.array(model["dual_coefs"])
        k = np.exp(-model["gamma"] * np.sum((sv - feats_norm) ** 2, axis=1))
        raw = float(np.dot(coef, k) + model["bias"])
        return (raw - SCORE_INTERCEPT) / SCORE_SLOPE

    worst = max(abs(predict_json(xi) - float(pi) / SCORE_SLOPE)
                for xi, pi in zip(x[:50], pred[:50]))
    print(f"json-vs-sklearn max diff (50 rows): {worst:.2e}")

    probes = {
        "identity": np.array([1.0, 1.0, 1.0, 1.0, 1.0, 1.0]),
        "identity m0": np.array([1.0, 1.0, 1.0, 1.0, 1.0, 0.0]),
        "identity m5": np.array([1.0, 1.0, 1.0, 1.0, 1.0, 5.0]),
        "low unsharp(7,.2)": np.array([1.155, 1.088, 1.048, 1.036, 0.9997, 1.13]),
        "low unsharp(7,.4)": np.array([1.267, 1.153, 1.088, 1.066, 0.9999, 1.20]),
        "con histeq(.001)": np.array([1.038, 1.004, 0.982, 0.978, 0.9966, 4.90]),
        "con histeq(.0015)": np.array([1.049, 0.995, 0.962, 0.957, 0.9956, 5.02]),
        "blur1": np.array([0.485, 0.824, 0.949, 0.980, 0.680, 1.04]),
        "blur2": np.array([0.120, 0.520, 0.780, 0.912, 0.361, 1.04]),
        "blur4": np.array([0.010, 0.190, 0.500, 0.719, 0.136, 1.04]),
    }
    for name, feats in probes.items():
        print(f"  {name}: {predict_json(normalize(feats)):.2f}")


if __name__ == "__main__":
    main()
