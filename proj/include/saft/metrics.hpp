// Copyright 2026 saft authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAFT_METRICS_HPP
#define SAFT_METRICS_HPP

#include <string>
#include <vector>

#include "saft/geometry.hpp"
#include "saft/tracks.hpp"

namespace saft {

struct EvalConfig {
  double tolerance_deg = 2.0;
  CameraModel camera;
  int n_thresholds = 101;
  double binarize_at = 0.5;

  // The angular tolerance expressed in image columns.
  int tolerance_px() const;
};

// n thresholds sigmoid(-6 + 12 k / (n - 1)), k = 0..n-1: symmetric around
// 0.5, dense near 0 and 1 where confidences cluster. n must be >= 3.
std::vector<double> sigmoid_thresholds(int n);

struct ThresholdCounts {
  double threshold = 0.0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

// Frame matching per threshold: a frame is predicted active when
// confidence >= threshold. A true positive is a predicted-active,
// ground-truth-active frame whose column error in pixels is at most
// tolerance_px() (inclusive); every other predicted-active frame is a false
// positive and every ground-truth-active frame not matched is a false
// negative. Track and truth must have the same frame count.
std::vector<ThresholdCounts> match_frames(const FrameTrack& pred,
                                          const GroundTruth& truth,
                                          const EvalConfig& cfg);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Precision is 1 when nothing is predicted active; recall is 1 when nothing
// is ground-truth active.
std::vector<PrPoint> pr_curve(const std::vector<ThresholdCounts>& counts);

// Area under the precision envelope over recall (the interpolated
// average-precision integral).
double average_precision(const std::vector<PrPoint>& curve);

struct EvalResult {
  double ap = 0.0;
  double f1 = 0.0;         // best F1 over the threshold sweep
  double ad_px = 0.0;      // mean pixel error over TPs at binarize_at
  double det_err = 0.0;    // frame activity disagreement at binarize_at
  std::vector<PrPoint> curve;
};

EvalResult summarize(const FrameTrack& pred, const GroundTruth& truth,
                     const EvalConfig& cfg);

// Sum over frames of mask * (x - x_hat)^2 + (active - confidence)^2, the
// mask being truth.labeled_mask(). The regression target a trained model
// would minimize; exposed for parity checks.
double masked_sse_loss(const FrameTrack& pred, const GroundTruth& truth);

std::string format_eval_report(const EvalResult& result,
                               const EvalConfig& cfg);
void write_eval_report(const std::string& path, const EvalResult& result,
                       const EvalConfig& cfg);
std::string format_pr_csv(const std::vector<PrPoint>& curve);
void write_pr_csv(const std::string& path, const std::vector<PrPoint>& curve);

}  // namespace saft

#endif  // SAFT_METRICS_HPP
