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

#include "saft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_sizes(const FrameTrack& pred, const GroundTruth& truth) {
  pred.validate();
  truth.validate();
  if (pred.frames() != truth.frames()) {
    throw std::invalid_argument(
        "prediction and reference have different frame counts (" +
        std::to_string(pred.frames()) + " vs " +
        std::to_string(truth.frames()) + ")");
  }
}

}  // namespace

int EvalConfig::tolerance_px() const {
  return static_cast<int>(
      std::lround(camera.image_width * tolerance_deg / camera.fov_deg));
}

std::vector<double> sigmoid_thresholds(int n) {
  if (n < 3) {
    throw std::invalid_argument("sigmoid_thresholds: n must be >= 3");
  }
  std::vector<double> t(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double z = -6.0 + 12.0 * k / (n - 1);
    t[k] = 1.0 / (1.0 + std::exp(-z));
  }
  return t;
}

std::vector<ThresholdCounts> match_frames(const FrameTrack& pred,
                                          const GroundTruth& truth,
                                          const EvalConfig& cfg) {
  check_sizes(pred, truth);
  const double tol_px = cfg.tolerance_px();
  const auto thresholds = sigmoid_thresholds(cfg.n_thresholds);
  std::vector<ThresholdCounts> counts(thresholds.size());
  for (size_t k = 0; k < thresholds.size(); ++k) {
    counts[k].threshold = thresholds[k];
    for (size_t i = 0; i < pred.frames(); ++i) {
      const bool predicted = pred.confidence[i] >= thresholds[k];
      const bool actual = truth.active[i] != 0;
      bool hit = false;
      if (predicted && actual) {
        const double err_px = std::abs(pred.x_norm[i] - truth.x_norm[i]) *
                              cfg.camera.image_width;
        hit = err_px <= tol_px;
      }
      if (hit) {
        ++counts[k].tp;
      } else {
        if (predicted) ++counts[k].fp;
        if (actual) ++counts[k].fn;
      }
    }
  }
  return counts;
}

std::vector<PrPoint> pr_curve(const std::vector<ThresholdCounts>& counts) {
  std::vector<PrPoint> curve(counts.size());
  for (size_t k = 0; k < counts.size(); ++k) {
    const auto& c = counts[k];
    curve[k].threshold = c.threshold;
    curve[k].precision =
        c.tp + c.fp > 0 ? static_cast<double>(c.tp) / (c.tp + c.fp) : 1.0;
    curve[k].recall =
        c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 1.0;
  }
  return curve;
}

double average_precision(const std::vector<PrPoint>& curve) {
  if (curve.empty()) {
    throw std::invalid_argument("average_precision: empty curve");
  }
  std::vector<std::pair<double, double>> pts;  // (recall, precision)
  pts.reserve(curve.size());
  for (const auto& p : curve) pts.emplace_back(p.recall, p.precision);
  std::sort(pts.begin(), pts.end());

  // Precision envelope: best precision at or beyond each recall.
  std::vector<double> envelope(pts.size());
  double best = 0.0;
  for (size_t i = pts.size(); i-- > 0;) {
    best = std::max(best, pts[i].second);
    envelope[i] = best;
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first > prev_recall) {
      ap += (pts[i].first - prev_recall) * envelope[i];
      prev_recall = pts[i].first;
    }
  }
  return ap;
}

EvalResult summarize(const FrameTrack& pred, const GroundTruth& truth,
                     const EvalConfig& cfg) {
  check_sizes(pred, truth);
  EvalResult result;
  const auto counts = match_frames(pred, truth, cfg);
  result.curve = pr_curve(counts);
  result.ap = average_precision(result.curve);

  result.f1 = 0.0;
  for (const auto& p : result.curve) {
    if (p.precision + p.recall > 0.0) {
      result.f1 = std::max(
          result.f1, 2.0 * p.precision * p.recall / (p.precision + p.recall));
    }
  }

  const double tol_px = cfg.tolerance_px();
  long disagreements = 0;
  long tps = 0;
  double err_sum = 0.0;
  for (size_t i = 0; i < pred.frames(); ++i) {
    const bool predicted = pred.confidence[i] >= cfg.binarize_at;
    const bool actual = truth.active[i] != 0;
    if (predicted != actual) ++disagreements;
    if (predicted && actual) {
      const double err_px = std::abs(pred.x_norm[i] - truth.x_norm[i]) *
                            cfg.camera.image_width;
      if (err_px <= tol_px) {
        ++tps;
        err_sum += err_px;
      }
    }
  }
  result.det_err = pred.frames() > 0
                       ? static_cast<double>(disagreements) / pred.frames()
                       : 0.0;
  result.ad_px = tps > 0 ? err_sum / tps : 0.0;
  return result;
}

double masked_sse_loss(const FrameTrack& pred, const GroundTruth& truth) {
  check_sizes(pred, truth);
  const auto& mask = truth.labeled_mask();
  double loss = 0.0;
  for (size_t i = 0; i < pred.frames(); ++i) {
    if (mask[i]) {
      const double dx = pred.x_norm[i] - truth.x_norm[i];
      loss += dx * dx;
    }
    const double dc =
        pred.confidence[i] - (truth.active[i] ? 1.0 : 0.0);
    loss += dc * dc;
  }
  return loss;
}

std::string format_eval_report(const EvalResult& result,
                               const EvalConfig& cfg) {
  std::ostringstream out;
  out << "ap=" << fmt_num(result.ap) << "\n";
  out << "f1=" << fmt_num(result.f1) << "\n";
  out << "ad_px=" << fmt_num(result.ad_px) << "\n";
  out << "det_err=" << fmt_num(result.det_err) << "\n";
  out << "tolerance_deg=" << fmt_num(cfg.tolerance_deg) << "\n";
  out << "tolerance_px=" << cfg.tolerance_px() << "\n";
  out << "fov_deg=" << fmt_num(cfg.camera.fov_deg) << "\n";
  out << "image_width=" << cfg.camera.image_width << "\n";
  out << "n_thresholds=" << cfg.n_thresholds << "\n";
  out << "binarize_at=" << fmt_num(cfg.binarize_at) << "\n";
  return out.str();
}

void write_eval_report(const std::string& path, const EvalResult& result,
                       const EvalConfig& cfg) {
  write_file_atomic(path, format_eval_report(result, cfg));
}

std::string format_pr_csv(const std::vector<PrPoint>& curve) {
  std::ostringstream out;
  out << "threshold,precision,recall\n";
  for (const auto& p : curve) {
    out << fmt_num(p.threshold) << "," << fmt_num(p.precision) << ","
        << fmt_num(p.recall) << "\n";
  }
  return out.str();
}

void write_pr_csv(const std::string& path, const std::vector<PrPoint>& curve) {
  write_file_atomic(path, format_pr_csv(curve));
}

}  // namespace saft
