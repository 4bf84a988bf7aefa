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

// Independent reference implementations used only by tests. Everything here
// is written from first principles (naive algorithms, closed forms) so the
// library cannot be checked against itself.

#ifndef SAFT_TESTS_ORACLES_HPP
#define SAFT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

// Naive O(n^2) DFT, full two-sided spectrum.
inline std::vector<std::complex<double>> dft(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t m = 0; m < n; ++m) {
      const double angle = -2.0 * M_PI * static_cast<double>(k) *
                           static_cast<double>(m) / static_cast<double>(n);
      acc += x[m] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

// Welch power spectral density: Hann-windowed segments, 50% overlap,
// averaged periodograms. Returns (normalized frequency k/seg, power) for
// k = 1..seg/2-1.
inline std::vector<std::pair<double, double>> welch_psd(
    const std::vector<double>& x, size_t seg) {
  std::vector<double> window(seg);
  for (size_t i = 0; i < seg; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / seg);
  }
  const size_t hop = seg / 2;
  std::vector<double> accum(seg / 2, 0.0);
  size_t count = 0;
  for (size_t start = 0; start + seg <= x.size(); start += hop) {
    for (size_t k = 1; k < seg / 2; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (size_t m = 0; m < seg; ++m) {
        const double angle = -2.0 * M_PI * static_cast<double>(k) *
                             static_cast<double>(m) / static_cast<double>(seg);
        acc += window[m] * x[start + m] *
               std::complex<double>(std::cos(angle), std::sin(angle));
      }
      accum[k] += std::norm(acc);
    }
    ++count;
  }
  std::vector<std::pair<double, double>> psd;
  for (size_t k = 1; k < seg / 2; ++k) {
    psd.emplace_back(static_cast<double>(k) / static_cast<double>(seg),
                     accum[k] / static_cast<double>(count));
  }
  return psd;
}

// Least-squares line y = intercept + slope * x.
inline std::pair<double, double> fit_line(const std::vector<double>& xs,
                                          const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {intercept, slope};
}

// Spectral slope of a signal in dB per octave, fitted over
// [f_lo, f_hi] (normalized frequencies).
inline double psd_slope_db_per_octave(const std::vector<double>& x, size_t seg,
                                      double f_lo, double f_hi) {
  const auto psd = welch_psd(x, seg);
  std::vector<double> log2f, db;
  for (const auto& [f, p] : psd) {
    if (f < f_lo || f > f_hi || p <= 0.0) continue;
    log2f.push_back(std::log2(f));
    db.push_back(10.0 * std::log10(p));
  }
  return fit_line(log2f, db).second;
}

inline double pearson(const std::vector<double>& a,
                      const std::vector<double>& b) {
  const size_t n = std::min(a.size(), b.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

// Time-domain cross-correlation argmax: the lag of b relative to a, positive
// when b is a delayed copy of a. Searches integer lags in [-max_lag, max_lag].
inline int xcorr_argmax(const std::vector<double>& a,
                        const std::vector<double>& b, int max_lag) {
  const long long n = static_cast<long long>(std::min(a.size(), b.size()));
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (long long t = 0; t < n; ++t) {
      const long long s = t - lag;
      if (s >= 0 && s < n) acc += a[s] * b[t];
    }
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

// Sub-sample cross-correlation peak via parabolic interpolation around the
// integer argmax.
inline double xcorr_argmax_subsample(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     int max_lag) {
  const long long n = static_cast<long long>(std::min(a.size(), b.size()));
  const auto corr_at = [&](int lag) {
    double acc = 0.0;
    for (long long t = 0; t < n; ++t) {
      const long long s = t - lag;
      if (s >= 0 && s < n) acc += a[s] * b[t];
    }
    return acc;
  };
  const int peak = xcorr_argmax(a, b, max_lag);
  if (std::abs(peak) >= max_lag) return peak;
  const double yl = corr_at(peak - 1);
  const double yc = corr_at(peak);
  const double yr = corr_at(peak + 1);
  const double denom = yl - 2.0 * yc + yr;
  if (denom >= 0.0) return peak;
  return peak + 0.5 * (yl - yr) / denom;
}

// Closed-form mel filter peak frequencies: n_mels + 2 equispaced points on
// the mel axis between 0 and sample_rate / 2, inverted back to Hz; the peak
// of filter m is interior point m + 1. Formulas written out independently.
inline std::vector<double> mel_center_frequencies(int n_mels,
                                                  double sample_rate) {
  const double top_mel =
      2595.0 * std::log10(1.0 + (sample_rate / 2.0) / 700.0);
  std::vector<double> centers(static_cast<size_t>(n_mels));
  for (int m = 0; m < n_mels; ++m) {
    const double mel = top_mel * (m + 1) / (n_mels + 1);
    centers[m] = 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
  }
  return centers;
}

// Expected inter-channel phase of a plane wave: a channel delayed by tau
// seconds shows phase 2 pi f tau relative to the reference, wrapped to
// (-pi, pi].
inline double wrapped_phase(double f_hz, double tau_s) {
  double phase = 2.0 * M_PI * f_hz * tau_s;
  phase = std::fmod(phase, 2.0 * M_PI);
  if (phase > M_PI) phase -= 2.0 * M_PI;
  if (phase <= -M_PI) phase += 2.0 * M_PI;
  return phase;
}

// Exhaustive evaluation of frame-matching metrics, written directly from the
// definitions with no shared code or ordering tricks.
struct BruteEval {
  double ap = 0.0;
  double f1 = 0.0;
  double ad_px = 0.0;
  double det_err = 0.0;
};

struct BruteFrame {
  double confidence = 0.0;
  double pred_x = 0.0;
  bool active = false;
  double true_x = 0.0;
};

inline BruteEval brute_force_eval(const std::vector<BruteFrame>& frames,
                                  double image_width, int tolerance_px,
                                  int n_thresholds, double binarize_at) {
  std::vector<double> thresholds(static_cast<size_t>(n_thresholds));
  for (int k = 0; k < n_thresholds; ++k) {
    const double z = -6.0 + 12.0 * k / (n_thresholds - 1);
    thresholds[k] = 1.0 / (1.0 + std::exp(-z));
  }

  const auto counts_at = [&](double t, long& tp, long& fp, long& fn) {
    tp = fp = fn = 0;
    for (const auto& fr : frames) {
      const bool predicted = fr.confidence >= t;
      const bool matched =
          predicted && fr.active &&
          std::abs(fr.pred_x - fr.true_x) * image_width <= tolerance_px;
      if (matched) {
        ++tp;
      } else {
        if (predicted) ++fp;
        if (fr.active) ++fn;
      }
    }
  };

  std::vector<double> precisions, recalls;
  for (double t : thresholds) {
    long tp, fp, fn;
    counts_at(t, tp, fp, fn);
    precisions.push_back(tp + fp > 0 ? double(tp) / double(tp + fp) : 1.0);
    recalls.push_back(tp + fn > 0 ? double(tp) / double(tp + fn) : 1.0);
  }

  BruteEval out;
  // Area under the precision envelope: integrate max-precision-at-recall>=r
  // over the distinct recall points.
  std::vector<std::pair<double, double>> rp;
  for (size_t i = 0; i < recalls.size(); ++i) {
    rp.emplace_back(recalls[i], precisions[i]);
  }
  std::sort(rp.begin(), rp.end());
  double prev_r = 0.0;
  for (size_t i = 0; i < rp.size(); ++i) {
    double env = 0.0;
    for (size_t j = 0; j < rp.size(); ++j) {
      if (rp[j].first >= rp[i].first) env = std::max(env, rp[j].second);
    }
    if (rp[i].first > prev_r) {
      out.ap += (rp[i].first - prev_r) * env;
      prev_r = rp[i].first;
    }
  }

  for (size_t i = 0; i < precisions.size(); ++i) {
    const double p = precisions[i], r = recalls[i];
    if (p + r > 0.0) out.f1 = std::max(out.f1, 2.0 * p * r / (p + r));
  }

  long disagreements = 0, tps = 0;
  double err_sum = 0.0;
  for (const auto& fr : frames) {
    const bool predicted = fr.confidence >= binarize_at;
    if (predicted != fr.active) ++disagreements;
    if (predicted && fr.active) {
      const double err = std::abs(fr.pred_x - fr.true_x) * image_width;
      if (err <= tolerance_px) {
        ++tps;
        err_sum += err;
      }
    }
  }
  out.det_err = frames.empty()
                    ? 0.0
                    : double(disagreements) / double(frames.size());
  out.ad_px = tps > 0 ? err_sum / tps : 0.0;
  return out;
}

}  // namespace oracle

#endif  // SAFT_TESTS_ORACLES_HPP
