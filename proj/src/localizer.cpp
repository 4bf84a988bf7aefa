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

#include "saft/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saft {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

struct FrameEstimate {
  double azimuth_deg = 0.0;
  double prominence_score = 1.0;
};

// Quadratic-vertex refinement through three (azimuth, value) samples.
double refine_peak(double a_l, double y_l, double a_c, double y_c, double a_r,
                   double y_r) {
  const double d1 = (y_c - y_l) / (a_c - a_l);
  const double d2 = (y_r - y_c) / (a_r - a_c);
  const double curv = (d2 - d1) / (a_r - a_l);
  if (!(curv < 0.0)) return a_c;
  const double vertex = (a_l + a_c) / 2.0 - d1 / (2.0 * curv);
  return std::clamp(vertex, a_l, a_r);
}

std::vector<double> frame_levels_db(const MultichannelClip& clip,
                                    size_t frame_samples, size_t n_frames) {
  std::vector<double> levels(n_frames);
  const size_t n = clip.length();
  const size_t channels = clip.samples.size();
  for (size_t v = 0; v < n_frames; ++v) {
    const size_t lo = v * frame_samples;
    const size_t hi = std::min(n, lo + frame_samples);
    double power = 0.0;
    for (const auto& ch : clip.samples) {
      for (size_t i = lo; i < hi; ++i) power += ch[i] * ch[i];
    }
    power /= static_cast<double>(channels * std::max<size_t>(1, hi - lo));
    levels[v] = 10.0 * std::log10(power + 1e-12);
  }
  return levels;
}

double percentile10(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t idx = (values.size() - 1) / 10;
  return values[idx];
}

}  // namespace

LocalizerParams::Backend localizer_backend_from_string(
    const std::string& name) {
  if (name == "srp") return LocalizerParams::Backend::kSrpPhat;
  if (name == "bf") return LocalizerParams::Backend::kBeamPower;
  if (name == "salsa") return LocalizerParams::Backend::kSalsaFit;
  throw std::invalid_argument("unknown localizer backend: " + name);
}

const char* to_string(LocalizerParams::Backend backend) {
  switch (backend) {
    case LocalizerParams::Backend::kSrpPhat:
      return "srp";
    case LocalizerParams::Backend::kBeamPower:
      return "bf";
    case LocalizerParams::Backend::kSalsaFit:
      return "salsa";
  }
  return "srp";
}

std::vector<double> azimuth_grid(double fov_deg, double step_deg) {
  if (!(fov_deg > 0.0) || !(step_deg > 0.0)) {
    throw std::invalid_argument("azimuth_grid: fov and step must be positive");
  }
  const int count = static_cast<int>(std::floor(fov_deg / step_deg + 1e-9)) + 1;
  std::vector<double> grid(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[i] = -fov_deg / 2.0 + i * step_deg;
  }
  return grid;
}

std::vector<std::vector<double>> srp_map(
    const std::vector<GccPair>& bundle,
    const std::vector<Microphone>& channel_mics,
    const std::vector<double>& grid_deg, double sample_rate, double c,
    int frames) {
  if (bundle.empty()) throw std::invalid_argument("srp_map: empty bundle");
  if (grid_deg.empty()) throw std::invalid_argument("srp_map: empty grid");
  const int n_pairs = static_cast<int>(bundle.size());
  const int n_grid = static_cast<int>(grid_deg.size());

  // Predicted lag per (pair, azimuth), resolved to tensor columns up front.
  std::vector<int> columns(static_cast<size_t>(n_pairs) * n_grid);
  for (int p = 0; p < n_pairs; ++p) {
    const GccPair& pair = bundle[p];
    if (pair.i < 0 || pair.j < 0 ||
        pair.i >= static_cast<int>(channel_mics.size()) ||
        pair.j >= static_cast<int>(channel_mics.size())) {
      throw std::invalid_argument("srp_map: pair channel without a position");
    }
    if (pair.gcc.frames < frames) {
      throw std::invalid_argument("srp_map: bundle has fewer frames");
    }
    const Microphone& mi = channel_mics[pair.i];
    const Microphone& mj = channel_mics[pair.j];
    for (int g = 0; g < n_grid; ++g) {
      const double az = grid_deg[g] * M_PI / 180.0;
      const double proj = (mi.x - mj.x) * std::sin(az) +
                          (mi.z - mj.z) * std::cos(az);
      const int lag =
          static_cast<int>(std::lround(proj * sample_rate / c));
      const int col = column_for_lag(lag, pair.gcc.bins);
      if (col < 0 || col >= pair.gcc.bins) {
        throw std::invalid_argument(
            "srp_map: correlation tensor too narrow for the grid");
      }
      columns[static_cast<size_t>(p) * n_grid + g] = col;
    }
  }

  std::vector<std::vector<double>> map(
      static_cast<size_t>(frames), std::vector<double>(n_grid, 0.0));
  for (int t = 0; t < frames; ++t) {
    auto& row = map[t];
    for (int p = 0; p < n_pairs; ++p) {
      const FeatureTensor& gcc = bundle[p].gcc;
      const int* cols = &columns[static_cast<size_t>(p) * n_grid];
      for (int g = 0; g < n_grid; ++g) {
        row[g] += gcc.at(0, t, cols[g]);
      }
    }
    for (int g = 0; g < n_grid; ++g) row[g] /= n_pairs;
  }
  return map;
}

namespace {

std::vector<FrameEstimate> estimate_srp(const SpectralTensor& spec,
                                        const std::vector<Microphone>& mics,
                                        const CameraModel& cam,
                                        const LocalizerParams& params,
                                        int frames_per_video, int n_video) {
  const std::vector<double> grid =
      azimuth_grid(cam.fov_deg, params.grid_step_deg);

  int max_lag = 0;
  for (size_t i = 0; i < mics.size(); ++i) {
    for (size_t j = i + 1; j < mics.size(); ++j) {
      for (double az_deg : grid) {
        const double az = az_deg * M_PI / 180.0;
        const double proj = (mics[i].x - mics[j].x) * std::sin(az) +
                            (mics[i].z - mics[j].z) * std::cos(az);
        max_lag = std::max(
            max_lag, static_cast<int>(std::abs(
                         std::lround(proj * spec.sample_rate / params.c))));
      }
    }
  }
  const int n_lag = 2 * max_lag + 1;
  if (n_lag > spec.fft_size) {
    throw std::invalid_argument(
        "localize: aperture needs more lags than the FFT size provides");
  }

  const auto bundle = gcc_pair_bundle(spec, params.pairing, n_lag);
  const auto map = srp_map(bundle, mics, grid, spec.sample_rate, params.c,
                           spec.frames);
  const int n_grid = static_cast<int>(grid.size());

  std::vector<FrameEstimate> out(static_cast<size_t>(n_video));
  std::vector<double> pooled(static_cast<size_t>(n_grid));
  for (int v = 0; v < n_video; ++v) {
    const int t0 = v * frames_per_video;
    const int t1 = std::min(spec.frames, t0 + frames_per_video);
    std::fill(pooled.begin(), pooled.end(), 0.0);
    for (int t = t0; t < t1; ++t) {
      for (int g = 0; g < n_grid; ++g) pooled[g] += map[t][g];
    }
    for (int g = 0; g < n_grid; ++g) pooled[g] /= std::max(1, t1 - t0);

    int peak = 0;
    for (int g = 1; g < n_grid; ++g) {
      if (pooled[g] > pooled[peak]) peak = g;
    }
    double az = grid[peak];
    if (peak > 0 && peak < n_grid - 1) {
      az = refine_peak(grid[peak - 1], pooled[peak - 1], grid[peak],
                       pooled[peak], grid[peak + 1], pooled[peak + 1]);
    }
    std::vector<double> sorted(pooled.begin(), pooled.end());
    std::nth_element(sorted.begin(), sorted.begin() + n_grid / 2,
                     sorted.end());
    const double median = sorted[n_grid / 2];
    const double prominence = pooled[peak] - median;

    out[v].azimuth_deg = std::clamp(az, -cam.fov_deg / 2.0, cam.fov_deg / 2.0);
    out[v].prominence_score =
        logistic(params.prom_slope * (prominence - params.prom_pivot));
  }
  return out;
}

std::vector<FrameEstimate> estimate_beam_power(
    const SpectralTensor& spec, const std::vector<Microphone>& mics,
    const CameraModel& cam, const LocalizerParams& params, int frames_per_video,
    int n_video) {
  const LookDirectionBank bank = LookDirectionBank::preset(params.bf_dirs);
  const BeamformerWeights weights =
      sdb_weights(mics, bank, spec.fft_size, spec.sample_rate,
                  params.bf_loading, params.c);
  const SpectralTensor steered = steer(spec, weights);
  const int n_dirs = weights.dirs;

  std::vector<FrameEstimate> out(static_cast<size_t>(n_video));
  std::vector<double> power(static_cast<size_t>(n_dirs));
  for (int v = 0; v < n_video; ++v) {
    const int t0 = v * frames_per_video;
    const int t1 = std::min(spec.frames, t0 + frames_per_video);
    std::fill(power.begin(), power.end(), 0.0);
    for (int d = 0; d < n_dirs; ++d) {
      for (int t = t0; t < t1; ++t) {
        for (int f = 0; f < spec.freq_bins; ++f) {
          power[d] += std::norm(steered.at(d, t, f));
        }
      }
    }
    int peak = 0;
    double total = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
      total += power[d];
      if (power[d] > power[peak]) peak = d;
    }
    double az = weights.azimuths_deg[peak];
    if (peak > 0 && peak < n_dirs - 1) {
      az = refine_peak(weights.azimuths_deg[peak - 1], power[peak - 1],
                       weights.azimuths_deg[peak], power[peak],
                       weights.azimuths_deg[peak + 1], power[peak + 1]);
    }
    const double share = total > 0.0 ? power[peak] / total : 0.0;
    const double margin = share - 1.0 / n_dirs;
    out[v].azimuth_deg = std::clamp(az, -cam.fov_deg / 2.0, cam.fov_deg / 2.0);
    out[v].prominence_score =
        logistic(params.prom_slope * (margin - params.prom_pivot));
  }
  return out;
}

std::vector<FrameEstimate> estimate_salsa_fit(
    const SpectralTensor& spec, const std::vector<Microphone>& mics,
    const CameraModel& cam, const LocalizerParams& params, int frames_per_video,
    int n_video) {
  const int ref = params.pairing.ref_channel;
  const int n_bins = std::min(64, spec.freq_bins);
  const FeatureTensor feat =
      salsa_features(spec, ref, params.salsa_variant, n_bins, params.c);
  const double bin_width = spec.sample_rate / spec.fft_size;
  const int b_lo = std::max(1, static_cast<int>(std::ceil(500.0 / bin_width)));
  const double half_fov = cam.fov_deg / 2.0;
  const double sin_cap = std::sin(half_fov * M_PI / 180.0);

  std::vector<FrameEstimate> out(static_cast<size_t>(n_video));
  for (int v = 0; v < n_video; ++v) {
    const int t0 = v * frames_per_video;
    const int t1 = std::min(spec.frames, t0 + frames_per_video);
    double num = 0.0;
    double den = 0.0;
    int plane = 0;
    for (int m = 0; m < spec.channels; ++m) {
      if (m == ref) continue;
      ++plane;
      const double dx = mics[m].x - mics[ref].x;
      if (std::abs(dx) < 1e-6) continue;
      // Phase wraps above c / (2 |dx|); pool only alias-free bins, keeping a
      // usable minimum for very wide pairs.
      const double f_alias = 0.9 * params.c / (2.0 * std::abs(dx));
      int b_hi = static_cast<int>(std::floor(f_alias / bin_width));
      b_hi = std::clamp(b_hi, b_lo + 3, n_bins - 1);
      double delta = 0.0;
      double weight_sum = 0.0;
      for (int t = t0; t < t1; ++t) {
        for (int b = b_lo; b <= b_hi; ++b) {
          const double w =
              std::max(0.0, std::exp(feat.at(0, t, b)) - kLogFloor);
          double value = feat.at(plane, t, b);
          if (params.salsa_variant == SalsaVariant::kIpd) {
            // Turns to meters of path difference.
            const double f_hz = b * bin_width;
            value *= params.c / f_hz;
          }
          delta += w * value;
          weight_sum += w;
        }
      }
      if (weight_sum <= 0.0) continue;
      delta /= weight_sum;
      num += weight_sum * delta * dx;
      den += weight_sum * dx * dx;
    }
    double sin_az = den > 0.0 ? num / den : 0.0;
    sin_az = std::clamp(sin_az, -sin_cap, sin_cap);
    out[v].azimuth_deg = std::asin(sin_az) * 180.0 / M_PI;
    out[v].prominence_score = 1.0;
  }
  return out;
}

}  // namespace

FrameTrack localize(const MultichannelClip& clip, const ArrayGeometry& geom,
                    const CameraModel& cam, const LocalizerParams& params) {
  clip.validate();
  if (clip.channel_mic_ids.empty()) {
    throw std::invalid_argument("localize: clip has no mic id mapping");
  }
  if (clip.channels() < 2) {
    throw std::invalid_argument("localize: needs at least two channels");
  }
  const std::vector<Microphone> mics =
      channel_positions(geom, clip.channel_mic_ids);

  const double per_video =
      clip.sample_rate / (static_cast<double>(params.label_fps) * params.hop);
  if (per_video != std::floor(per_video) || per_video < 1.0) {
    throw std::invalid_argument(
        "localize: sample_rate / (label_fps * hop) must be a whole number");
  }
  const int frames_per_video = static_cast<int>(per_video);

  const SpectralTensor spec =
      stft(clip, params.fft_size, params.hop, params.window);
  const int n_video =
      (spec.frames + frames_per_video - 1) / frames_per_video;

  std::vector<FrameEstimate> estimates;
  switch (params.backend) {
    case LocalizerParams::Backend::kSrpPhat:
      estimates = estimate_srp(spec, mics, cam, params, frames_per_video,
                               n_video);
      break;
    case LocalizerParams::Backend::kBeamPower:
      estimates = estimate_beam_power(spec, mics, cam, params,
                                      frames_per_video, n_video);
      break;
    case LocalizerParams::Backend::kSalsaFit:
      estimates = estimate_salsa_fit(spec, mics, cam, params,
                                     frames_per_video, n_video);
      break;
  }

  const size_t frame_samples =
      static_cast<size_t>(frames_per_video) * params.hop;
  const std::vector<double> levels =
      frame_levels_db(clip, frame_samples, static_cast<size_t>(n_video));
  const double floor_db = percentile10(levels);

  FrameTrack track;
  track.confidence.resize(static_cast<size_t>(n_video));
  track.x_norm.resize(static_cast<size_t>(n_video));
  for (int v = 0; v < n_video; ++v) {
    const double act = logistic(
        params.act_slope * (levels[v] - floor_db - params.act_pivot_db));
    track.confidence[v] = clamp_unit(act * estimates[v].prominence_score);
    track.x_norm[v] = azimuth_to_x_norm(cam, estimates[v].azimuth_deg);
  }
  track.validate();
  return track;
}

}  // namespace saft
