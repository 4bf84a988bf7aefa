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

#include "saft/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "saft/dsp.hpp"
#include "saft/fft.hpp"
#include "saft/rng.hpp"

namespace saft {

namespace {

constexpr double kSourceRangeM = 0.5;  // causal offset for plane-wave delays
constexpr double kRampSeconds = 0.005;
constexpr int kSincTaps = 64;
constexpr double kKaiserBeta = 8.0;
constexpr double kFrameEps = 1e-9;

double kaiser(double t, double half_width) {
  const double x = t / half_width;
  if (std::abs(x) > 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

double sinc(double t) {
  if (std::abs(t) < 1e-12) return 1.0;
  const double p = M_PI * t;
  return std::sin(p) / p;
}

void normalize_rms(std::vector<double>& x) {
  double power = 0.0;
  for (double v : x) power += v * v;
  const double rms = std::sqrt(power / static_cast<double>(x.size()));
  if (rms > 0.0) {
    for (double& v : x) v /= rms;
  }
}

}  // namespace

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kWhiteBurst:
      return "white-burst";
    case SourceKind::kSpeechShapedNoise:
      return "speech-noise";
    case SourceKind::kChirp:
      return "chirp";
  }
  return "white-burst";
}

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "white-burst") return SourceKind::kWhiteBurst;
  if (name == "speech-noise") return SourceKind::kSpeechShapedNoise;
  if (name == "chirp") return SourceKind::kChirp;
  throw std::invalid_argument("unknown source kind: " + name);
}

std::vector<double> source_signal(SourceKind kind, size_t n_samples,
                                  double sample_rate, uint64_t seed) {
  if (n_samples < 1) {
    throw std::invalid_argument("source_signal: n_samples must be >= 1");
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("source_signal: sample_rate must be positive");
  }
  std::vector<double> x(n_samples);
  switch (kind) {
    case SourceKind::kWhiteBurst: {
      Rng rng(seed);
      for (double& v : x) v = rng.gaussian();
      break;
    }
    case SourceKind::kSpeechShapedNoise: {
      // Spectral synthesis: flat to the knee, then 1/f amplitude
      // (6 dB per octave in power).
      if (n_samples == 1) {
        x[0] = 0.0;
        return x;
      }
      const int n = static_cast<int>(n_samples);
      const int n_bins = n / 2 + 1;
      const double knee_hz = 500.0;
      std::vector<std::complex<double>> spec(static_cast<size_t>(n_bins),
                                             std::complex<double>(0.0, 0.0));
      Rng rng(seed);
      for (int k = 1; k < n_bins; ++k) {
        const double f = k * sample_rate / n;
        const double amp = f <= knee_hz ? 1.0 : knee_hz / f;
        if (n % 2 == 0 && k == n / 2) {
          spec[k] = std::complex<double>(amp * rng.gaussian(), 0.0);
        } else {
          spec[k] = amp * M_SQRT1_2 *
                    std::complex<double>(rng.gaussian(), rng.gaussian());
        }
      }
      RealFft fft(n);
      fft.inverse(spec.data(), x.data());
      break;
    }
    case SourceKind::kChirp: {
      const double f0 = 50.0;
      const double f1 = 0.45 * sample_rate;
      const double duration = static_cast<double>(n_samples) / sample_rate;
      for (size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        const double phase = f0 * t + (f1 - f0) * t * t / (2.0 * duration);
        x[i] = std::sin(2.0 * M_PI * phase);
      }
      break;
    }
  }
  normalize_rms(x);
  return x;
}

void SceneSpec::validate(const CameraModel& cam) const {
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("scene: duration must be positive");
  }
  const double half_fov = cam.fov_deg / 2.0;
  std::vector<std::pair<double, double>> spans;
  for (const auto& seg : segments) {
    if (!(seg.start_s >= 0.0) || !(seg.end_s <= duration_s) ||
        !(seg.start_s < seg.end_s)) {
      throw std::invalid_argument(
          "scene: segment must satisfy 0 <= start < end <= duration");
    }
    if (seg.azimuth_deg < -half_fov || seg.azimuth_deg > half_fov) {
      throw std::invalid_argument("scene: segment azimuth " +
                                  std::to_string(seg.azimuth_deg) +
                                  " outside the field of view");
    }
    spans.emplace_back(seg.start_s, seg.end_s);
  }
  std::sort(spans.begin(), spans.end());
  for (size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first < spans[i - 1].second) {
      throw std::invalid_argument("scene: segments overlap");
    }
  }
  if (snr_db.has_value() && segments.empty()) {
    throw std::invalid_argument(
        "scene: snr_db needs at least one segment to define signal power");
  }
}

std::string SceneSpec::to_json() const {
  nlohmann::json j;
  j["duration_s"] = duration_s;
  j["seed"] = seed;
  if (snr_db.has_value()) {
    j["snr_db"] = *snr_db;
  } else {
    j["snr_db"] = nullptr;
  }
  j["segments"] = nlohmann::json::array();
  for (const auto& seg : segments) {
    j["segments"].push_back({{"start_s", seg.start_s},
                             {"end_s", seg.end_s},
                             {"azimuth_deg", seg.azimuth_deg},
                             {"kind", to_string(seg.kind)}});
  }
  return j.dump(2) + "\n";
}

SceneSpec SceneSpec::from_json(const std::string& text,
                               const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(name + ": invalid JSON: " + e.what());
  }
  SceneSpec spec;
  try {
    spec.duration_s = j.at("duration_s").get<double>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<uint64_t>();
    if (j.contains("snr_db") && !j.at("snr_db").is_null()) {
      spec.snr_db = j.at("snr_db").get<double>();
    }
    for (const auto& js : j.value("segments", nlohmann::json::array())) {
      SceneSegment seg;
      seg.start_s = js.at("start_s").get<double>();
      seg.end_s = js.at("end_s").get<double>();
      seg.azimuth_deg = js.at("azimuth_deg").get<double>();
      seg.kind = source_kind_from_string(js.at("kind").get<std::string>());
      spec.segments.push_back(seg);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(name + ": bad scene field: " + e.what());
  }
  return spec;
}

std::vector<double> fractional_delay(const std::vector<double>& x,
                                     double delay_samples, size_t out_len) {
  if (!std::isfinite(delay_samples)) {
    throw std::invalid_argument("fractional_delay: delay must be finite");
  }
  const double floor_d = std::floor(delay_samples);
  const long long int_delay = static_cast<long long>(floor_d);
  const double frac = delay_samples - floor_d;
  const long long n = static_cast<long long>(x.size());
  std::vector<double> y(out_len, 0.0);

  if (frac == 0.0) {
    for (long long i = 0; i < static_cast<long long>(out_len); ++i) {
      const long long src = i - int_delay;
      if (src >= 0 && src < n) y[i] = x[src];
    }
    return y;
  }

  const int half = kSincTaps / 2;
  double taps[kSincTaps];
  for (int k = -half; k < half; ++k) {
    taps[k + half] = sinc(k + frac) * kaiser(k + frac, half);
  }
  for (long long i = 0; i < static_cast<long long>(out_len); ++i) {
    double acc = 0.0;
    for (int k = -half; k < half; ++k) {
      const long long src = i - int_delay + k;
      if (src >= 0 && src < n) acc += x[src] * taps[k + half];
    }
    y[i] = acc;
  }
  return y;
}

RenderedScene render_scene(const SceneSpec& spec, const ArrayGeometry& geom,
                           const CameraModel& cam, double sample_rate,
                           double c) {
  spec.validate(cam);
  geom.validate();
  if (!(sample_rate > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("render_scene: rate and c must be positive");
  }
  const double per_frame = sample_rate / kLabelFps;
  if (per_frame != std::floor(per_frame)) {
    throw std::invalid_argument(
        "render_scene: sample_rate must be a multiple of the label fps");
  }

  const size_t n_samples =
      static_cast<size_t>(std::llround(spec.duration_s * sample_rate));
  if (n_samples < 1) {
    throw std::invalid_argument("render_scene: duration shorter than a sample");
  }
  const int n_mics = geom.size();

  RenderedScene out;
  out.clip.sample_rate = sample_rate;
  out.clip.samples.assign(n_mics, std::vector<double>(n_samples, 0.0));
  for (const auto& m : geom.mics) out.clip.channel_mic_ids.push_back(m.id);

  for (size_t si = 0; si < spec.segments.size(); ++si) {
    const SceneSegment& seg = spec.segments[si];
    const size_t seg_len = static_cast<size_t>(
        std::llround((seg.end_s - seg.start_s) * sample_rate));
    if (seg_len < 1) continue;
    const size_t start_sample =
        static_cast<size_t>(std::llround(seg.start_s * sample_rate));

    std::vector<double> src = source_signal(
        seg.kind, seg_len, sample_rate, Rng::derive(spec.seed, si));

    const size_t ramp = std::min(
        static_cast<size_t>(std::llround(kRampSeconds * sample_rate)),
        seg_len / 2);
    for (size_t i = 0; i < ramp; ++i) {
      const double g =
          0.5 * (1.0 - std::cos(M_PI * static_cast<double>(i + 1) /
                                static_cast<double>(ramp)));
      src[i] *= g;
      src[seg_len - 1 - i] *= g;
    }

    const double az = seg.azimuth_deg * M_PI / 180.0;
    const double ux = std::sin(az);
    const double uz = std::cos(az);
    for (int m = 0; m < n_mics; ++m) {
      const Microphone& mic = geom.mics[m];
      const double proj = mic.x * ux + mic.z * uz;
      const double delay_s = (kSourceRangeM - proj) / c;
      const double delay_samples = delay_s * sample_rate;
      // Room for the integer delay plus the interpolator tail.
      const size_t span = std::min(
          n_samples - start_sample,
          seg_len + static_cast<size_t>(std::ceil(delay_samples)) + kSincTaps);
      const std::vector<double> delayed =
          fractional_delay(src, delay_samples, span);
      auto& channel = out.clip.samples[m];
      for (size_t i = 0; i < span; ++i) {
        channel[start_sample + i] += delayed[i];
      }
    }
  }

  if (spec.snr_db.has_value()) {
    std::vector<std::vector<double>> noise(static_cast<size_t>(n_mics));
    for (int m = 0; m < n_mics; ++m) {
      noise[m] = pink_noise(n_samples, Rng::derive(spec.seed, 1000 + m));
    }
    out.clip = mix_at_snr(out.clip, noise, *spec.snr_db);
  }

  const size_t frame_samples = static_cast<size_t>(per_frame);
  const size_t n_frames = (n_samples + frame_samples - 1) / frame_samples;
  out.truth.active.assign(n_frames, 0);
  out.truth.x_norm.assign(n_frames, 0.0);
  for (const auto& seg : spec.segments) {
    const long long first = static_cast<long long>(
        std::floor(seg.start_s * kLabelFps + kFrameEps));
    const long long last = static_cast<long long>(
        std::ceil(seg.end_s * kLabelFps - kFrameEps));
    const double x = azimuth_to_x_norm(cam, seg.azimuth_deg);
    for (long long v = std::max(0LL, first);
         v < std::min(static_cast<long long>(n_frames), last); ++v) {
      out.truth.active[v] = 1;
      out.truth.x_norm[v] = x;
    }
  }
  out.truth.labeled = out.truth.active;
  return out;
}

}  // namespace saft
