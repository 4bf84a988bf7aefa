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

#ifndef SAFT_SIMULATOR_HPP
#define SAFT_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saft/geometry.hpp"
#include "saft/tracks.hpp"
#include "saft/types.hpp"

namespace saft {

constexpr int kLabelFps = 30;

enum class SourceKind { kWhiteBurst, kSpeechShapedNoise, kChirp };

const char* to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& name);

// Unit-RMS deterministic test signals. The chirp sweeps 50 Hz to 0.45 * rate
// linearly across its length; speech-shaped noise is flat to 500 Hz and then
// falls 6 dB per octave.
std::vector<double> source_signal(SourceKind kind, size_t n_samples,
                                  double sample_rate, uint64_t seed);

// One sound event: a source of the given kind active over [start_s, end_s)
// at a fixed azimuth inside the camera's field of view.
struct SceneSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  double azimuth_deg = 0.0;
  SourceKind kind = SourceKind::kWhiteBurst;
};

// Scene description. Segments must not overlap. snr_db adds per-channel
// independent pink noise at the given joint SNR; it requires at least one
// segment, since the SNR is relative to the rendered signal.
struct SceneSpec {
  double duration_s = 2.0;
  uint64_t seed = 0;
  std::optional<double> snr_db;
  std::vector<SceneSegment> segments;

  void validate(const CameraModel& cam) const;
  std::string to_json() const;
  static SceneSpec from_json(const std::string& text, const std::string& name);
};

// Delays x by a possibly fractional number of samples using a 64-tap
// Kaiser-windowed (beta = 8) sinc interpolator; out_len output samples,
// indices outside x read as zero. An integer delay reproduces x exactly.
std::vector<double> fractional_delay(const std::vector<double>& x,
                                     double delay_samples, size_t out_len);

struct RenderedScene {
  MultichannelClip clip;   // channels in geometry listing order
  GroundTruth truth;       // at kLabelFps
};

// Far-field renderer: each segment arrives as a plane wave from its azimuth,
// each mic receiving the source delayed by (R0 - <p, u>) / c with R0 = 0.5 m
// so every delay stays positive. Label frame v is active when the segment
// overlaps [v, v+1) / fps, i.e. frames floor(start * fps) through
// ceil(end * fps) - 1. sample_rate must be a multiple of kLabelFps.
RenderedScene render_scene(const SceneSpec& spec, const ArrayGeometry& geom,
                           const CameraModel& cam, double sample_rate,
                           double c = kSpeedOfSound);

}  // namespace saft

#endif  // SAFT_SIMULATOR_HPP
