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

#ifndef SAFT_LOCALIZER_HPP
#define SAFT_LOCALIZER_HPP

#include <string>
#include <vector>

#include "saft/beamformer.hpp"
#include "saft/dsp.hpp"
#include "saft/gcc_phat.hpp"
#include "saft/geometry.hpp"
#include "saft/salsa.hpp"
#include "saft/simulator.hpp"
#include "saft/tracks.hpp"
#include "saft/types.hpp"

namespace saft {

struct LocalizerParams {
  int fft_size = 512;
  int hop = 100;
  WindowKind window = WindowKind::kHann;
  PairingMode pairing = PairingMode::all_pairs();
  double grid_step_deg = 0.5;
  double c = kSpeedOfSound;
  int label_fps = kLabelFps;

  enum class Backend { kSrpPhat, kBeamPower, kSalsaFit };
  Backend backend = Backend::kSrpPhat;
  int bf_dirs = 15;         // kBeamPower: look direction preset
  double bf_loading = 1e-2;
  SalsaVariant salsa_variant = SalsaVariant::kLite;  // kSalsaFit

  // Confidence shaping: a logistic of the frame level above the clip's
  // noise floor, times a logistic of the spatial peak's prominence.
  double act_pivot_db = 2.5;
  double act_slope = 0.9;
  double prom_pivot = 0.05;
  double prom_slope = 30.0;
};

LocalizerParams::Backend localizer_backend_from_string(const std::string& name);
const char* to_string(LocalizerParams::Backend backend);

// Azimuth grid covering [-fov/2, +fov/2] in step_deg increments.
std::vector<double> azimuth_grid(double fov_deg, double step_deg);

// Steered response power: for each frame and grid azimuth, the mean over
// pairs of each pair's correlation at the lag that azimuth predicts,
// round((p_i - p_j) . u(theta) * rate / c). channel_mics[k] is the position
// of spectrum channel k; every bundle tensor must be at least wide enough
// for the predicted lags. Returns [frames][grid].
std::vector<std::vector<double>> srp_map(
    const std::vector<GccPair>& bundle,
    const std::vector<Microphone>& channel_mics,
    const std::vector<double>& grid_deg, double sample_rate, double c,
    int frames);

// Classical localizer: one confidence + image column per video frame.
// The clip's channel_mic_ids must resolve in geom.
FrameTrack localize(const MultichannelClip& clip, const ArrayGeometry& geom,
                    const CameraModel& cam, const LocalizerParams& params);

}  // namespace saft

#endif  // SAFT_LOCALIZER_HPP
