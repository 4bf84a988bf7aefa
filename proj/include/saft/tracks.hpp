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

#ifndef SAFT_TRACKS_HPP
#define SAFT_TRACKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace saft {

// Per-video-frame localizer output: confidence and normalized image column,
// both in [0, 1].
struct FrameTrack {
  std::vector<double> confidence;
  std::vector<double> x_norm;

  size_t frames() const { return confidence.size(); }
  void validate() const;
};

// Per-video-frame reference: active flag and, where active, the normalized
// image column. labeled marks frames whose position label exists at all
// (defaults to the active mask); it gates the position term of the loss.
struct GroundTruth {
  std::vector<uint8_t> active;
  std::vector<double> x_norm;
  std::vector<uint8_t> labeled;

  size_t frames() const { return active.size(); }
  const std::vector<uint8_t>& labeled_mask() const {
    return labeled.empty() ? active : labeled;
  }
  void validate() const;
};

// CSV with optional leading '#' comment lines, then the exact header
// 'frame,confidence,x_norm', then one row per frame 0..N-1 in order.
std::string encode_track_csv(const FrameTrack& track,
                             const std::string& comment = "");
void write_track_csv(const std::string& path, const FrameTrack& track,
                     const std::string& comment = "");
FrameTrack parse_track_csv(const std::string& text, const std::string& name);
FrameTrack read_track_csv(const std::string& path);

// Same layout with header 'frame,active,x_norm'; x_norm is written as 0 for
// inactive frames and ignored on read for them.
std::string encode_labels_csv(const GroundTruth& truth,
                              const std::string& comment = "");
void write_labels_csv(const std::string& path, const GroundTruth& truth,
                      const std::string& comment = "");
GroundTruth parse_labels_csv(const std::string& text, const std::string& name);
GroundTruth read_labels_csv(const std::string& path);

}  // namespace saft

#endif  // SAFT_TRACKS_HPP
