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

#ifndef SAFT_GEOMETRY_HPP
#define SAFT_GEOMETRY_HPP

#include <string>
#include <vector>

#include "saft/types.hpp"

namespace saft {

constexpr double kSpeedOfSound = 343.0;  // m/s, default

// Microphone position in meters. +x points right along the array, +y up,
// +z toward the scene; azimuth 0 is broadside (+z), positive toward +x.
struct Microphone {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct ArrayGeometry {
  std::string name;
  std::vector<Microphone> mics;
  // Nested mic-subset schedule: the m-mic subset is the first m ids here.
  // Defaults to listing order when a geometry file omits it.
  std::vector<int> subset_order;

  int size() const { return static_cast<int>(mics.size()); }
  const Microphone& mic(int id) const;
  double max_pairwise_distance() const;
  // Throws on empty array, duplicate ids, or a subset_order that is not a
  // permutation of the mic ids.
  void validate() const;

  // Built-in 16-mic dual-row horizontal array: an 11-mic nested lower row
  // (0.450 m wide) plus a 5-mic upper row 0.090 m above it. Subsets grow
  // from a 0.177 m core through 0.290 m to the full 0.450 m aperture.
  static ArrayGeometry ava16();
};

// Text format: '# comment' lines, 'mic <id> <x> <y> <z>' lines, and an
// optional 'subset_order <id> <id> ...' line.
ArrayGeometry load_geometry(const std::string& path);
ArrayGeometry parse_geometry(const std::string& text, const std::string& name);
std::string format_geometry(const ArrayGeometry& geom);
void write_geometry(const std::string& path, const ArrayGeometry& geom);

struct Subset {
  std::vector<int> mic_ids;
  double aperture_m = 0.0;  // max pairwise mic distance within the subset
};

// First m entries of the subset schedule; 1 <= m <= geometry size.
Subset select_subset(const ArrayGeometry& geom, int m);

// Positions for the subset's mics, in subset order (index 0 = reference).
std::vector<Microphone> mics_for_subset(const ArrayGeometry& geom,
                                        const Subset& subset);

// Positions for clip channels via clip.channel_mic_ids.
std::vector<Microphone> channel_positions(const ArrayGeometry& geom,
                                          const std::vector<int>& mic_ids);

// Reorders clip channels to the m-mic subset. The incoming clip's channels
// must correspond one-to-one, in listing order, with geom.mics.
MultichannelClip select_channels(const MultichannelClip& clip,
                                 const ArrayGeometry& geom, int m);

// Largest inter-channel delay magnitude, in samples, for sources within
// +/- fov_deg / 2 of broadside: ceil(d_max * sin(fov/2) * rate / c).
int max_lag_samples(double d_max_m, double fov_deg, double sample_rate,
                    double c = kSpeedOfSound);

// Pinhole camera covering fov_deg horizontally across image_width pixels.
struct CameraModel {
  double fov_deg = 55.0;
  int image_width = 2448;
};

// Linear azimuth-to-column mapping; azimuth must lie inside the field of
// view. azimuth_to_x_norm returns the [0, 1] column fraction.
double azimuth_to_pixel(const CameraModel& cam, double az_deg);
double pixel_to_azimuth(const CameraModel& cam, double px);
double azimuth_to_x_norm(const CameraModel& cam, double az_deg);
double x_norm_to_azimuth(const CameraModel& cam, double x_norm);

}  // namespace saft

#endif  // SAFT_GEOMETRY_HPP
