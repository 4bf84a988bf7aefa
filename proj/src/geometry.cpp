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

#include "saft/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

const Microphone& ArrayGeometry::mic(int id) const {
  for (const auto& m : mics) {
    if (m.id == id) return m;
  }
  throw std::invalid_argument("geometry '" + name + "' has no mic with id " +
                              std::to_string(id));
}

double ArrayGeometry::max_pairwise_distance() const {
  double best = 0.0;
  for (size_t i = 0; i < mics.size(); ++i) {
    for (size_t j = i + 1; j < mics.size(); ++j) {
      const double dx = mics[i].x - mics[j].x;
      const double dy = mics[i].y - mics[j].y;
      const double dz = mics[i].z - mics[j].z;
      best = std::max(best, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
  }
  return best;
}

void ArrayGeometry::validate() const {
  if (mics.empty()) {
    throw std::invalid_argument("geometry '" + name + "' has no microphones");
  }
  std::set<int> ids;
  for (const auto& m : mics) {
    if (!ids.insert(m.id).second) {
      throw std::invalid_argument("geometry '" + name +
                                  "' has duplicate mic id " +
                                  std::to_string(m.id));
    }
  }
  if (!subset_order.empty()) {
    std::set<int> order(subset_order.begin(), subset_order.end());
    if (order.size() != subset_order.size() || order != ids) {
      throw std::invalid_argument(
          "geometry '" + name +
          "': subset_order must list every mic id exactly once");
    }
  }
}

ArrayGeometry ArrayGeometry::ava16() {
  ArrayGeometry g;
  g.name = "ava16";
  const double lower_x[] = {-0.22500, -0.18075, -0.13650, -0.09225,
                            -0.04800, -0.02550, -0.00300, 0.01950,
                            0.04200,  0.06500,  0.22500};
  for (int i = 0; i < 11; ++i) {
    g.mics.push_back({i + 1, lower_x[i], 0.0, 0.0});
  }
  const double upper_x[] = {-0.08850, -0.04425, 0.0, 0.04425, 0.08850};
  for (int i = 0; i < 5; ++i) {
    g.mics.push_back({i + 12, upper_x[i], 0.090, 0.0});
  }
  g.subset_order = {1, 5, 2, 3, 4, 10, 6, 7, 8, 9, 11, 12, 13, 14, 15, 16};
  g.validate();
  return g;
}

ArrayGeometry parse_geometry(const std::string& text, const std::string& name) {
  ArrayGeometry g;
  g.name = name;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    const std::string where =
        name + ":" + std::to_string(line_no);
    if (tag == "mic") {
      Microphone m;
      if (!(fields >> m.id >> m.x >> m.y >> m.z)) {
        throw std::runtime_error(where + ": expected 'mic <id> <x> <y> <z>'");
      }
      std::string extra;
      if (fields >> extra) {
        throw std::runtime_error(where + ": trailing fields on mic line");
      }
      g.mics.push_back(m);
    } else if (tag == "subset_order") {
      int id;
      while (fields >> id) g.subset_order.push_back(id);
      if (!fields.eof()) {
        throw std::runtime_error(where + ": malformed subset_order");
      }
    } else {
      throw std::runtime_error(where + ": unknown directive '" + tag + "'");
    }
  }
  g.validate();
  return g;
}

ArrayGeometry load_geometry(const std::string& path) {
  std::string name = path;
  const size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name.erase(0, slash + 1);
  return parse_geometry(read_file(path), name);
}

std::string format_geometry(const ArrayGeometry& geom) {
  std::ostringstream out;
  out << "# microphone array '" << geom.name << "': " << geom.mics.size()
      << " mics, positions in meters\n";
  out.precision(17);
  for (const auto& m : geom.mics) {
    out << "mic " << m.id << " " << m.x << " " << m.y << " " << m.z << "\n";
  }
  if (!geom.subset_order.empty()) {
    out << "subset_order";
    for (int id : geom.subset_order) out << " " << id;
    out << "\n";
  }
  return out.str();
}

void write_geometry(const std::string& path, const ArrayGeometry& geom) {
  geom.validate();
  write_file_atomic(path, format_geometry(geom));
}

Subset select_subset(const ArrayGeometry& geom, int m) {
  geom.validate();
  if (m < 1 || m > geom.size()) {
    throw std::invalid_argument("subset size " + std::to_string(m) +
                                " out of range for " +
                                std::to_string(geom.size()) + " mics");
  }
  Subset s;
  if (geom.subset_order.empty()) {
    for (int i = 0; i < m; ++i) s.mic_ids.push_back(geom.mics[i].id);
  } else {
    s.mic_ids.assign(geom.subset_order.begin(), geom.subset_order.begin() + m);
  }
  for (int i = 0; i < m; ++i) {
    const Microphone& a = geom.mic(s.mic_ids[i]);
    for (int j = i + 1; j < m; ++j) {
      const Microphone& b = geom.mic(s.mic_ids[j]);
      const double dx = a.x - b.x;
      const double dy = a.y - b.y;
      const double dz = a.z - b.z;
      s.aperture_m =
          std::max(s.aperture_m, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
  }
  return s;
}

std::vector<Microphone> mics_for_subset(const ArrayGeometry& geom,
                                        const Subset& subset) {
  std::vector<Microphone> out;
  out.reserve(subset.mic_ids.size());
  for (int id : subset.mic_ids) out.push_back(geom.mic(id));
  return out;
}

std::vector<Microphone> channel_positions(const ArrayGeometry& geom,
                                          const std::vector<int>& mic_ids) {
  std::vector<Microphone> out;
  out.reserve(mic_ids.size());
  for (int id : mic_ids) out.push_back(geom.mic(id));
  return out;
}

MultichannelClip select_channels(const MultichannelClip& clip,
                                 const ArrayGeometry& geom, int m) {
  clip.validate();
  if (clip.channels() != geom.size()) {
    throw std::invalid_argument(
        "clip has " + std::to_string(clip.channels()) +
        " channels but geometry '" + geom.name + "' lists " +
        std::to_string(geom.size()) + " mics");
  }
  const Subset subset = select_subset(geom, m);
  MultichannelClip out;
  out.sample_rate = clip.sample_rate;
  for (int id : subset.mic_ids) {
    int index = -1;
    for (int i = 0; i < geom.size(); ++i) {
      if (geom.mics[i].id == id) {
        index = i;
        break;
      }
    }
    out.samples.push_back(clip.samples[index]);
    out.channel_mic_ids.push_back(id);
  }
  return out;
}

int max_lag_samples(double d_max_m, double fov_deg, double sample_rate,
                    double c) {
  if (d_max_m < 0.0 || fov_deg < 0.0 || fov_deg > 360.0) {
    throw std::invalid_argument("max_lag_samples: bad aperture or fov");
  }
  if (!(sample_rate > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("max_lag_samples: rate and c must be positive");
  }
  const double d_rel = d_max_m * std::sin(fov_deg * M_PI / 360.0);
  return static_cast<int>(std::ceil(d_rel * sample_rate / c));
}

double azimuth_to_pixel(const CameraModel& cam, double az_deg) {
  const double half = cam.fov_deg / 2.0;
  if (az_deg < -half || az_deg > half) {
    throw std::invalid_argument("azimuth " + std::to_string(az_deg) +
                                " outside the field of view");
  }
  return cam.image_width * (az_deg / cam.fov_deg + 0.5);
}

double pixel_to_azimuth(const CameraModel& cam, double px) {
  if (px < 0.0 || px > cam.image_width) {
    throw std::invalid_argument("pixel " + std::to_string(px) +
                                " outside the image");
  }
  return (px / cam.image_width - 0.5) * cam.fov_deg;
}

double azimuth_to_x_norm(const CameraModel& cam, double az_deg) {
  return azimuth_to_pixel(cam, az_deg) / cam.image_width;
}

double x_norm_to_azimuth(const CameraModel& cam, double x_norm) {
  if (x_norm < 0.0 || x_norm > 1.0) {
    throw std::invalid_argument("x_norm outside [0, 1]");
  }
  return (x_norm - 0.5) * cam.fov_deg;
}

}  // namespace saft
