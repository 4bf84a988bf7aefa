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

#include "saft/types.hpp"

#include <set>
#include <stdexcept>

namespace saft {

void MultichannelClip::validate() const {
  if (samples.empty()) {
    throw std::invalid_argument("clip: no channels");
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("clip: sample_rate must be positive");
  }
  const size_t n = samples[0].size();
  for (const auto& ch : samples) {
    if (ch.size() != n) {
      throw std::invalid_argument("clip: channels have unequal lengths");
    }
  }
  if (!channel_mic_ids.empty()) {
    if (channel_mic_ids.size() != samples.size()) {
      throw std::invalid_argument(
          "clip: channel_mic_ids size does not match channel count");
    }
    std::set<int> seen(channel_mic_ids.begin(), channel_mic_ids.end());
    if (seen.size() != channel_mic_ids.size()) {
      throw std::invalid_argument("clip: duplicate mic id in channel map");
    }
  }
}

const char* to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel:
      return "logmel";
    case FeatureKind::kLogLinear:
      return "loglin";
    case FeatureKind::kGccPhat:
      return "gccphat";
    case FeatureKind::kSalsaIpd:
      return "salsa-ipd";
    case FeatureKind::kSalsaLite:
      return "salsa-lite";
    case FeatureKind::kBeamformed:
      return "beamformed";
    case FeatureKind::kStacked:
      return "stacked";
  }
  return "stacked";
}

FeatureKind feature_kind_from_string(const std::string& name) {
  if (name == "logmel") return FeatureKind::kLogMel;
  if (name == "loglin") return FeatureKind::kLogLinear;
  if (name == "gccphat") return FeatureKind::kGccPhat;
  if (name == "salsa-ipd") return FeatureKind::kSalsaIpd;
  if (name == "salsa-lite") return FeatureKind::kSalsaLite;
  if (name == "beamformed") return FeatureKind::kBeamformed;
  if (name == "stacked") return FeatureKind::kStacked;
  throw std::invalid_argument("unknown feature kind: " + name);
}

FeatureTensor FeatureTensor::zeros(int channels, int frames, int bins,
                                   FeatureKind kind) {
  if (channels < 1 || frames < 1 || bins < 1) {
    throw std::invalid_argument("FeatureTensor: all dimensions must be >= 1");
  }
  FeatureTensor t;
  t.channels = channels;
  t.frames = frames;
  t.bins = bins;
  t.kind = kind;
  t.values.assign(
      static_cast<size_t>(channels) * frames * bins, 0.0);
  return t;
}

}  // namespace saft
