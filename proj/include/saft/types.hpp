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

#ifndef SAFT_TYPES_HPP
#define SAFT_TYPES_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace saft {

// Multichannel time-domain audio. samples[c] is channel c; all channels have
// equal length. channel_mic_ids maps channel index -> microphone id in the
// array geometry that produced it (identity 0..C-1 when unknown).
struct MultichannelClip {
  std::vector<std::vector<double>> samples;
  double sample_rate = 0.0;
  std::vector<int> channel_mic_ids;

  int channels() const { return static_cast<int>(samples.size()); }
  size_t length() const { return samples.empty() ? 0 : samples[0].size(); }

  // Throws std::invalid_argument on ragged channels, non-positive rate,
  // or duplicate/mis-sized channel_mic_ids.
  void validate() const;
};

// Complex STFT bins laid out [channel][frame][freq] in C order.
struct SpectralTensor {
  std::vector<std::complex<double>> data;
  int channels = 0;
  int frames = 0;
  int freq_bins = 0;
  int fft_size = 0;
  int frame_hop = 0;
  double sample_rate = 0.0;

  std::complex<double>& at(int c, int t, int f) {
    return data[(static_cast<size_t>(c) * frames + t) * freq_bins + f];
  }
  const std::complex<double>& at(int c, int t, int f) const {
    return data[(static_cast<size_t>(c) * frames + t) * freq_bins + f];
  }
  double bin_hz(int f) const {
    return static_cast<double>(f) * sample_rate / fft_size;
  }
};

enum class FeatureKind {
  kLogMel,
  kLogLinear,
  kGccPhat,
  kSalsaIpd,
  kSalsaLite,
  kBeamformed,
  kStacked,
};

const char* to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& name);

// Real-valued feature planes laid out [channel][frame][bin] in C order.
// Values are double in memory; the on-disk format stores float32.
// meta carries the provenance key=value pairs written to the sidecar.
struct FeatureTensor {
  std::vector<double> values;
  int channels = 0;
  int frames = 0;
  int bins = 0;
  FeatureKind kind = FeatureKind::kStacked;
  std::map<std::string, std::string> meta;

  static FeatureTensor zeros(int channels, int frames, int bins,
                             FeatureKind kind);

  double& at(int c, int t, int b) {
    return values[(static_cast<size_t>(c) * frames + t) * bins + b];
  }
  const double& at(int c, int t, int b) const {
    return values[(static_cast<size_t>(c) * frames + t) * bins + b];
  }
};

}  // namespace saft

#endif  // SAFT_TYPES_HPP
