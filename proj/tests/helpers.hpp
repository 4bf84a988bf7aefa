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

#ifndef SAFT_TESTS_HELPERS_HPP
#define SAFT_TESTS_HELPERS_HPP

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "saft/rng.hpp"
#include "saft/types.hpp"

namespace testutil {

inline saft::MultichannelClip noise_clip(int channels, size_t n,
                                         double sample_rate, uint64_t seed) {
  saft::MultichannelClip clip;
  clip.sample_rate = sample_rate;
  for (int c = 0; c < channels; ++c) {
    saft::Rng rng(saft::Rng::derive(seed, static_cast<uint64_t>(c)));
    std::vector<double> ch(n);
    for (double& v : ch) v = rng.gaussian();
    clip.samples.push_back(std::move(ch));
  }
  clip.channel_mic_ids.resize(channels);
  for (int c = 0; c < channels; ++c) clip.channel_mic_ids[c] = c;
  return clip;
}

// Two channels: shared noise, channel 1 delayed by an integer number of
// samples (zero-filled at the start).
inline saft::MultichannelClip delayed_pair_clip(size_t n, int delay,
                                                double sample_rate,
                                                uint64_t seed) {
  saft::Rng rng(seed);
  std::vector<double> base(n);
  for (double& v : base) v = rng.gaussian();
  saft::MultichannelClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.assign(2, std::vector<double>(n, 0.0));
  clip.samples[0] = base;
  for (size_t i = 0; i < n; ++i) {
    const long long s = static_cast<long long>(i) - delay;
    if (s >= 0 && s < static_cast<long long>(n)) {
      clip.samples[1][i] = base[s];
    }
  }
  clip.channel_mic_ids = {0, 1};
  return clip;
}

inline saft::MultichannelClip sine_clip(size_t n, double sample_rate,
                                        double freq_hz, double amplitude = 1.0) {
  saft::MultichannelClip clip;
  clip.sample_rate = sample_rate;
  std::vector<double> ch(n);
  for (size_t i = 0; i < n; ++i) {
    ch[i] = amplitude *
            std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) /
                     sample_rate);
  }
  clip.samples.push_back(std::move(ch));
  clip.channel_mic_ids = {0};
  return clip;
}

// Unique scratch directory per test run, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("saft_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil

#endif  // SAFT_TESTS_HELPERS_HPP
