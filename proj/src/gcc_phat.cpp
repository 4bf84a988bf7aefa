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

#include "saft/gcc_phat.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "saft/fft.hpp"

namespace saft {

namespace {

constexpr double kWhitenFloor = 1e-12;

void check_channel(const SpectralTensor& spec, int c, const char* what) {
  if (c < 0 || c >= spec.channels) {
    throw std::invalid_argument(std::string(what) + ": channel out of range");
  }
}

void check_lag_bins(const SpectralTensor& spec, int n_lag_bins) {
  if (n_lag_bins < 1 || n_lag_bins % 2 == 0) {
    throw std::invalid_argument("n_lag_bins must be odd and positive");
  }
  if (n_lag_bins > spec.fft_size) {
    throw std::invalid_argument("n_lag_bins exceeds the FFT size");
  }
}

}  // namespace

std::vector<std::pair<int, int>> make_pairs(int channels,
                                            const PairingMode& mode) {
  if (channels < 2) {
    throw std::invalid_argument("pairing needs at least two channels");
  }
  std::vector<std::pair<int, int>> pairs;
  if (mode.kind == PairingMode::Kind::kAllPairs) {
    for (int i = 0; i < channels; ++i) {
      for (int j = i + 1; j < channels; ++j) pairs.emplace_back(i, j);
    }
  } else {
    const int ref = mode.ref_channel;
    if (ref < 0 || ref >= channels) {
      throw std::invalid_argument("reference channel out of range");
    }
    for (int j = 0; j < channels; ++j) {
      if (j != ref) pairs.emplace_back(ref, j);
    }
  }
  return pairs;
}

FeatureTensor gcc_phat_pair(const SpectralTensor& spec, int i, int j,
                            int n_lag_bins) {
  check_channel(spec, i, "gcc_phat_pair");
  check_channel(spec, j, "gcc_phat_pair");
  check_lag_bins(spec, n_lag_bins);

  const int n = spec.fft_size;
  const int half_width = n_lag_bins / 2;
  FeatureTensor out = FeatureTensor::zeros(1, spec.frames, n_lag_bins,
                                           FeatureKind::kGccPhat);

  RealFft fft(n);
  std::vector<std::complex<double>> cross(static_cast<size_t>(spec.freq_bins));
  std::vector<double> corr(static_cast<size_t>(n));

  for (int t = 0; t < spec.frames; ++t) {
    for (int f = 0; f < spec.freq_bins; ++f) {
      const std::complex<double> r =
          spec.at(i, t, f) * std::conj(spec.at(j, t, f));
      const double mag = std::abs(r);
      cross[f] = r / std::max(mag, kWhitenFloor);
    }
    // The inverse transform's 1/n cancels the n whitened unit-magnitude
    // bins, keeping every correlation value in [-1, 1].
    fft.inverse(cross.data(), corr.data());
    for (int lag = -half_width; lag <= half_width; ++lag) {
      // corr peaks at index -delay mod n; negating the index puts positive
      // lags (channel j lagging) on the positive axis.
      const int idx = ((-lag) % n + n) % n;
      out.at(0, t, column_for_lag(lag, n_lag_bins)) = corr[idx];
    }
  }
  return out;
}

int tdoa_argmax(const FeatureTensor& gcc, int frame) {
  if (frame < 0 || frame >= gcc.frames) {
    throw std::invalid_argument("tdoa_argmax: frame out of range");
  }
  int best_lag = lag_for_column(0, gcc.bins);
  double best = gcc.at(0, frame, 0);
  for (int c = 1; c < gcc.bins; ++c) {
    const int lag = lag_for_column(c, gcc.bins);
    const double v = gcc.at(0, frame, c);
    const bool closer =
        std::abs(lag) < std::abs(best_lag) ||
        (std::abs(lag) == std::abs(best_lag) && lag > best_lag);
    if (v > best || (v == best && closer)) {
      best = v;
      best_lag = lag;
    }
  }
  return best_lag;
}

FeatureTensor gcc_phat_features(const SpectralTensor& spec,
                                const PairingMode& mode, int n_lag_bins,
                                const MelFilterbank& fb, int spect_channel) {
  check_channel(spec, spect_channel, "gcc_phat_features");
  check_lag_bins(spec, n_lag_bins);
  const auto pairs = make_pairs(spec.channels, mode);
  const int width = fb.n_mels;

  FeatureTensor out =
      FeatureTensor::zeros(1 + static_cast<int>(pairs.size()), spec.frames,
                           width, FeatureKind::kStacked);

  const FeatureTensor spect = log_mel_spectrogram(spec, spect_channel, fb);
  for (int t = 0; t < spec.frames; ++t) {
    for (int b = 0; b < width; ++b) out.at(0, t, b) = spect.at(0, t, b);
  }

  const int half_corr = n_lag_bins / 2;
  for (size_t p = 0; p < pairs.size(); ++p) {
    const FeatureTensor corr =
        gcc_phat_pair(spec, pairs[p].first, pairs[p].second, n_lag_bins);
    const int c_out = static_cast<int>(p) + 1;
    for (int t = 0; t < spec.frames; ++t) {
      for (int b = 0; b < width; ++b) {
        const int lag = lag_for_column(b, width);
        if (std::abs(lag) > half_corr) continue;
        out.at(c_out, t, b) = corr.at(0, t, column_for_lag(lag, n_lag_bins));
      }
    }
  }
  return out;
}

std::vector<GccPair> gcc_pair_bundle(const SpectralTensor& spec,
                                     const PairingMode& mode, int n_lag_bins) {
  const auto pairs = make_pairs(spec.channels, mode);
  std::vector<GccPair> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    out.push_back({i, j, gcc_phat_pair(spec, i, j, n_lag_bins)});
  }
  return out;
}

}  // namespace saft
