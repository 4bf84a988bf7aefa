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

#ifndef SAFT_DSP_HPP
#define SAFT_DSP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "saft/types.hpp"

namespace saft {

// Floor added inside every log() over power values.
constexpr double kLogFloor = 1e-10;

enum class WindowKind { kHann, kHamming, kRectangular };

const char* to_string(WindowKind kind);
WindowKind window_from_string(const std::string& name);

// Periodic (DFT-even) analysis window of length n.
std::vector<double> make_window(WindowKind kind, int n);

// Short-time Fourier transform of every channel. Frames are centered:
// frame t covers samples [t*hop - fft_size/2, t*hop + fft_size/2) with
// reflection padding at the clip edges, and the frame count is
// ceil(length / hop). The DFT is unnormalized and one-sided.
// fft_size must be a power of two; hop must be in [1, fft_size].
SpectralTensor stft(const MultichannelClip& clip, int fft_size = 512,
                    int hop = 100, WindowKind window = WindowKind::kHann);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular mel filterbank over the one-sided spectrum of fft_size.
// Band edges are n_mels + 2 equally spaced points on the mel scale from 0 to
// sample_rate / 2; triangle m spans edges [m, m+2] with its peak at edge
// m + 1, evaluated at the FFT bin center frequencies. A filter whose support
// contains no bin center falls back to unit weight on the bin nearest its
// peak so that every row stays non-zero.
struct MelFilterbank {
  int n_mels = 0;
  int n_freqs = 0;
  int fft_size = 0;
  double sample_rate = 0.0;
  std::vector<double> weights;    // [n_mels][n_freqs]
  std::vector<double> center_hz;  // peak frequency per filter

  double at(int m, int k) const {
    return weights[static_cast<size_t>(m) * n_freqs + k];
  }
};

MelFilterbank mel_filterbank(int n_mels, int fft_size, double sample_rate);

// log(kLogFloor + mel-pooled power) of one channel; [1 x frames x n_mels].
FeatureTensor log_mel_spectrogram(const SpectralTensor& spec, int channel,
                                  const MelFilterbank& fb);

// log(kLogFloor + power) of the lowest n_bins FFT bins of one channel;
// [1 x frames x n_bins].
FeatureTensor log_linear_spectrogram(const SpectralTensor& spec, int channel,
                                     int n_bins);

// Pink (1/f power) noise: white Gaussian spectrum shaped by 1/sqrt(k) per
// positive bin k, inverse transformed, then normalized to unit RMS.
// Deterministic for a given seed.
std::vector<double> pink_noise(size_t n, uint64_t seed);

// Adds noise to signal at the requested joint SNR. Power is the mean square
// over all channels together, and one gain scales the noise on every channel.
// noise holds either a single sequence shared by all channels or one per
// channel; each must be at least as long as the clip.
MultichannelClip mix_at_snr(const MultichannelClip& signal,
                            const std::vector<std::vector<double>>& noise,
                            double snr_db);

}  // namespace saft

#endif  // SAFT_DSP_HPP
