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

#include "saft/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "saft/fft.hpp"
#include "saft/rng.hpp"

namespace saft {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Reflection (no edge repeat) of index i into [0, n).
size_t reflect_index(long long i, long long n) {
  if (n == 1) return 0;
  const long long period = 2 * n - 2;
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= n) m = period - m;
  return static_cast<size_t>(m);
}

}  // namespace

const char* to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kHamming:
      return "hamming";
    case WindowKind::kRectangular:
      return "rect";
  }
  return "hann";
}

WindowKind window_from_string(const std::string& name) {
  if (name == "hann") return WindowKind::kHann;
  if (name == "hamming") return WindowKind::kHamming;
  if (name == "rect") return WindowKind::kRectangular;
  throw std::invalid_argument("unknown window: " + name);
}

std::vector<double> make_window(WindowKind kind, int n) {
  if (n < 1) throw std::invalid_argument("make_window: n must be >= 1");
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  switch (kind) {
    case WindowKind::kHann:
      for (int i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
      }
      break;
    case WindowKind::kHamming:
      for (int i = 0; i < n; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / n);
      }
      break;
    case WindowKind::kRectangular:
      break;
  }
  return w;
}

SpectralTensor stft(const MultichannelClip& clip, int fft_size, int hop,
                    WindowKind window) {
  clip.validate();
  if (clip.length() == 0) throw std::invalid_argument("stft: empty clip");
  if (!is_power_of_two(fft_size)) {
    throw std::invalid_argument("stft: fft_size must be a power of two");
  }
  if (hop < 1 || hop > fft_size) {
    throw std::invalid_argument("stft: hop must be in [1, fft_size]");
  }

  const long long n = static_cast<long long>(clip.length());
  const int frames = static_cast<int>((n + hop - 1) / hop);
  const int n_bins = fft_size / 2 + 1;
  const int half = fft_size / 2;
  const auto win = make_window(window, fft_size);

  SpectralTensor out;
  out.channels = clip.channels();
  out.frames = frames;
  out.freq_bins = n_bins;
  out.fft_size = fft_size;
  out.frame_hop = hop;
  out.sample_rate = clip.sample_rate;
  out.data.resize(static_cast<size_t>(out.channels) * frames * n_bins);

  RealFft fft(fft_size);
  std::vector<double> frame(static_cast<size_t>(fft_size));
  std::vector<std::complex<double>> bins(static_cast<size_t>(n_bins));

  for (int c = 0; c < out.channels; ++c) {
    const auto& x = clip.samples[c];
    for (int t = 0; t < frames; ++t) {
      const long long start = static_cast<long long>(t) * hop - half;
      for (int k = 0; k < fft_size; ++k) {
        frame[k] = win[k] * x[reflect_index(start + k, n)];
      }
      fft.forward(frame.data(), bins.data());
      std::copy(bins.begin(), bins.end(),
                out.data.begin() +
                    (static_cast<size_t>(c) * frames + t) * n_bins);
    }
  }
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank mel_filterbank(int n_mels, int fft_size, double sample_rate) {
  if (n_mels < 1) {
    throw std::invalid_argument("mel_filterbank: n_mels must be >= 1");
  }
  if (!is_power_of_two(fft_size)) {
    throw std::invalid_argument("mel_filterbank: fft_size must be a power of two");
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("mel_filterbank: sample_rate must be positive");
  }
  const int n_freqs = fft_size / 2 + 1;
  if (n_mels > n_freqs) {
    throw std::invalid_argument(
        "mel_filterbank: n_mels exceeds the number of FFT bins");
  }

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.n_freqs = n_freqs;
  fb.fft_size = fft_size;
  fb.sample_rate = sample_rate;
  fb.weights.assign(static_cast<size_t>(n_mels) * n_freqs, 0.0);
  fb.center_hz.resize(static_cast<size_t>(n_mels));

  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edge_hz(static_cast<size_t>(n_mels) + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    edge_hz[i] = mel_to_hz(mel_max * i / (n_mels + 1));
  }

  const double bin_width = sample_rate / fft_size;
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edge_hz[m];
    const double center = edge_hz[m + 1];
    const double hi = edge_hz[m + 2];
    fb.center_hz[m] = center;
    double row_sum = 0.0;
    for (int k = 0; k < n_freqs; ++k) {
      const double f = k * bin_width;
      double w = 0.0;
      if (f > lo && f <= center) {
        w = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        w = (hi - f) / (hi - center);
      }
      fb.weights[static_cast<size_t>(m) * n_freqs + k] = w;
      row_sum += w;
    }
    if (row_sum == 0.0) {
      // Narrow low filters can straddle no bin center; keep the row non-zero
      // by snapping to the nearest bin.
      int k_near = static_cast<int>(std::lround(center / bin_width));
      k_near = std::clamp(k_near, 0, n_freqs - 1);
      fb.weights[static_cast<size_t>(m) * n_freqs + k_near] = 1.0;
    }
  }
  return fb;
}

FeatureTensor log_mel_spectrogram(const SpectralTensor& spec, int channel,
                                  const MelFilterbank& fb) {
  if (channel < 0 || channel >= spec.channels) {
    throw std::invalid_argument("log_mel_spectrogram: channel out of range");
  }
  if (fb.n_freqs != spec.freq_bins) {
    throw std::invalid_argument(
        "log_mel_spectrogram: filterbank does not match spectrum size");
  }
  FeatureTensor out =
      FeatureTensor::zeros(1, spec.frames, fb.n_mels, FeatureKind::kLogMel);
  for (int t = 0; t < spec.frames; ++t) {
    for (int m = 0; m < fb.n_mels; ++m) {
      double acc = 0.0;
      for (int k = 0; k < spec.freq_bins; ++k) {
        const double w = fb.at(m, k);
        if (w == 0.0) continue;
        acc += w * std::norm(spec.at(channel, t, k));
      }
      out.at(0, t, m) = std::log(kLogFloor + acc);
    }
  }
  return out;
}

FeatureTensor log_linear_spectrogram(const SpectralTensor& spec, int channel,
                                     int n_bins) {
  if (channel < 0 || channel >= spec.channels) {
    throw std::invalid_argument("log_linear_spectrogram: channel out of range");
  }
  if (n_bins < 1 || n_bins > spec.freq_bins) {
    throw std::invalid_argument(
        "log_linear_spectrogram: n_bins must be in [1, freq_bins]");
  }
  FeatureTensor out =
      FeatureTensor::zeros(1, spec.frames, n_bins, FeatureKind::kLogLinear);
  for (int t = 0; t < spec.frames; ++t) {
    for (int k = 0; k < n_bins; ++k) {
      out.at(0, t, k) = std::log(kLogFloor + std::norm(spec.at(channel, t, k)));
    }
  }
  return out;
}

std::vector<double> pink_noise(size_t n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("pink_noise: n must be >= 1");
  std::vector<double> x(n, 0.0);
  if (n == 1) return x;

  const int size = static_cast<int>(n);
  const int n_bins = size / 2 + 1;
  std::vector<std::complex<double>> spec(static_cast<size_t>(n_bins),
                                         std::complex<double>(0.0, 0.0));
  Rng rng(seed);
  for (int k = 1; k < n_bins; ++k) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(k));
    if (size % 2 == 0 && k == size / 2) {
      // Nyquist of a real signal is real.
      spec[k] = std::complex<double>(amp * rng.gaussian(), 0.0);
    } else {
      spec[k] = amp * M_SQRT1_2 *
                std::complex<double>(rng.gaussian(), rng.gaussian());
    }
  }

  RealFft fft(size);
  fft.inverse(spec.data(), x.data());

  double power = 0.0;
  for (double v : x) power += v * v;
  const double rms = std::sqrt(power / static_cast<double>(n));
  if (rms > 0.0) {
    for (double& v : x) v /= rms;
  }
  return x;
}

MultichannelClip mix_at_snr(const MultichannelClip& signal,
                            const std::vector<std::vector<double>>& noise,
                            double snr_db) {
  signal.validate();
  const size_t n = signal.length();
  const size_t c = static_cast<size_t>(signal.channels());
  if (n == 0) throw std::invalid_argument("mix_at_snr: empty signal");
  if (noise.size() != 1 && noise.size() != c) {
    throw std::invalid_argument(
        "mix_at_snr: noise must hold one sequence or one per channel");
  }
  for (const auto& seq : noise) {
    if (seq.size() < n) {
      throw std::invalid_argument("mix_at_snr: noise shorter than signal");
    }
  }

  const auto& noise_for = [&](size_t ch) -> const std::vector<double>& {
    return noise.size() == 1 ? noise[0] : noise[ch];
  };

  double sig_power = 0.0;
  double noise_power = 0.0;
  for (size_t ch = 0; ch < c; ++ch) {
    const auto& s = signal.samples[ch];
    const auto& v = noise_for(ch);
    for (size_t i = 0; i < n; ++i) {
      sig_power += s[i] * s[i];
      noise_power += v[i] * v[i];
    }
  }
  sig_power /= static_cast<double>(c * n);
  noise_power /= static_cast<double>(c * n);
  if (sig_power <= 0.0) {
    throw std::invalid_argument("mix_at_snr: signal has zero power");
  }
  if (noise_power <= 0.0) {
    throw std::invalid_argument("mix_at_snr: noise has zero power");
  }

  const double gain =
      std::sqrt(sig_power / (noise_power * std::pow(10.0, snr_db / 10.0)));

  MultichannelClip out = signal;
  for (size_t ch = 0; ch < c; ++ch) {
    const auto& v = noise_for(ch);
    auto& s = out.samples[ch];
    for (size_t i = 0; i < n; ++i) s[i] += gain * v[i];
  }
  return out;
}

}  // namespace saft
