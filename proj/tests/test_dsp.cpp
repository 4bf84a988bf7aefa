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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "saft/dsp.hpp"

using namespace saft;

TEST_CASE("window shapes") {
  const auto hann = make_window(WindowKind::kHann, 512);
  CHECK(hann[0] == doctest::Approx(0.0));
  CHECK(hann[256] == doctest::Approx(1.0));
  // Periodic form: symmetric about the center sample.
  CHECK(hann[1] == doctest::Approx(hann[511]));

  const auto hamming = make_window(WindowKind::kHamming, 512);
  CHECK(hamming[0] == doctest::Approx(0.08));
  CHECK(hamming[256] == doctest::Approx(1.0));

  const auto rect = make_window(WindowKind::kRectangular, 8);
  for (double v : rect) CHECK(v == 1.0);

  CHECK_THROWS_AS(make_window(WindowKind::kHann, 0), std::invalid_argument);
  CHECK_THROWS_AS(window_from_string("blackman"), std::invalid_argument);
  CHECK(window_from_string("hann") == WindowKind::kHann);
}

TEST_CASE("stft shape for a 2 s 16-channel clip") {
  const auto clip = testutil::noise_clip(16, 96000, 48000.0, 11);
  const auto spec = stft(clip);
  CHECK(spec.channels == 16);
  CHECK(spec.frames == 960);
  CHECK(spec.freq_bins == 257);
  CHECK(spec.fft_size == 512);
  CHECK(spec.frame_hop == 100);
  CHECK(spec.sample_rate == 48000.0);
}

TEST_CASE("stft frame count is ceil(samples / hop)") {
  auto clip = testutil::noise_clip(1, 96001, 48000.0, 3);
  CHECK(stft(clip).frames == 961);
  clip = testutil::noise_clip(1, 50, 48000.0, 4);
  CHECK(stft(clip).frames == 1);
  clip = testutil::noise_clip(1, 1, 48000.0, 5);
  CHECK(stft(clip).frames == 1);
}

TEST_CASE("stft of silence is exactly zero") {
  MultichannelClip clip;
  clip.sample_rate = 48000.0;
  clip.samples.assign(2, std::vector<double>(4800, 0.0));
  clip.channel_mic_ids = {0, 1};
  const auto spec = stft(clip);
  for (const auto& v : spec.data) {
    CHECK(v.real() == 0.0);
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("stft of a bin-centered sine peaks at that bin") {
  // Bin 10 of a 512-point DFT at 48 kHz sits at 937.5 Hz.
  const auto clip = testutil::sine_clip(48000, 48000.0, 937.5);
  const auto spec = stft(clip);
  for (int t = 3; t < spec.frames - 4; t += 7) {
    int best = 0;
    for (int k = 1; k < spec.freq_bins; ++k) {
      if (std::abs(spec.at(0, t, k)) > std::abs(spec.at(0, t, best))) best = k;
    }
    CHECK(best == 10);
  }
}

TEST_CASE("stft matches a naive DFT of the windowed frame") {
  const auto clip = testutil::noise_clip(1, 4800, 48000.0, 17);
  const int fft_size = 512;
  const int hop = 100;
  const auto spec = stft(clip, fft_size, hop, WindowKind::kHann);
  const auto win = make_window(WindowKind::kHann, fft_size);

  for (int t : {4, 17, 30}) {
    // Interior frame: reflection padding does not reach it.
    std::vector<double> frame(fft_size);
    const int start = t * hop - fft_size / 2;
    REQUIRE(start >= 0);
    REQUIRE(start + fft_size <= 4800);
    for (int k = 0; k < fft_size; ++k) {
      frame[k] = win[k] * clip.samples[0][start + k];
    }
    const auto ref = oracle::dft(frame);
    double max_mag = 0.0;
    for (int k = 0; k <= fft_size / 2; ++k) {
      max_mag = std::max(max_mag, std::abs(ref[k]));
    }
    for (int k = 0; k <= fft_size / 2; ++k) {
      CHECK(std::abs(spec.at(0, t, k) - ref[k]) <= 1e-6 * max_mag);
    }
  }
}

TEST_CASE("stft satisfies Parseval with one-sided doubling") {
  const auto clip = testutil::noise_clip(1, 9600, 48000.0, 23);
  const int fft_size = 512;
  const int hop = 100;
  const auto spec = stft(clip, fft_size, hop, WindowKind::kHann);
  const auto win = make_window(WindowKind::kHann, fft_size);

  for (int t : {5, 20, 44}) {
    const int start = t * hop - fft_size / 2;
    REQUIRE(start >= 0);
    double time_energy = 0.0;
    for (int k = 0; k < fft_size; ++k) {
      const double y = win[k] * clip.samples[0][start + k];
      time_energy += y * y;
    }
    double spec_energy = 0.0;
    for (int k = 0; k <= fft_size / 2; ++k) {
      const double alpha = (k == 0 || k == fft_size / 2) ? 1.0 : 2.0;
      spec_energy += alpha * std::norm(spec.at(0, t, k));
    }
    spec_energy /= fft_size;
    CHECK(spec_energy ==
          doctest::Approx(time_energy).epsilon(1e-6));
  }
}

TEST_CASE("stft is linear") {
  const auto a = testutil::noise_clip(2, 1000, 48000.0, 31);
  const auto b = testutil::noise_clip(2, 1000, 48000.0, 32);
  MultichannelClip sum = a;
  for (int c = 0; c < 2; ++c) {
    for (size_t i = 0; i < 1000; ++i) sum.samples[c][i] += b.samples[c][i];
  }
  const auto sa = stft(a);
  const auto sb = stft(b);
  const auto ss = stft(sum);
  double max_mag = 0.0;
  for (const auto& v : ss.data) max_mag = std::max(max_mag, std::abs(v));
  for (size_t i = 0; i < ss.data.size(); ++i) {
    CHECK(std::abs(ss.data[i] - (sa.data[i] + sb.data[i])) <= 1e-9 * max_mag);
  }
}

TEST_CASE("stft input validation") {
  const auto clip = testutil::noise_clip(1, 1000, 48000.0, 40);
  CHECK_THROWS_AS(stft(clip, 500, 100), std::invalid_argument);  // not 2^k
  CHECK_THROWS_AS(stft(clip, 512, 0), std::invalid_argument);
  CHECK_THROWS_AS(stft(clip, 512, 513), std::invalid_argument);
  MultichannelClip empty;
  empty.sample_rate = 48000.0;
  empty.samples.push_back({});
  CHECK_THROWS(stft(empty));
  MultichannelClip ragged;
  ragged.sample_rate = 48000.0;
  ragged.samples.push_back(std::vector<double>(10, 0.0));
  ragged.samples.push_back(std::vector<double>(11, 0.0));
  CHECK_THROWS_AS(stft(ragged), std::invalid_argument);
}

TEST_CASE("mel filterbank matches the closed-form peak frequencies") {
  const auto fb = mel_filterbank(64, 512, 48000.0);
  CHECK(fb.n_mels == 64);
  CHECK(fb.n_freqs == 257);
  const auto expected = oracle::mel_center_frequencies(64, 48000.0);
  for (int m = 0; m < 64; ++m) {
    CHECK(fb.center_hz[m] ==
          doctest::Approx(expected[m]).epsilon(1e-9));
    if (m > 0) CHECK(fb.center_hz[m] > fb.center_hz[m - 1]);
  }
}

TEST_CASE("every mel filter has non-zero support and weights in [0, 1]") {
  const auto fb = mel_filterbank(64, 512, 48000.0);
  for (int m = 0; m < fb.n_mels; ++m) {
    double row_sum = 0.0;
    for (int k = 0; k < fb.n_freqs; ++k) {
      CHECK(fb.at(m, k) >= 0.0);
      CHECK(fb.at(m, k) <= 1.0);
      row_sum += fb.at(m, k);
    }
    CHECK(row_sum > 0.0);
  }
}

TEST_CASE("a single mel filter spans the full band") {
  const auto fb = mel_filterbank(1, 512, 48000.0);
  CHECK(fb.n_mels == 1);
  // Triangle rises over (0, center] and falls over (center, rate/2); both
  // halves must hold bins.
  int below = 0, above = 0;
  for (int k = 0; k < fb.n_freqs; ++k) {
    const double f = k * 48000.0 / 512;
    if (fb.at(0, k) > 0.0) {
      if (f <= fb.center_hz[0]) ++below;
      if (f > fb.center_hz[0]) ++above;
    }
  }
  CHECK(below > 0);
  CHECK(above > 0);
}

TEST_CASE("mel filterbank rejects more filters than bins") {
  CHECK_THROWS_AS(mel_filterbank(258, 512, 48000.0), std::invalid_argument);
  CHECK_THROWS_AS(mel_filterbank(0, 512, 48000.0), std::invalid_argument);
  CHECK_NOTHROW(mel_filterbank(257, 512, 48000.0));
}

TEST_CASE("log-mel of silence is exactly the log floor") {
  MultichannelClip clip;
  clip.sample_rate = 48000.0;
  clip.samples.assign(1, std::vector<double>(4800, 0.0));
  clip.channel_mic_ids = {0};
  const auto spec = stft(clip);
  const auto fb = mel_filterbank(64, 512, 48000.0);
  const auto lm = log_mel_spectrogram(spec, 0, fb);
  CHECK(lm.channels == 1);
  CHECK(lm.bins == 64);
  for (double v : lm.values) CHECK(v == std::log(1e-10));
}

TEST_CASE("log-mel shape for the default configuration") {
  const auto clip = testutil::noise_clip(16, 96000, 48000.0, 50);
  const auto spec = stft(clip);
  const auto fb = mel_filterbank(64, 512, 48000.0);
  const auto lm = log_mel_spectrogram(spec, 3, fb);
  CHECK(lm.channels == 1);
  CHECK(lm.frames == 960);
  CHECK(lm.bins == 64);
  CHECK(lm.kind == FeatureKind::kLogMel);
  CHECK_THROWS_AS(log_mel_spectrogram(spec, 16, fb), std::invalid_argument);
}

TEST_CASE("doubling the amplitude raises unfloored log-mel cells by log 4") {
  const auto clip = testutil::sine_clip(9600, 48000.0, 937.5);
  MultichannelClip loud = clip;
  for (double& v : loud.samples[0]) v *= 2.0;
  const auto fb = mel_filterbank(64, 512, 48000.0);
  const auto a = log_mel_spectrogram(stft(clip), 0, fb);
  const auto b = log_mel_spectrogram(stft(loud), 0, fb);
  const double floor_log = std::log(1e-10);
  int checked = 0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] > floor_log + 5.0) {
      CHECK(b.values[i] - a.values[i] ==
            doctest::Approx(std::log(4.0)).epsilon(1e-6));
      ++checked;
    }
    // Scaling up never lowers any cell.
    CHECK(b.values[i] >= a.values[i] - 1e-12);
  }
  CHECK(checked > 0);
}

TEST_CASE("log-linear spectrogram covers DC through 6 kHz in 64 bins") {
  const auto clip = testutil::noise_clip(1, 9600, 48000.0, 60);
  const auto spec = stft(clip);
  // 64 bins of width rate / fft: the band edge falls at exactly 6 kHz.
  CHECK(spec.bin_hz(64) == doctest::Approx(6000.0));
  const auto ll = log_linear_spectrogram(spec, 0, 64);
  CHECK(ll.channels == 1);
  CHECK(ll.frames == spec.frames);
  CHECK(ll.bins == 64);
  CHECK(ll.kind == FeatureKind::kLogLinear);
  for (size_t i = 0; i < ll.values.size(); ++i) {
    CHECK(std::isfinite(ll.values[i]));
    CHECK(ll.values[i] >= std::log(1e-10));
  }
  CHECK_THROWS_AS(log_linear_spectrogram(spec, 0, 258),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_linear_spectrogram(spec, 0, 0), std::invalid_argument);
}

TEST_CASE("log-linear spectrogram of a sine peaks at its bin") {
  const auto clip = testutil::sine_clip(9600, 48000.0, 937.5);
  const auto ll = log_linear_spectrogram(stft(clip), 0, 64);
  for (int t = 3; t < ll.frames - 4; t += 11) {
    int best = 0;
    for (int b = 1; b < ll.bins; ++b) {
      if (ll.at(0, t, b) > ll.at(0, t, best)) best = b;
    }
    CHECK(best == 10);
  }
}

TEST_CASE("pink noise is deterministic per seed and uncorrelated across") {
  const auto a = pink_noise(8192, 99);
  const auto b = pink_noise(8192, 99);
  CHECK(a == b);
  const auto c = pink_noise(8192, 100);
  CHECK(std::abs(oracle::pearson(a, c)) < 0.05);
}

TEST_CASE("pink noise has unit RMS and zero mean") {
  const auto x = pink_noise(65536, 7);
  double sum = 0.0, power = 0.0;
  for (double v : x) {
    sum += v;
    power += v * v;
  }
  CHECK(std::abs(sum / x.size()) < 1e-9);
  CHECK(std::sqrt(power / x.size()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pink noise falls 3 dB per octave") {
  const auto x = pink_noise(65536, 12345);
  const double slope = oracle::psd_slope_db_per_octave(x, 1024, 0.01, 0.35);
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.17));
}

TEST_CASE("mix_at_snr hits the requested SNR exactly") {
  const auto signal = testutil::noise_clip(4, 4800, 48000.0, 71);
  std::vector<std::vector<double>> noise;
  for (int c = 0; c < 4; ++c) {
    noise.push_back(pink_noise(4800, 200 + c));
  }
  for (double snr : {0.0, 20.0, 40.0}) {
    const auto mixed = mix_at_snr(signal, noise, snr);
    double ps = 0.0, pn = 0.0;
    for (int c = 0; c < 4; ++c) {
      for (size_t i = 0; i < 4800; ++i) {
        const double s = signal.samples[c][i];
        const double n = mixed.samples[c][i] - s;
        ps += s * s;
        pn += n * n;
      }
    }
    const double measured = 10.0 * std::log10(ps / pn);
    CHECK(measured == doctest::Approx(snr).epsilon(1e-6));
  }
}

TEST_CASE("mix_at_snr at 0 dB equalizes joint powers") {
  const auto signal = testutil::noise_clip(2, 2400, 48000.0, 80);
  std::vector<std::vector<double>> noise = {pink_noise(2400, 81)};
  const auto mixed = mix_at_snr(signal, noise, 0.0);
  double ps = 0.0, pn = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (size_t i = 0; i < 2400; ++i) {
      const double s = signal.samples[c][i];
      const double n = mixed.samples[c][i] - s;
      ps += s * s;
      pn += n * n;
    }
  }
  CHECK(ps == doctest::Approx(pn).epsilon(1e-9));
}

TEST_CASE("mix_at_snr validates its inputs") {
  const auto signal = testutil::noise_clip(2, 100, 48000.0, 90);
  MultichannelClip zeros;
  zeros.sample_rate = 48000.0;
  zeros.samples.assign(2, std::vector<double>(100, 0.0));
  zeros.channel_mic_ids = {0, 1};
  std::vector<std::vector<double>> noise = {pink_noise(100, 5)};
  CHECK_THROWS_AS(mix_at_snr(zeros, noise, 10.0), std::invalid_argument);

  std::vector<std::vector<double>> silent = {std::vector<double>(100, 0.0)};
  CHECK_THROWS_AS(mix_at_snr(signal, silent, 10.0), std::invalid_argument);

  std::vector<std::vector<double>> shorter = {std::vector<double>(99, 1.0)};
  CHECK_THROWS_AS(mix_at_snr(signal, shorter, 10.0), std::invalid_argument);

  std::vector<std::vector<double>> three(3, std::vector<double>(100, 1.0));
  CHECK_THROWS_AS(mix_at_snr(signal, three, 10.0), std::invalid_argument);
}
