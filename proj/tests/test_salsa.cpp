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

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "saft/dsp.hpp"
#include "saft/salsa.hpp"

using namespace saft;

namespace {

const double kC = 343.0;

double circular_diff(double a, double b) {
  double d = std::fmod(a - b, 2.0 * M_PI);
  if (d > M_PI) d -= 2.0 * M_PI;
  if (d <= -M_PI) d += 2.0 * M_PI;
  return d;
}

// Two channels carrying the same sum of bin-centered sinusoids, channel 1
// delayed by an exact (possibly fractional) tau via the analytic time shift.
MultichannelClip delayed_sine_bank(size_t n, double fs, double tau_s,
                                   int bin_lo, int bin_hi) {
  MultichannelClip clip;
  clip.sample_rate = fs;
  clip.channel_mic_ids = {0, 1};
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (int k = bin_lo; k <= bin_hi; ++k) {
    const double f = fs * k / 512.0;
    for (size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / fs;
      a[i] += std::sin(2.0 * M_PI * f * t);
      b[i] += std::sin(2.0 * M_PI * f * (t - tau_s));
    }
  }
  clip.samples = {a, b};
  return clip;
}

}  // namespace

TEST_CASE("variant names round trip") {
  CHECK(std::string(to_string(SalsaVariant::kIpd)) == "salsa-ipd");
  CHECK(std::string(to_string(SalsaVariant::kLite)) == "salsa-lite");
  CHECK(salsa_variant_from_string("salsa-ipd") == SalsaVariant::kIpd);
  CHECK(salsa_variant_from_string("salsa-lite") == SalsaVariant::kLite);
  CHECK_THROWS_AS(salsa_variant_from_string("salsa"), std::invalid_argument);
}

TEST_CASE("identical channels yield zero phase difference") {
  auto clip = testutil::noise_clip(1, 9600, 48000.0, 3);
  clip.samples.push_back(clip.samples[0]);
  clip.channel_mic_ids.push_back(1);
  const auto spect = stft(clip);
  const auto ipd = ipd_map(spect, 0);
  REQUIRE(ipd.channels == 1);
  for (double v : ipd.values) CHECK(std::abs(v) < 1e-9);

  const auto feats = salsa_features(spect, 0, SalsaVariant::kLite, 64);
  for (int t = 0; t < feats.frames; ++t)
    for (int b = 0; b < 64; ++b) CHECK(std::abs(feats.at(1, t, b)) < 1e-7);
}

TEST_CASE("feature shapes follow the channel count") {
  const auto clip = testutil::noise_clip(16, 9600, 48000.0, 8);
  const auto spect = stft(clip);
  const auto ipd = ipd_map(spect, 0);
  CHECK(ipd.channels == 15);
  CHECK(ipd.frames == spect.frames);
  CHECK(ipd.bins == 257);
  CHECK(ipd.kind == FeatureKind::kSalsaIpd);

  const auto feats = salsa_features(spect, 0, SalsaVariant::kIpd, 64);
  CHECK(feats.channels == 16);
  CHECK(feats.bins == 64);
  CHECK(feats.kind == FeatureKind::kSalsaIpd);
  CHECK(salsa_features(spect, 0, SalsaVariant::kLite, 64).kind ==
        FeatureKind::kSalsaLite);

  CHECK_THROWS_AS(ipd_map(spect, 16), std::invalid_argument);
  CHECK_THROWS_AS(salsa_features(spect, 0, SalsaVariant::kIpd, 258),
                  std::invalid_argument);
  CHECK_THROWS_AS(salsa_features(spect, 0, SalsaVariant::kIpd, 0),
                  std::invalid_argument);
}

TEST_CASE("phase difference matches the analytic wrapped phase") {
  // Channel 1 delayed by 4 samples; a delayed non-reference channel shows a
  // positive phase ramp 2 pi f tau.
  const double fs = 48000.0;
  const double tau = 4.0 / fs;
  const auto clip = testutil::delayed_pair_clip(48000, 4, fs, 17);
  const auto spect = stft(clip);
  const auto ipd = ipd_map(spect, 0);

  std::vector<double> errs;
  for (int t = 10; t + 10 < ipd.frames; t += 7) {
    for (int b = 1; b < ipd.bins - 1; ++b) {
      const double expect = oracle::wrapped_phase(spect.bin_hz(b), tau);
      errs.push_back(std::abs(circular_diff(ipd.at(0, t, b), expect)));
    }
  }
  std::sort(errs.begin(), errs.end());
  CHECK(errs[errs.size() / 2] < 0.05);
}

TEST_CASE("principal value stays in (-pi, pi]") {
  const auto clip = testutil::delayed_pair_clip(19200, 20, 48000.0, 19);
  const auto spect = stft(clip);
  const auto ipd = ipd_map(spect, 0);
  for (double v : ipd.values) {
    CHECK(v <= M_PI + 1e-12);
    CHECK(v > -M_PI - 1e-12);
  }
}

TEST_CASE("path-difference values recover c tau below the alias limit") {
  // tau = 0.1 ms keeps 2 pi f tau under pi for every band bin below 5 kHz.
  const double fs = 48000.0;
  const double tau = 1e-4;
  const auto clip = delayed_sine_bank(19200, fs, tau, 2, 50);
  const auto spect = stft(clip);
  const auto feats = salsa_features(spect, 0, SalsaVariant::kLite, 64, kC);

  std::vector<double> vals;
  for (int t = 10; t + 10 < feats.frames; t += 5) {
    for (int b = 2; b <= 50; ++b) vals.push_back(feats.at(1, t, b));
  }
  std::sort(vals.begin(), vals.end());
  const double med = vals[vals.size() / 2];
  // Delayed other channel: positive phase, so the normalized value is -c tau.
  CHECK(med == doctest::Approx(-kC * tau).epsilon(0.1));

  // Delaying the reference instead flips the sign.
  auto flipped = clip;
  std::swap(flipped.samples[0], flipped.samples[1]);
  const auto feats2 =
      salsa_features(stft(flipped), 0, SalsaVariant::kLite, 64, kC);
  std::vector<double> vals2;
  for (int t = 10; t + 10 < feats2.frames; t += 5)
    for (int b = 2; b <= 50; ++b) vals2.push_back(feats2.at(1, t, b));
  std::sort(vals2.begin(), vals2.end());
  CHECK(vals2[vals2.size() / 2] == doctest::Approx(kC * tau).epsilon(0.1));
}

TEST_CASE("a 0.2 ms delay is still recovered in the unaliased band") {
  // 2 pi f tau reaches pi at 2.5 kHz for tau = 0.2 ms; bins at 500..2400 Hz
  // stay on the principal branch.
  const double fs = 48000.0;
  const double tau = 2e-4;
  const int bin_lo = 6, bin_hi = 25;  // 562.5 .. 2343.75 Hz
  const auto clip = delayed_sine_bank(19200, fs, tau, bin_lo, bin_hi);
  const auto spect = stft(clip);
  const auto feats = salsa_features(spect, 0, SalsaVariant::kLite, 64, kC);

  std::vector<double> vals;
  for (int t = 10; t + 10 < feats.frames; t += 5)
    for (int b = bin_lo; b <= bin_hi; ++b) vals.push_back(feats.at(1, t, b));
  std::sort(vals.begin(), vals.end());
  CHECK(vals[vals.size() / 2] == doctest::Approx(-kC * tau).epsilon(0.1));
}

TEST_CASE("turn-normalized and path-difference variants are proportional") {
  const auto clip = testutil::noise_clip(3, 9600, 48000.0, 23);
  const auto spect = stft(clip);
  const auto ipd = salsa_features(spect, 0, SalsaVariant::kIpd, 64, kC);
  const auto lite = salsa_features(spect, 0, SalsaVariant::kLite, 64, kC);
  for (int c = 1; c < 3; ++c) {
    for (int t = 0; t < ipd.frames; ++t) {
      CHECK(lite.at(c, t, 0) == 0.0);
      for (int b = 1; b < 64; ++b) {
        const double f = spect.bin_hz(b);
        CHECK(lite.at(c, t, b) ==
              doctest::Approx(ipd.at(c, t, b) * kC / f).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("phase features are amplitude invariant") {
  auto clip = testutil::delayed_pair_clip(9600, 5, 48000.0, 29);
  auto loud = clip;
  for (auto& ch : loud.samples)
    for (double& v : ch) v *= 21.0;
  const auto a = ipd_map(stft(clip), 0);
  const auto b = ipd_map(stft(loud), 0);
  for (size_t i = 0; i < a.values.size(); ++i) {
    CHECK(std::abs(circular_diff(a.values[i], b.values[i])) < 1e-9);
  }
}

TEST_CASE("channel 0 is the reference log spectrogram") {
  const auto clip = testutil::noise_clip(4, 9600, 48000.0, 31);
  const auto spect = stft(clip);
  for (int ref : {0, 2}) {
    const auto feats = salsa_features(spect, ref, SalsaVariant::kLite, 64);
    const auto direct = log_linear_spectrogram(spect, ref, 64);
    for (int t = 0; t < feats.frames; ++t)
      for (int b = 0; b < 64; ++b)
        CHECK(feats.at(0, t, b) == direct.at(0, t, b));
  }
}

TEST_CASE("non-reference planes follow the channel order minus the reference") {
  const auto clip = testutil::noise_clip(4, 4800, 48000.0, 37);
  const auto spect = stft(clip);
  const auto feats = salsa_features(spect, 1, SalsaVariant::kIpd, 64);
  const auto raw = ipd_map(spect, 1);
  // Raw planes order channels 0, 2, 3; the stack puts them after channel 0.
  for (int p = 0; p < 3; ++p) {
    for (int t = 0; t < feats.frames; ++t) {
      for (int b = 1; b < 64; ++b) {
        CHECK(feats.at(p + 1, t, b) ==
              doctest::Approx(-raw.at(p, t, b) / (2.0 * M_PI)).epsilon(1e-12));
      }
    }
  }
}
