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

#include "saft/salsa.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "saft/dsp.hpp"

namespace saft {

const char* to_string(SalsaVariant v) {
  return v == SalsaVariant::kIpd ? "salsa-ipd" : "salsa-lite";
}

SalsaVariant salsa_variant_from_string(const std::string& name) {
  if (name == "salsa-ipd") return SalsaVariant::kIpd;
  if (name == "salsa-lite") return SalsaVariant::kLite;
  throw std::invalid_argument("unknown salsa variant: " + name);
}

FeatureTensor ipd_map(const SpectralTensor& spec, int ref_channel) {
  if (ref_channel < 0 || ref_channel >= spec.channels) {
    throw std::invalid_argument("ipd_map: reference channel out of range");
  }
  if (spec.channels < 2) {
    throw std::invalid_argument("ipd_map: needs at least two channels");
  }
  FeatureTensor out = FeatureTensor::zeros(
      spec.channels - 1, spec.frames, spec.freq_bins, FeatureKind::kSalsaIpd);
  int c_out = 0;
  for (int m = 0; m < spec.channels; ++m) {
    if (m == ref_channel) continue;
    for (int t = 0; t < spec.frames; ++t) {
      for (int f = 0; f < spec.freq_bins; ++f) {
        const std::complex<double> r =
            spec.at(ref_channel, t, f) * std::conj(spec.at(m, t, f));
        out.at(c_out, t, f) = std::arg(r);
      }
    }
    ++c_out;
  }
  return out;
}

FeatureTensor salsa_features(const SpectralTensor& spec, int ref_channel,
                             SalsaVariant variant, int n_bins, double c) {
  if (n_bins < 1 || n_bins > spec.freq_bins) {
    throw std::invalid_argument("salsa_features: n_bins out of range");
  }
  if (!(c > 0.0)) {
    throw std::invalid_argument("salsa_features: sound speed must be positive");
  }
  const FeatureTensor ipd = ipd_map(spec, ref_channel);
  const FeatureTensor spect =
      log_linear_spectrogram(spec, ref_channel, n_bins);

  FeatureTensor out = FeatureTensor::zeros(
      spec.channels, spec.frames, n_bins,
      variant == SalsaVariant::kIpd ? FeatureKind::kSalsaIpd
                                    : FeatureKind::kSalsaLite);
  for (int t = 0; t < spec.frames; ++t) {
    for (int b = 0; b < n_bins; ++b) out.at(0, t, b) = spect.at(0, t, b);
  }

  for (int m = 0; m < spec.channels - 1; ++m) {
    for (int t = 0; t < spec.frames; ++t) {
      for (int b = 0; b < n_bins; ++b) {
        const double phase = ipd.at(m, t, b);
        double v;
        if (variant == SalsaVariant::kIpd) {
          v = -phase / (2.0 * M_PI);
        } else {
          const double f_hz = spec.bin_hz(b);
          v = f_hz > 0.0 ? -phase * c / (2.0 * M_PI * f_hz) : 0.0;
        }
        out.at(m + 1, t, b) = v;
      }
    }
  }
  return out;
}

}  // namespace saft
