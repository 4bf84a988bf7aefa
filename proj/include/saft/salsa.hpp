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

#ifndef SAFT_SALSA_HPP
#define SAFT_SALSA_HPP

#include <string>

#include "saft/types.hpp"

namespace saft {

// Normalization applied to inter-channel phase differences:
//  kIpd:  -ipd / (2 pi), in fractional wavelengths (turns)
//  kLite: -ipd * c / (2 pi f), in meters of path difference; at f = 0 the
//         value is defined as 0.
enum class SalsaVariant { kIpd, kLite };

const char* to_string(SalsaVariant v);
SalsaVariant salsa_variant_from_string(const std::string& name);

// Raw inter-channel phase difference arg(X_ref * conj(X_m)) per non-reference
// channel, wrapped to (-pi, pi]. [(M-1) x frames x freq_bins]. A channel
// delayed relative to the reference yields a positive phase difference,
// matching the correlation features' sign convention (the non-reference
// channel is the conjugated one).
FeatureTensor ipd_map(const SpectralTensor& spec, int ref_channel);

// Spatial cue stack: channel 0 is the log-power spectrogram of the reference
// over the lowest n_bins FFT bins, channels 1..M-1 are the normalized phase
// differences over those same bins, so every spatial cell is aligned with
// its spectrogram cell. [M x frames x n_bins].
FeatureTensor salsa_features(const SpectralTensor& spec, int ref_channel,
                             SalsaVariant variant, int n_bins,
                             double c = 343.0);

}  // namespace saft

#endif  // SAFT_SALSA_HPP
