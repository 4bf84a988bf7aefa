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

#ifndef SAFT_GCC_PHAT_HPP
#define SAFT_GCC_PHAT_HPP

#include <utility>
#include <vector>

#include "saft/dsp.hpp"
#include "saft/types.hpp"

namespace saft {

// Channel pairing for cross-correlation features: either every unordered
// pair (i, j) with i < j, or the reference channel against each other one.
struct PairingMode {
  enum class Kind { kAllPairs, kReference };
  Kind kind = Kind::kAllPairs;
  int ref_channel = 0;

  static PairingMode all_pairs() { return PairingMode{}; }
  static PairingMode reference(int ref = 0) {
    return PairingMode{Kind::kReference, ref};
  }
};

std::vector<std::pair<int, int>> make_pairs(int channels,
                                            const PairingMode& mode);

// Lag <-> feature-column mapping shared by every correlation-shaped tensor:
// column c holds lag c - width/2, so lag 0 sits at the center column.
inline int lag_for_column(int column, int width) { return column - width / 2; }
inline int column_for_lag(int lag, int width) { return lag + width / 2; }

// Phase-transform cross-correlation of channels i and j per frame:
// the cross spectrum is whitened to unit magnitude and inverse transformed,
// so the result is a sharp pulse at the inter-channel delay with values in
// [-1, 1]. n_lag_bins must be odd; column k holds lag k - n_lag_bins / 2,
// positive lags meaning channel j lags channel i. [1 x frames x n_lag_bins].
FeatureTensor gcc_phat_pair(const SpectralTensor& spec, int i, int j,
                            int n_lag_bins);

// Signed lag of the per-frame peak; ties resolve toward the smaller |lag|
// (and toward the positive lag between equals).
int tdoa_argmax(const FeatureTensor& gcc, int frame);

// Stacked correlation feature: channel 0 is the log-mel spectrogram of
// spect_channel and each further channel is one pair's correlation, laid
// into the fb.n_mels-wide bin axis around the center column (columns beyond
// the correlation width stay zero; a wider correlation is cropped).
// Channel count is 1 + M(M-1)/2 for all-pairs, 1 + (M-1) for reference.
FeatureTensor gcc_phat_features(const SpectralTensor& spec,
                                const PairingMode& mode, int n_lag_bins,
                                const MelFilterbank& fb, int spect_channel = 0);

// One pair's correlation tensor kept with its channel indices, for
// consumers that need the pair structure (e.g. steered response power).
struct GccPair {
  int i = 0;
  int j = 0;
  FeatureTensor gcc;
};

std::vector<GccPair> gcc_pair_bundle(const SpectralTensor& spec,
                                     const PairingMode& mode, int n_lag_bins);

}  // namespace saft

#endif  // SAFT_GCC_PHAT_HPP
