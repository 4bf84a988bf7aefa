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

#ifndef SAFT_BEAMFORMER_HPP
#define SAFT_BEAMFORMER_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "saft/dsp.hpp"
#include "saft/geometry.hpp"
#include "saft/types.hpp"

namespace saft {

// Azimuth look directions for a steered beamformer bank.
struct LookDirectionBank {
  std::vector<double> azimuths_deg;

  // 15 looks: -45, then -30..30 in 5 degree steps, then +45.
  static LookDirectionBank dirs15();
  // 7 looks: 0, +/-15, +/-30, +/-45.
  static LookDirectionBank dirs7();
  // 3 looks: 0, +/-20.
  static LookDirectionBank dirs3();
  static LookDirectionBank custom(std::vector<double> azimuths_deg);
  // Accepts "3", "7", "15".
  static LookDirectionBank preset(int n_dirs);
};

// Far-field steering phasor per mic for a plane wave from azimuth az_deg
// (propagation direction (sin az, 0, cos az)): exp(+j w <p_m, u> / c).
// At DC and Nyquist, where a real signal's spectrum is real, the vector is
// projected onto its real part.
std::vector<std::complex<double>> steering_vector(
    const std::vector<Microphone>& mics, double az_deg, int bin, int fft_size,
    double sample_rate, double c);

// Super-directive weights: per look direction and frequency bin,
// w = B d / (d^H B d) with B = inverse of (Gamma + loading I), where
// Gamma_pq = sinc(2 pi f d_pq / c) is the spherically isotropic coherence.
// By construction w^H d = 1 (distortionless at the look direction).
struct BeamformerWeights {
  std::vector<std::complex<double>> w;  // [dir][freq][mic] C order
  int dirs = 0;
  int freq_bins = 0;
  int mics = 0;
  std::vector<double> azimuths_deg;
  int fft_size = 0;
  double sample_rate = 0.0;
  double loading = 0.0;
  double c = 0.0;
  uint64_t fingerprint = 0;  // hash of geometry + parameters

  std::complex<double>& at(int d, int f, int m) {
    return w[(static_cast<size_t>(d) * freq_bins + f) * mics + m];
  }
  const std::complex<double>& at(int d, int f, int m) const {
    return w[(static_cast<size_t>(d) * freq_bins + f) * mics + m];
  }
};

uint64_t weights_fingerprint(const std::vector<Microphone>& mics,
                             const LookDirectionBank& bank, int fft_size,
                             double sample_rate, double loading, double c);

// Solves every (direction, bin) system. Throws if a solve is numerically
// singular despite the loading term (the residual is checked; nothing is
// regularized further behind the caller's back). Deterministic: identical
// inputs give bit-identical weights.
BeamformerWeights sdb_weights(const std::vector<Microphone>& mics,
                              const LookDirectionBank& bank, int fft_size,
                              double sample_rate, double loading = 1e-2,
                              double c = kSpeedOfSound);

// Applies the weight bank: output channel d, bin f is sum_m conj(w) X_m.
// The clip's spectrum must match the weights' fft size, rate and mic count.
SpectralTensor steer(const SpectralTensor& spec,
                     const BeamformerWeights& weights);

// Log-mel spectrogram of every steered direction stacked along channels:
// [dirs x frames x n_mels].
FeatureTensor beamformer_features(const SpectralTensor& spec,
                                  const BeamformerWeights& weights,
                                  const MelFilterbank& fb);

// Binary weight cache. Readers get the stored fingerprint back and must
// compare it against weights_fingerprint for their geometry + parameters;
// validate_weights does exactly that and throws on mismatch.
std::string encode_weights(const BeamformerWeights& weights);
BeamformerWeights decode_weights(const std::string& bytes,
                                 const std::string& name);
void write_weights(const std::string& path, const BeamformerWeights& weights);
BeamformerWeights read_weights(const std::string& path);
void validate_weights(const BeamformerWeights& weights,
                      const std::vector<Microphone>& mics,
                      const LookDirectionBank& bank, int fft_size,
                      double sample_rate, double loading, double c);

}  // namespace saft

#endif  // SAFT_BEAMFORMER_HPP
