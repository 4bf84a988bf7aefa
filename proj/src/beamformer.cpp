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

#include "saft/beamformer.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "saft/io_util.hpp"

namespace saft {

namespace {

constexpr double kResidualTol = 1e-6;

double unnormalized_sinc(double x) {
  return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
}

uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g;", v);
  out += buf;
}

}  // namespace

LookDirectionBank LookDirectionBank::dirs15() {
  LookDirectionBank bank;
  bank.azimuths_deg.push_back(-45.0);
  for (int a = -30; a <= 30; a += 5) bank.azimuths_deg.push_back(a);
  bank.azimuths_deg.push_back(45.0);
  return bank;
}

LookDirectionBank LookDirectionBank::dirs7() {
  return LookDirectionBank{{-45.0, -30.0, -15.0, 0.0, 15.0, 30.0, 45.0}};
}

LookDirectionBank LookDirectionBank::dirs3() {
  return LookDirectionBank{{-20.0, 0.0, 20.0}};
}

LookDirectionBank LookDirectionBank::custom(std::vector<double> azimuths_deg) {
  if (azimuths_deg.empty()) {
    throw std::invalid_argument("look direction bank must not be empty");
  }
  return LookDirectionBank{std::move(azimuths_deg)};
}

LookDirectionBank LookDirectionBank::preset(int n_dirs) {
  switch (n_dirs) {
    case 3:
      return dirs3();
    case 7:
      return dirs7();
    case 15:
      return dirs15();
  }
  throw std::invalid_argument("no look direction preset with " +
                              std::to_string(n_dirs) + " directions");
}

std::vector<std::complex<double>> steering_vector(
    const std::vector<Microphone>& mics, double az_deg, int bin, int fft_size,
    double sample_rate, double c) {
  if (mics.empty()) throw std::invalid_argument("steering_vector: no mics");
  const int n_bins = fft_size / 2 + 1;
  if (bin < 0 || bin >= n_bins) {
    throw std::invalid_argument("steering_vector: bin out of range");
  }
  const double az = az_deg * M_PI / 180.0;
  const double ux = std::sin(az);
  const double uz = std::cos(az);
  const double omega = 2.0 * M_PI * bin * sample_rate / fft_size;
  const bool real_bin = (bin == 0) || (fft_size % 2 == 0 && bin == fft_size / 2);

  std::vector<std::complex<double>> d(mics.size());
  for (size_t m = 0; m < mics.size(); ++m) {
    const double proj = mics[m].x * ux + mics[m].z * uz;
    const double phase = omega * proj / c;
    if (real_bin) {
      d[m] = std::complex<double>(std::cos(phase), 0.0);
    } else {
      d[m] = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return d;
}

uint64_t weights_fingerprint(const std::vector<Microphone>& mics,
                             const LookDirectionBank& bank, int fft_size,
                             double sample_rate, double loading, double c) {
  std::string repr = "sdbw1;";
  for (const auto& m : mics) {
    repr += std::to_string(m.id) + ":";
    append_num(repr, m.x);
    append_num(repr, m.y);
    append_num(repr, m.z);
  }
  repr += "|";
  for (double az : bank.azimuths_deg) append_num(repr, az);
  repr += "|" + std::to_string(fft_size) + ";";
  append_num(repr, sample_rate);
  append_num(repr, loading);
  append_num(repr, c);
  return fnv1a(repr);
}

BeamformerWeights sdb_weights(const std::vector<Microphone>& mics,
                              const LookDirectionBank& bank, int fft_size,
                              double sample_rate, double loading, double c) {
  if (mics.empty()) throw std::invalid_argument("sdb_weights: no mics");
  if (bank.azimuths_deg.empty()) {
    throw std::invalid_argument("sdb_weights: empty look direction bank");
  }
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0) {
    throw std::invalid_argument("sdb_weights: fft_size must be a power of two");
  }
  if (!(sample_rate > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("sdb_weights: rate and c must be positive");
  }
  if (loading < 0.0) {
    throw std::invalid_argument("sdb_weights: loading must be >= 0");
  }

  const int n_mics = static_cast<int>(mics.size());
  const int n_bins = fft_size / 2 + 1;
  const int n_dirs = static_cast<int>(bank.azimuths_deg.size());

  BeamformerWeights out;
  out.dirs = n_dirs;
  out.freq_bins = n_bins;
  out.mics = n_mics;
  out.azimuths_deg = bank.azimuths_deg;
  out.fft_size = fft_size;
  out.sample_rate = sample_rate;
  out.loading = loading;
  out.c = c;
  out.fingerprint =
      weights_fingerprint(mics, bank, fft_size, sample_rate, loading, c);
  out.w.resize(static_cast<size_t>(n_dirs) * n_bins * n_mics);

  Eigen::MatrixXd gamma(n_mics, n_mics);
  for (int f = 0; f < n_bins; ++f) {
    const double freq_hz = f * sample_rate / fft_size;
    for (int p = 0; p < n_mics; ++p) {
      for (int q = 0; q < n_mics; ++q) {
        const double dx = mics[p].x - mics[q].x;
        const double dy = mics[p].y - mics[q].y;
        const double dz = mics[p].z - mics[q].z;
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        gamma(p, q) = unnormalized_sinc(2.0 * M_PI * freq_hz * dist / c);
      }
      gamma(p, p) += loading;
    }
    const Eigen::LDLT<Eigen::MatrixXd> solver(gamma);

    for (int dir = 0; dir < n_dirs; ++dir) {
      const auto d = steering_vector(mics, bank.azimuths_deg[dir], f, fft_size,
                                     sample_rate, c);
      Eigen::VectorXd d_re(n_mics), d_im(n_mics);
      for (int m = 0; m < n_mics; ++m) {
        d_re(m) = d[m].real();
        d_im(m) = d[m].imag();
      }
      const Eigen::VectorXd x_re = solver.solve(d_re);
      const Eigen::VectorXd x_im = solver.solve(d_im);

      // Check the solve actually inverted (Gamma + loading I); LDLT does not
      // signal rank deficiency on its own.
      const double res =
          std::sqrt((gamma * x_re - d_re).squaredNorm() +
                    (gamma * x_im - d_im).squaredNorm());
      const double d_norm = std::sqrt(d_re.squaredNorm() + d_im.squaredNorm());
      std::complex<double> denom(0.0, 0.0);
      for (int m = 0; m < n_mics; ++m) {
        denom += std::conj(d[m]) * std::complex<double>(x_re(m), x_im(m));
      }
      if (!std::isfinite(res) || d_norm < 1e-12 || res > kResidualTol * d_norm ||
          std::abs(denom) < 1e-12) {
        throw std::runtime_error(
            "sdb_weights: singular coherence system at bin " +
            std::to_string(f) + ", azimuth " +
            std::to_string(bank.azimuths_deg[dir]));
      }
      for (int m = 0; m < n_mics; ++m) {
        out.at(dir, f, m) =
            std::complex<double>(x_re(m), x_im(m)) / denom;
      }
    }
  }
  return out;
}

SpectralTensor steer(const SpectralTensor& spec,
                     const BeamformerWeights& weights) {
  if (spec.channels != weights.mics) {
    throw std::invalid_argument("steer: channel count does not match weights");
  }
  if (spec.freq_bins != weights.freq_bins ||
      spec.fft_size != weights.fft_size) {
    throw std::invalid_argument("steer: spectrum size does not match weights");
  }
  if (spec.sample_rate != weights.sample_rate) {
    throw std::invalid_argument("steer: sample rate does not match weights");
  }
  SpectralTensor out;
  out.channels = weights.dirs;
  out.frames = spec.frames;
  out.freq_bins = spec.freq_bins;
  out.fft_size = spec.fft_size;
  out.frame_hop = spec.frame_hop;
  out.sample_rate = spec.sample_rate;
  out.data.assign(
      static_cast<size_t>(out.channels) * out.frames * out.freq_bins,
      std::complex<double>(0.0, 0.0));
  for (int dir = 0; dir < weights.dirs; ++dir) {
    for (int t = 0; t < spec.frames; ++t) {
      for (int f = 0; f < spec.freq_bins; ++f) {
        std::complex<double> acc(0.0, 0.0);
        for (int m = 0; m < weights.mics; ++m) {
          acc += std::conj(weights.at(dir, f, m)) * spec.at(m, t, f);
        }
        out.at(dir, t, f) = acc;
      }
    }
  }
  return out;
}

FeatureTensor beamformer_features(const SpectralTensor& spec,
                                  const BeamformerWeights& weights,
                                  const MelFilterbank& fb) {
  const SpectralTensor steered = steer(spec, weights);
  FeatureTensor out = FeatureTensor::zeros(weights.dirs, spec.frames,
                                           fb.n_mels, FeatureKind::kBeamformed);
  for (int dir = 0; dir < weights.dirs; ++dir) {
    const FeatureTensor plane = log_mel_spectrogram(steered, dir, fb);
    for (int t = 0; t < spec.frames; ++t) {
      for (int b = 0; b < fb.n_mels; ++b) {
        out.at(dir, t, b) = plane.at(0, t, b);
      }
    }
  }
  return out;
}

std::string encode_weights(const BeamformerWeights& weights) {
  std::string out = "SDBW";
  append_u32le(out, 1);  // version
  append_u32le(out, static_cast<uint32_t>(weights.dirs));
  append_u32le(out, static_cast<uint32_t>(weights.freq_bins));
  append_u32le(out, static_cast<uint32_t>(weights.mics));
  append_u32le(out, static_cast<uint32_t>(weights.fft_size));
  append_f64le(out, weights.sample_rate);
  append_f64le(out, weights.loading);
  append_f64le(out, weights.c);
  append_u64le(out, weights.fingerprint);
  for (double az : weights.azimuths_deg) append_f64le(out, az);
  for (const auto& w : weights.w) {
    append_f64le(out, w.real());
    append_f64le(out, w.imag());
  }
  return out;
}

BeamformerWeights decode_weights(const std::string& bytes,
                                 const std::string& name) {
  if (bytes.size() < 4 + 5 * 4 + 3 * 8 + 8 ||
      bytes.compare(0, 4, "SDBW") != 0) {
    throw std::runtime_error(name + ": not a beamformer weight cache");
  }
  size_t pos = 4;
  const uint32_t version = read_u32le(bytes, pos);
  pos += 4;
  if (version != 1) {
    throw std::runtime_error(name + ": unsupported weight cache version " +
                             std::to_string(version));
  }
  BeamformerWeights w;
  w.dirs = static_cast<int>(read_u32le(bytes, pos));
  pos += 4;
  w.freq_bins = static_cast<int>(read_u32le(bytes, pos));
  pos += 4;
  w.mics = static_cast<int>(read_u32le(bytes, pos));
  pos += 4;
  w.fft_size = static_cast<int>(read_u32le(bytes, pos));
  pos += 4;
  w.sample_rate = read_f64le(bytes, pos);
  pos += 8;
  w.loading = read_f64le(bytes, pos);
  pos += 8;
  w.c = read_f64le(bytes, pos);
  pos += 8;
  w.fingerprint = read_u64le(bytes, pos);
  pos += 8;
  if (w.dirs < 1 || w.freq_bins < 1 || w.mics < 1) {
    throw std::runtime_error(name + ": empty weight cache dimension");
  }
  const size_t count =
      static_cast<size_t>(w.dirs) * w.freq_bins * w.mics;
  if (bytes.size() != pos + 8 * w.dirs + 16 * count) {
    throw std::runtime_error(name + ": size does not match header");
  }
  w.azimuths_deg.resize(w.dirs);
  for (int i = 0; i < w.dirs; ++i) {
    w.azimuths_deg[i] = read_f64le(bytes, pos);
    pos += 8;
  }
  w.w.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const double re = read_f64le(bytes, pos);
    const double im = read_f64le(bytes, pos + 8);
    pos += 16;
    w.w[i] = std::complex<double>(re, im);
  }
  return w;
}

void write_weights(const std::string& path, const BeamformerWeights& weights) {
  write_file_atomic(path, encode_weights(weights));
}

BeamformerWeights read_weights(const std::string& path) {
  return decode_weights(read_file(path), path);
}

void validate_weights(const BeamformerWeights& weights,
                      const std::vector<Microphone>& mics,
                      const LookDirectionBank& bank, int fft_size,
                      double sample_rate, double loading, double c) {
  const uint64_t expect =
      weights_fingerprint(mics, bank, fft_size, sample_rate, loading, c);
  if (weights.fingerprint != expect ||
      weights.mics != static_cast<int>(mics.size()) ||
      weights.dirs != static_cast<int>(bank.azimuths_deg.size()) ||
      weights.fft_size != fft_size || weights.sample_rate != sample_rate ||
      weights.loading != loading || weights.c != c) {
    throw std::runtime_error(
        "beamformer weight cache does not match the requested geometry and "
        "parameters; regenerate it");
  }
}

}  // namespace saft
