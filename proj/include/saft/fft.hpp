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

#ifndef SAFT_FFT_HPP
#define SAFT_FFT_HPP

#include <complex>
#include <memory>

namespace saft {

// Real-input FFT of a fixed size backed by FFTW (double precision).
// forward() is the unnormalized DFT returning the one-sided spectrum of
// size() / 2 + 1 bins; inverse() applies the 1/size() factor so that
// inverse(forward(x)) == x up to rounding.
//
// An instance owns its plans and scratch buffers and is NOT thread safe;
// create one per thread. Plan creation/destruction is serialized internally
// because the FFTW planner is a global resource.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  // in: size() samples, out: bins() complex values.
  void forward(const double* in, std::complex<double>* out);
  // in: bins() complex values, out: size() samples.
  void inverse(const std::complex<double>* in, double* out);

 private:
  int n_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace saft

#endif  // SAFT_FFT_HPP
