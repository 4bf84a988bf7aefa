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

#include "saft/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace saft {

namespace {
// The FFTW planner mutates global state; all plan create/destroy calls must
// hold this lock. fftw_execute on distinct plans is safe concurrently.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

RealFft::RealFft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 1) throw std::invalid_argument("RealFft: size must be >= 1");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->real_buf = fftw_alloc_real(static_cast<size_t>(n));
  impl_->cplx_buf = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
  if (!impl_->real_buf || !impl_->cplx_buf) {
    if (impl_->real_buf) fftw_free(impl_->real_buf);
    if (impl_->cplx_buf) fftw_free(impl_->cplx_buf);
    throw std::bad_alloc();
  }
  impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real_buf, impl_->cplx_buf,
                                    FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(n, impl_->cplx_buf, impl_->real_buf,
                                    FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->inv) {
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->inv) fftw_destroy_plan(impl_->inv);
    fftw_free(impl_->real_buf);
    fftw_free(impl_->cplx_buf);
    throw std::runtime_error("RealFft: FFTW plan creation failed");
  }
}

RealFft::~RealFft() {
  if (!impl_) return;
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->inv) fftw_destroy_plan(impl_->inv);
  if (impl_->real_buf) fftw_free(impl_->real_buf);
  if (impl_->cplx_buf) fftw_free(impl_->cplx_buf);
}

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::memcpy(impl_->real_buf, in, sizeof(double) * static_cast<size_t>(n_));
  fftw_execute(impl_->fwd);
  const int nb = bins();
  for (int k = 0; k < nb; ++k) {
    out[k] = std::complex<double>(impl_->cplx_buf[k][0], impl_->cplx_buf[k][1]);
  }
}

void RealFft::inverse(const std::complex<double>* in, double* out) {
  const int nb = bins();
  for (int k = 0; k < nb; ++k) {
    impl_->cplx_buf[k][0] = in[k].real();
    impl_->cplx_buf[k][1] = in[k].imag();
  }
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) out[i] = impl_->real_buf[i] * scale;
}

}  // namespace saft
