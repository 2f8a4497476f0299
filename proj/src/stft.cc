// src/stft.cc

// Copyright 2026 The sqa-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "sqalab/audio.h"
#include "sqalab/error.h"

namespace sqalab {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;

// Real-to-complex transform of one fixed length, with its own buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(fftw_alloc_real(n)),
        out_(fftw_alloc_complex(n / 2 + 1)) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_,
                                 FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex);
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  // Writes |X_k| for k = 0..n/2 into `mags`.
  void Magnitudes(std::span<const double> frame, std::span<double> mags) {
    std::copy(frame.begin(), frame.end(), in_);
    fftw_execute(plan_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      mags[k] = std::hypot(out_[k][0], out_[k][1]);
    }
  }

 private:
  std::size_t n_;
  double *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

}  // namespace

std::vector<double> HammingWindow(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::kPrecondition,
                "Hamming window needs n >= 2, got " + std::to_string(n));
  }
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(k) / denom);
  }
  return w;
}

void StftConfig::Validate() const {
  if (window_length < 2) {
    throw Error(ErrorCode::kPrecondition, "window_length must be >= 2");
  }
  if (hop_length == 0 || hop_length > window_length) {
    throw Error(ErrorCode::kPrecondition,
                "hop_length must satisfy 0 < hop <= window_length");
  }
}

std::size_t FrameCount(std::size_t signal_length, std::size_t window_length,
                       std::size_t hop_length) {
  if (signal_length < window_length) return 0;
  return (signal_length - window_length) / hop_length + 1;
}

std::vector<double> MagnitudeSpectrum(std::span<const double> frame) {
  if (frame.empty()) {
    throw Error(ErrorCode::kPrecondition, "spectrum of an empty frame");
  }
  std::vector<double> mags(frame.size() / 2 + 1);
  RealFft(frame.size()).Magnitudes(frame, mags);
  return mags;
}

FeatureMatrix StftMagnitude(const WaveBuffer &wave, const StftConfig &config) {
  config.Validate();
  const std::size_t frames = FrameCount(
      wave.samples.size(), config.window_length, config.hop_length);
  if (frames == 0) {
    throw Error(ErrorCode::kPrecondition,
                "signal of " + std::to_string(wave.samples.size()) +
                    " samples is shorter than one window (" +
                    std::to_string(config.window_length) + ")");
  }
  const std::vector<double> window = HammingWindow(config.window_length);
  FeatureMatrix spec(frames, config.window_length / 2 + 1);
  std::vector<double> buf(config.window_length);
  RealFft fft(config.window_length);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t offset = t * config.hop_length;
    for (std::size_t i = 0; i < config.window_length; ++i) {
      buf[i] = wave.samples[offset + i] * window[i];
    }
    fft.Magnitudes(buf, spec.row(t));
  }
  return spec;
}

}  // namespace sqalab
