// include/sqalab/audio.h

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

#ifndef SQALAB_AUDIO_H_
#define SQALAB_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sqalab/features.h"

namespace sqalab {

inline constexpr int kProtocolSampleRate = 16000;

/// Mono waveform scaled to [-1, 1).
struct WaveBuffer {
  std::vector<double> samples;
  int sample_rate = 0;
};

/// Decodes a RIFF/WAVE file holding 16-bit mono PCM. Samples are scaled by
/// 1/32768. Any other format, channel count or bit depth is rejected with an
/// error naming the header field; short reads are reported as truncation.
WaveBuffer ReadWav(std::span<const std::uint8_t> bytes);
WaveBuffer ReadWavFile(const std::filesystem::path &path);

/// Symmetric Hamming window, w[k] = 0.54 - 0.46 cos(2 pi k / (n - 1)).
std::vector<double> HammingWindow(std::size_t n);

struct StftConfig {
  std::size_t window_length = 512;  // 32 ms at 16 kHz
  std::size_t hop_length = 256;     // 16 ms at 16 kHz

  void Validate() const;
};

/// Frames placed at 0, hop, 2*hop, ... while a whole window fits; no padding.
std::size_t FrameCount(std::size_t signal_length, std::size_t window_length,
                       std::size_t hop_length);

/// |DFT| bins 0..N/2 of one real frame, any N >= 1.
std::vector<double> MagnitudeSpectrum(std::span<const double> frame);

/// T x (window_length/2 + 1) magnitude spectrogram of Hamming-windowed
/// frames. Throws kPrecondition when the signal is shorter than one window.
FeatureMatrix StftMagnitude(const WaveBuffer &wave, const StftConfig &config);

}  // namespace sqalab

#endif  // SQALAB_AUDIO_H_
