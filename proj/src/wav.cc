// src/wav.cc

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

#include <string>

#include "sqalab/audio.h"
#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

namespace {

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t pos) {
  return static_cast<std::uint32_t>(b[pos]) |
         (static_cast<std::uint32_t>(b[pos + 1]) << 8) |
         (static_cast<std::uint32_t>(b[pos + 2]) << 16) |
         (static_cast<std::uint32_t>(b[pos + 3]) << 24);
}

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t pos) {
  return static_cast<std::uint16_t>(b[pos] | (b[pos + 1] << 8));
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t pos, const char *tag) {
  for (int i = 0; i < 4; ++i) {
    if (b[pos + i] != static_cast<std::uint8_t>(tag[i])) return false;
  }
  return true;
}

Error Truncated(const std::string &what) {
  return Error(ErrorCode::kParse, "truncated WAV: " + what);
}

}  // namespace

WaveBuffer ReadWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw Truncated("missing RIFF header");
  if (!TagIs(bytes, 0, "RIFF") || !TagIs(bytes, 8, "WAVE")) {
    throw Error(ErrorCode::kParse, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  WaveBuffer wave;
  std::size_t pos = 12;
  while (true) {
    if (pos + 8 > bytes.size()) {
      throw Truncated(have_fmt ? "no data chunk" : "no fmt chunk");
    }
    const std::uint32_t chunk_size = ReadU32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;

    if (TagIs(bytes, pos, "fmt ")) {
      if (chunk_size < 16 || available < 16) throw Truncated("fmt chunk");
      const std::uint16_t format = ReadU16(bytes, body);
      const std::uint16_t channels = ReadU16(bytes, body + 2);
      const std::uint32_t rate = ReadU32(bytes, body + 4);
      const std::uint16_t bits = ReadU16(bytes, body + 14);
      if (format != 1) {
        throw Error(ErrorCode::kParse, "audio_format=" +
                                           std::to_string(format) +
                                           " unsupported (PCM=1 required)");
      }
      if (channels != 1) {
        throw Error(ErrorCode::kParse,
                    "channels=" + std::to_string(channels) + " unsupported");
      }
      if (bits != 16) {
        throw Error(ErrorCode::kParse, "bits_per_sample=" +
                                           std::to_string(bits) +
                                           " unsupported");
      }
      if (rate == 0) {
        throw Error(ErrorCode::kParse, "sample_rate=0 unsupported");
      }
      wave.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (TagIs(bytes, pos, "data")) {
      if (!have_fmt) {
        throw Error(ErrorCode::kParse, "data chunk before fmt chunk");
      }
      if (chunk_size > available) {
        throw Truncated("data chunk declares " + std::to_string(chunk_size) +
                        " bytes, " + std::to_string(available) +
                        " available");
      }
      if (chunk_size % 2 != 0) {
        throw Truncated("data chunk ends inside a sample");
      }
      const std::size_t count = chunk_size / 2;
      wave.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        const auto raw = static_cast<std::int16_t>(ReadU16(bytes, body + 2 * i));
        wave.samples[i] = static_cast<double>(raw) / 32768.0;
      }
      return wave;
    }
    if (chunk_size > available) {
      throw Truncated("chunk declares " + std::to_string(chunk_size) +
                      " bytes, " + std::to_string(available) + " available");
    }
    // Chunks are word aligned.
    pos = body + chunk_size + (chunk_size & 1u);
  }
}

WaveBuffer ReadWavFile(const std::filesystem::path &path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return ReadWav(bytes);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace sqalab
