// src/cli/output_stager.cc

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

#include "output_stager.h"

#include <unistd.h>

#include <system_error>

#include "sqalab/error.h"

namespace sqalab {

OutputStager::OutputStager(std::filesystem::path out_dir)
    : out_dir_(std::move(out_dir)) {}

OutputStager::~OutputStager() {
  if (committed_) return;
  streams_.clear();
  std::error_code ec;
  for (const auto &temp : temps_) std::filesystem::remove(temp, ec);
}

std::ostream &OutputStager::Open(const std::string &file_name) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output directory " +
                                    out_dir_.string() + ": " + ec.message());
  }
  const auto final_path = out_dir_ / file_name;
  const auto temp_path =
      out_dir_ / ("." + file_name + ".tmp-" + std::to_string(::getpid()));
  auto stream = std::make_unique<std::ofstream>(temp_path, std::ios::binary);
  if (!*stream) {
    throw Error(ErrorCode::kIo, "cannot write " + temp_path.string());
  }
  temps_.push_back(temp_path);
  finals_.push_back(final_path);
  streams_.push_back(std::move(stream));
  return *streams_.back();
}

void OutputStager::Commit() {
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    streams_[i]->close();
    if (!*streams_[i]) {
      throw Error(ErrorCode::kIo, "write failed for " + finals_[i].string());
    }
  }
  for (std::size_t i = 0; i < temps_.size(); ++i) {
    std::error_code ec;
    std::filesystem::rename(temps_[i], finals_[i], ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot move output into place: " +
                                      finals_[i].string() + ": " +
                                      ec.message());
    }
  }
  committed_ = true;
}

}  // namespace sqalab
