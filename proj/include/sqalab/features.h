// include/sqalab/features.h

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

#ifndef SQALAB_FEATURES_H_
#define SQALAB_FEATURES_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqalab {

/// Row-major T x D matrix of per-frame features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> values() const { return data_; }

  bool operator==(const FeatureMatrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Features keyed by sample id.
using FeatureTable = std::map<std::string, FeatureMatrix>;

/// CSV `sample_id,frame_idx,f0,...,f{D-1}`, rows ordered by sample id then
/// frame. Every matrix must have the same D and at least one frame.
void WriteFeatures(std::ostream &out, const FeatureTable &table);
void WriteFeaturesFile(const std::filesystem::path &path,
                       const FeatureTable &table);

/// Rejects ragged rows, duplicate or missing frame indices, and samples
/// whose width disagrees with the header.
FeatureTable ReadFeatures(std::istream &in, std::string_view source_name);
FeatureTable ReadFeaturesFile(const std::filesystem::path &path);

/// Common feature width of a non-empty table.
std::size_t FeatureDim(const FeatureTable &table);

}  // namespace sqalab

#endif  // SQALAB_FEATURES_H_
