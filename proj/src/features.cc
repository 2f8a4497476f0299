// src/features.cc

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

#include "sqalab/features.h"

#include <cmath>
#include <fstream>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

std::size_t FeatureDim(const FeatureTable &table) {
  if (table.empty()) {
    throw Error(ErrorCode::kPrecondition, "empty feature table");
  }
  const std::size_t dim = table.begin()->second.cols();
  for (const auto &[id, m] : table) {
    if (m.cols() != dim) {
      throw Error(ErrorCode::kDimension,
                  "sample " + id + " has D=" + std::to_string(m.cols()) +
                      " but sample " + table.begin()->first + " has D=" +
                      std::to_string(dim));
    }
  }
  return dim;
}

void WriteFeatures(std::ostream &out, const FeatureTable &table) {
  const std::size_t dim = FeatureDim(table);
  if (dim == 0) {
    throw Error(ErrorCode::kDimension, "features must have D >= 1");
  }
  out << "sample_id,frame_idx";
  for (std::size_t d = 0; d < dim; ++d) out << ",f" << d;
  out << '\n';
  for (const auto &[id, m] : table) {
    if (m.rows() == 0) {
      throw Error(ErrorCode::kPrecondition, "sample " + id + " has no frames");
    }
    for (std::size_t t = 0; t < m.rows(); ++t) {
      out << id << ',' << t;
      for (double v : m.row(t)) out << ',' << FormatShortest(v);
      out << '\n';
    }
  }
}

void WriteFeaturesFile(const std::filesystem::path &path,
                       const FeatureTable &table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteFeatures(out, table);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

FeatureTable ReadFeatures(std::istream &in, std::string_view source_name) {
  const std::string source(source_name);
  LineReader reader(in);
  std::string line;
  if (!reader.Next(&line)) {
    throw Error(ErrorCode::kParse, source + ": empty file");
  }
  auto header = SplitFields(line, ',');
  if (header.size() < 3 || header[0] != "sample_id" ||
      header[1] != "frame_idx") {
    throw Error(ErrorCode::kParse,
                source + " row 1: expected header "
                         "'sample_id,frame_idx,f0,...'");
  }
  const std::size_t dim = header.size() - 2;
  for (std::size_t d = 0; d < dim; ++d) {
    if (header[d + 2] != "f" + std::to_string(d)) {
      throw Error(ErrorCode::kParse, source + " row 1: column " +
                                         std::to_string(d + 2) +
                                         " should be f" + std::to_string(d));
    }
  }

  // sample -> frame index -> values
  std::map<std::string, std::map<std::size_t, std::vector<double>>> frames;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    const std::string where =
        source + " row " + std::to_string(reader.line_number());
    auto fields = SplitFields(line, ',');
    if (fields.size() != dim + 2) {
      throw Error(ErrorCode::kDimension,
                  where + ": sample " + std::string(fields[0]) + " has D=" +
                      std::to_string(fields.size() < 2 ? 0
                                                       : fields.size() - 2) +
                      " but the header declares D=" + std::to_string(dim));
    }
    if (fields[0].empty()) {
      throw Error(ErrorCode::kParse, where + ": empty sample_id");
    }
    long long idx = 0;
    if (!ParseInt(fields[1], &idx) || idx < 0) {
      throw Error(ErrorCode::kParse, where + ": bad frame_idx '" +
                                         std::string(fields[1]) + "'");
    }
    std::vector<double> values(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      if (!ParseDouble(fields[d + 2], &values[d]) ||
          !std::isfinite(values[d])) {
        throw Error(ErrorCode::kParse, where + ": bad value '" +
                                           std::string(fields[d + 2]) +
                                           "' in f" + std::to_string(d));
      }
    }
    auto &sample_frames = frames[std::string(fields[0])];
    if (!sample_frames.emplace(static_cast<std::size_t>(idx),
                               std::move(values)).second) {
      throw Error(ErrorCode::kParse, where + ": duplicate frame_idx " +
                                         std::to_string(idx) + " for sample " +
                                         std::string(fields[0]));
    }
  }
  if (frames.empty()) {
    throw Error(ErrorCode::kParse, source + ": no feature rows");
  }

  FeatureTable table;
  for (auto &[id, sample_frames] : frames) {
    std::size_t expected = 0;
    for (const auto &[idx, values] : sample_frames) {
      if (idx != expected) {
        throw Error(ErrorCode::kParse, source + ": sample " + id +
                                           " is missing frame_idx " +
                                           std::to_string(expected));
      }
      ++expected;
    }
    FeatureMatrix m(sample_frames.size(), dim);
    for (const auto &[idx, values] : sample_frames) {
      std::copy(values.begin(), values.end(), m.row(idx).begin());
    }
    table.emplace_hint(table.end(), id, std::move(m));
  }
  return table;
}

FeatureTable ReadFeaturesFile(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  return ReadFeatures(in, path.string());
}

}  // namespace sqalab
