// src/keyed_values.cc

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

#include "sqalab/keyed_values.h"

#include <cmath>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

KeyedValues ReadKeyedValues(std::istream &in, std::string_view source_name,
                            std::string_view value_column) {
  const std::string source(source_name);
  const std::string header = "sample_id," + std::string(value_column);
  LineReader reader(in);
  std::string line;
  if (!reader.Next(&line)) {
    throw Error(ErrorCode::kParse, source + ": empty file");
  }
  if (line != header) {
    throw Error(ErrorCode::kParse, source + " row 1: expected header '" +
                                       header + "', got '" + line + "'");
  }
  KeyedValues values;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    const std::string where =
        source + " row " + std::to_string(reader.line_number());
    auto fields = SplitFields(line, ',');
    if (fields.size() != 2 || fields[0].empty()) {
      throw Error(ErrorCode::kParse, where + ": expected 'sample_id,value'");
    }
    double v = 0.0;
    if (!ParseDouble(fields[1], &v) || !std::isfinite(v)) {
      throw Error(ErrorCode::kParse, where + ": bad number '" +
                                         std::string(fields[1]) + "'");
    }
    if (!values.emplace(std::string(fields[0]), v).second) {
      throw Error(ErrorCode::kParse,
                  where + ": duplicate sample_id " + std::string(fields[0]));
    }
  }
  if (values.empty()) {
    throw Error(ErrorCode::kParse, source + ": no rows after header");
  }
  return values;
}

KeyedValues ReadKeyedValuesFile(const std::filesystem::path &path,
                                std::string_view value_column) {
  std::ifstream in = OpenInput(path);
  return ReadKeyedValues(in, path.string(), value_column);
}

void WritePredictionsCsv(std::ostream &out, const KeyedValues &predictions) {
  out << "sample_id,prediction\n";
  for (const auto &[id, v] : predictions) {
    out << id << ',' << FormatShortest(v) << '\n';
  }
}

JoinedSeries JoinOnId(const KeyedValues &truths,
                      const KeyedValues &predictions) {
  std::vector<std::string> only_truth;
  std::vector<std::string> only_prediction;
  JoinedSeries joined;
  for (const auto &[id, v] : truths) {
    auto it = predictions.find(id);
    if (it == predictions.end()) {
      only_truth.push_back(id);
      continue;
    }
    joined.ids.push_back(id);
    joined.truths.push_back(v);
    joined.predictions.push_back(it->second);
  }
  for (const auto &[id, v] : predictions) {
    if (!truths.count(id)) only_prediction.push_back(id);
  }
  if (!only_truth.empty() || !only_prediction.empty()) {
    std::string msg = "unmatched sample ids;";
    if (!only_truth.empty()) {
      msg += " targets only:";
      for (const auto &id : only_truth) msg += " " + id;
      if (!only_prediction.empty()) msg += ";";
    }
    if (!only_prediction.empty()) {
      msg += " predictions only:";
      for (const auto &id : only_prediction) msg += " " + id;
    }
    throw Error(ErrorCode::kPrecondition, msg);
  }
  return joined;
}

}  // namespace sqalab
