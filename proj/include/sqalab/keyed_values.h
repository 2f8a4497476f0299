// include/sqalab/keyed_values.h

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

#ifndef SQALAB_KEYED_VALUES_H_
#define SQALAB_KEYED_VALUES_H_

// Two-column `sample_id,<name>` tables: targets (`value`) and predictions
// (`prediction`), and the id join used for evaluation.

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sqalab {

using KeyedValues = std::map<std::string, double>;

/// Reads a CSV whose header is exactly `sample_id,<value_column>`.
KeyedValues ReadKeyedValues(std::istream &in, std::string_view source_name,
                            std::string_view value_column);
KeyedValues ReadKeyedValuesFile(const std::filesystem::path &path,
                                std::string_view value_column);

/// Writes with the shortest exact decimal representation.
void WritePredictionsCsv(std::ostream &out, const KeyedValues &predictions);

struct JoinedSeries {
  std::vector<std::string> ids;
  std::vector<double> truths;
  std::vector<double> predictions;
};

/// Inner join in id order; any id present on only one side is an error that
/// lists the unmatched ids.
JoinedSeries JoinOnId(const KeyedValues &truths,
                      const KeyedValues &predictions);

}  // namespace sqalab

#endif  // SQALAB_KEYED_VALUES_H_
