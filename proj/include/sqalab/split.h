// include/sqalab/split.h

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

#ifndef SQALAB_SPLIT_H_
#define SQALAB_SPLIT_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sqalab {

struct SplitFractions {
  double train = 0.7;
  double validation = 0.15;
  double test = 0.15;

  /// All positive and summing to 1 (within 1e-9).
  void Validate() const;
};

struct DataSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;  // may be empty for a fixed split

  /// Throws when an id appears in more than one partition.
  void CheckDisjoint() const;
};

/// Seeded shuffle of the sorted ids, then contiguous partitions. The train
/// and validation sizes are floor(n * fraction) and the test set takes the
/// remainder. Each partition is returned sorted. Any empty partition is an
/// error.
DataSplit SplitIds(std::vector<std::string> ids,
                   const SplitFractions &fractions, std::uint64_t seed);

/// CSV `sample_id,partition` with partition in {train, validation, test}.
DataSplit ReadSplit(std::istream &in, std::string_view source_name);
void WriteSplit(std::ostream &out, const DataSplit &split);

}  // namespace sqalab

#endif  // SQALAB_SPLIT_H_
