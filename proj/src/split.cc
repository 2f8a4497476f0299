// src/split.cc

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

#include "sqalab/split.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "sqalab/error.h"
#include "sqalab/random.h"
#include "text_util.h"

namespace sqalab {

namespace {

constexpr std::uint64_t kSplitStream = 0x5350;

// floor(n * f), tolerant of fractions such as 13580/20580 whose product
// with n lands a few ulps below the intended integer.
std::size_t PartitionSize(std::size_t n, double fraction) {
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * fraction + 1e-9));
}

}  // namespace

void SplitFractions::Validate() const {
  if (!(train > 0.0) || !(validation > 0.0) || !(test > 0.0)) {
    throw Error(ErrorCode::kRange, "split fractions must all be positive");
  }
  if (std::abs(train + validation + test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kRange, "split fractions must sum to 1");
  }
}

void DataSplit::CheckDisjoint() const {
  std::set<std::string> seen;
  for (const auto *part : {&train, &validation, &test}) {
    for (const auto &id : *part) {
      if (!seen.insert(id).second) {
        throw Error(ErrorCode::kPrecondition,
                    "sample " + id + " appears in more than one partition");
      }
    }
  }
}

DataSplit SplitIds(std::vector<std::string> ids,
                   const SplitFractions &fractions, std::uint64_t seed) {
  fractions.Validate();
  if (ids.empty()) {
    throw Error(ErrorCode::kPrecondition, "cannot split an empty dataset");
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::kPrecondition, "duplicate ids in split input");
  }
  Rng rng(DeriveSeed(seed, {kSplitStream}));
  std::shuffle(ids.begin(), ids.end(), rng);

  const std::size_t n = ids.size();
  const std::size_t n_train = PartitionSize(n, fractions.train);
  const std::size_t n_val =
      std::min(PartitionSize(n, fractions.validation), n - n_train);
  if (n_train == 0 || n_val == 0 || n_train + n_val == n) {
    throw Error(ErrorCode::kPrecondition,
                "split of " + std::to_string(n) +
                    " samples leaves an empty partition");
  }
  DataSplit split;
  split.train.assign(ids.begin(), ids.begin() + n_train);
  split.validation.assign(ids.begin() + n_train,
                          ids.begin() + n_train + n_val);
  split.test.assign(ids.begin() + n_train + n_val, ids.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

DataSplit ReadSplit(std::istream &in, std::string_view source_name) {
  const std::string source(source_name);
  LineReader reader(in);
  std::string line;
  if (!reader.Next(&line) || line != "sample_id,partition") {
    throw Error(ErrorCode::kParse,
                source + " row 1: expected header 'sample_id,partition'");
  }
  DataSplit split;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    const std::string where =
        source + " row " + std::to_string(reader.line_number());
    auto fields = SplitFields(line, ',');
    if (fields.size() != 2 || fields[0].empty()) {
      throw Error(ErrorCode::kParse, where + ": expected 'sample_id,partition'");
    }
    std::string id(fields[0]);
    if (fields[1] == "train") {
      split.train.push_back(std::move(id));
    } else if (fields[1] == "validation") {
      split.validation.push_back(std::move(id));
    } else if (fields[1] == "test") {
      split.test.push_back(std::move(id));
    } else {
      throw Error(ErrorCode::kParse, where + ": unknown partition '" +
                                         std::string(fields[1]) + "'");
    }
  }
  split.CheckDisjoint();
  if (split.train.empty() || split.validation.empty()) {
    throw Error(ErrorCode::kPrecondition,
                source + ": train and validation partitions must be non-empty");
  }
  for (auto *part : {&split.train, &split.validation, &split.test}) {
    std::sort(part->begin(), part->end());
  }
  return split;
}

void WriteSplit(std::ostream &out, const DataSplit &split) {
  out << "sample_id,partition\n";
  for (const auto &id : split.train) out << id << ",train\n";
  for (const auto &id : split.validation) out << id << ",validation\n";
  for (const auto &id : split.test) out << id << ",test\n";
}

}  // namespace sqalab
