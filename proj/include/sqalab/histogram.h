// include/sqalab/histogram.h

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

#ifndef SQALAB_HISTOGRAM_H_
#define SQALAB_HISTOGRAM_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

namespace sqalab {

/// Fixed-width histogram with half-open bins [start, start + width) over
/// [range_min, range_max), plus explicit underflow (< range_min) and
/// overflow (>= range_max) counts. The last bin is truncated at range_max
/// when the width does not divide the range.
struct Histogram {
  double range_min = 0.0;
  double range_max = 0.0;
  double bin_width = 0.0;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  double bin_start(std::size_t bin) const {
    return range_min + static_cast<double>(bin) * bin_width;
  }
  std::size_t total() const;
};

/// Throws kPrecondition for a non-positive width or empty range, and kRange
/// for a non-finite value.
Histogram ComputeHistogram(std::span<const double> values, double bin_width,
                           double range_min, double range_max);

/// `bin_start\tcount`; the underflow row is labelled -inf and the overflow
/// row starts at range_max.
void WriteHistogramTsv(std::ostream &out, const Histogram &histogram);

}  // namespace sqalab

#endif  // SQALAB_HISTOGRAM_H_
