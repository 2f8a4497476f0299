// src/histogram.cc

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

#include "sqalab/histogram.h"

#include <cmath>
#include <numeric>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0}) +
         underflow + overflow;
}

Histogram ComputeHistogram(std::span<const double> values, double bin_width,
                           double range_min, double range_max) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw Error(ErrorCode::kPrecondition, "histogram bin width must be > 0");
  }
  if (!(range_min < range_max) || !std::isfinite(range_min) ||
      !std::isfinite(range_max)) {
    throw Error(ErrorCode::kPrecondition,
                "histogram range_min must be < range_max");
  }
  Histogram h;
  h.range_min = range_min;
  h.range_max = range_max;
  h.bin_width = bin_width;
  std::size_t bins = static_cast<std::size_t>(
      std::ceil((range_max - range_min) / bin_width));
  // Drop a trailing bin that would start at or beyond range_max because of
  // rounding in the division above.
  while (bins > 1 && h.bin_start(bins - 1) >= range_max) --bins;
  h.counts.assign(std::max<std::size_t>(bins, 1), 0);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kRange, "histogram value #" + std::to_string(i) +
                                         " is not finite");
    }
    if (v < range_min) {
      ++h.underflow;
      continue;
    }
    if (v >= range_max) {
      ++h.overflow;
      continue;
    }
    // Bin index consistent with the reported bin starts, even when
    // (v - min) / width rounds across an edge.
    auto bin = static_cast<std::size_t>(std::floor((v - range_min) / bin_width));
    if (bin >= h.counts.size()) bin = h.counts.size() - 1;
    while (bin > 0 && v < h.bin_start(bin)) --bin;
    while (bin + 1 < h.counts.size() && v >= h.bin_start(bin + 1)) ++bin;
    ++h.counts[bin];
  }
  return h;
}

void WriteHistogramTsv(std::ostream &out, const Histogram &histogram) {
  out << "bin_start\tcount\n";
  out << "-inf\t" << histogram.underflow << '\n';
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    out << FormatSignificant(histogram.bin_start(i), 10) << '\t'
        << histogram.counts[i] << '\n';
  }
  out << FormatSignificant(histogram.range_max, 10) << '\t' << histogram.overflow
      << '\n';
}

}  // namespace sqalab
