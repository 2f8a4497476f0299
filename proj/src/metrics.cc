// src/metrics.cc

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

#include "sqalab/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

namespace {

void CheckPaired(std::span<const double> a, std::span<const double> b,
                 std::size_t min_length) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kPrecondition,
                "length mismatch: " + std::to_string(a.size()) + " truths vs " +
                    std::to_string(b.size()) + " predictions");
  }
  if (a.size() < min_length) {
    throw Error(ErrorCode::kPrecondition,
                "need at least " + std::to_string(min_length) +
                    " pairs, got " + std::to_string(a.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw Error(ErrorCode::kRange,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kPrecondition, "zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

double MeanSquaredError(std::span<const double> truths,
                        std::span<const double> predictions) {
  CheckPaired(truths, predictions, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const double d = predictions[i] - truths[i];
    sum += d * d;
  }
  return sum / static_cast<double>(truths.size());
}

double LinearCorrelation(std::span<const double> truths,
                         std::span<const double> predictions) {
  CheckPaired(truths, predictions, 2);
  return Pearson(truths, predictions);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j; their mean is (i + j + 1) / 2.
    const double rank = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double RankCorrelation(std::span<const double> truths,
                       std::span<const double> predictions) {
  CheckPaired(truths, predictions, 2);
  const auto rt = AverageRanks(truths);
  const auto rp = AverageRanks(predictions);
  return Pearson(rt, rp);
}

Evaluation Evaluate(std::span<const double> truths,
                    std::span<const double> predictions) {
  return Evaluation{MeanSquaredError(truths, predictions),
                    LinearCorrelation(truths, predictions),
                    RankCorrelation(truths, predictions)};
}

MetricSummary AggregateTrials(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kPrecondition,
                "trial aggregation needs at least 2 values, got " +
                    std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  MetricSummary s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sample_std = std::sqrt(ss / (n - 1.0));
  return s;
}

std::string FormatSummary(const MetricSummary &summary, int decimals) {
  return FormatFixed(summary.mean, decimals) + "±" +
         FormatFixed(summary.sample_std, decimals);
}

}  // namespace sqalab
