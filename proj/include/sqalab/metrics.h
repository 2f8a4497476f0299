// include/sqalab/metrics.h

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

#ifndef SQALAB_METRICS_H_
#define SQALAB_METRICS_H_

#include <span>
#include <string>
#include <vector>

namespace sqalab {

// Utterance-level agreement between target values and predictions. All
// functions require equal-length, finite series and throw sqalab::Error
// otherwise.

double MeanSquaredError(std::span<const double> truths,
                        std::span<const double> predictions);

/// Pearson correlation. Needs >= 2 points; a constant series is an error
/// ("zero variance"), not NaN.
double LinearCorrelation(std::span<const double> truths,
                         std::span<const double> predictions);

/// Spearman correlation: Pearson correlation of average (fractional) ranks.
double RankCorrelation(std::span<const double> truths,
                       std::span<const double> predictions);

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

struct Evaluation {
  double mse = 0.0;
  double lcc = 0.0;
  double srcc = 0.0;
};

Evaluation Evaluate(std::span<const double> truths,
                    std::span<const double> predictions);

struct MetricSummary {
  double mean = 0.0;
  double sample_std = 0.0;  // n-1 denominator
};

/// Needs at least two values.
MetricSummary AggregateTrials(std::span<const double> values);

/// "0.614±0.019"
std::string FormatSummary(const MetricSummary &summary, int decimals = 3);

}  // namespace sqalab

#endif  // SQALAB_METRICS_H_
