// include/sqalab/simulator.h

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

#ifndef SQALAB_SIMULATOR_H_
#define SQALAB_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sqalab/features.h"
#include "sqalab/random.h"
#include "sqalab/ratings.h"

namespace sqalab {

/// Synthetic listening test in which each listener scores a sample by its
/// worst segment, except that every segment may be overlooked with
/// probability overlook_prob. Illustrative only; not a model of real raters.
struct SimConfig {
  std::size_t n_samples = 2000;
  std::size_t listeners_per_sample = 8;
  /// Distinct listener ids to draw raters from; 0 means one fixed panel of
  /// listeners_per_sample listeners rates every sample.
  std::size_t listener_pool = 0;
  std::size_t segments_min = 3;
  std::size_t segments_max = 10;
  double overlook_prob = 0.3;
  double score_noise_sigma = 0.5;
  std::size_t frames_per_segment = 8;
  std::size_t feature_dim = 8;
  double feature_noise_sigma = 0.25;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SampleTruth {
  std::string sample_id;
  /// Segment qualities in [1, 5], in time order.
  std::vector<double> segment_qualities;

  double min_quality() const;
  double mean_quality() const;
};

struct Simulation {
  Dataset ratings;
  std::vector<SampleTruth> truth;
  FeatureTable features;
};

/// One listener's ACR score for a sample with the given segment qualities.
/// Draws one uniform per segment (overlook test) and then one standard
/// normal, regardless of p and sigma, so runs that differ only in p or sigma
/// consume the generator identically.
int ListenerScore(std::span<const double> segment_qualities,
                  double overlook_prob, double noise_sigma, Rng &rng);

/// Deterministic in config.seed. Each sample draws from its own sub-seeded
/// streams, so the result does not depend on generation order.
Simulation Simulate(const SimConfig &config);

/// Ratings only (skips feature generation); identical to Simulate().ratings.
Dataset SimulateRatings(const SimConfig &config);

/// `sample_id\tK\tmin_quality\tmean_quality`
void WriteTruthTsv(std::ostream &out, std::span<const SampleTruth> truth);

}  // namespace sqalab

#endif  // SQALAB_SIMULATOR_H_
