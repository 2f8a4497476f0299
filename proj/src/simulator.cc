// src/simulator.cc

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

#include "sqalab/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

namespace {

enum Stream : std::uint64_t {
  kTruthStream = 0,
  kRatingStream = 1,
  kPanelStream = 2,
  kFeatureStream = 3,
};

std::string PaddedId(const std::string &prefix, std::size_t index,
                     std::size_t count) {
  std::size_t width = 1;
  for (std::size_t c = count > 0 ? count - 1 : 0; c >= 10; c /= 10) ++width;
  std::string digits = std::to_string(index);
  return prefix + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

SampleTruth DrawTruth(const SimConfig &config, std::size_t index) {
  Rng rng(DeriveSeed(config.seed, {index, kTruthStream}));
  std::uniform_int_distribution<std::size_t> segments(config.segments_min,
                                                      config.segments_max);
  std::uniform_real_distribution<double> quality(1.0, 5.0);
  SampleTruth truth;
  truth.sample_id = PaddedId("sim", index, config.n_samples);
  truth.segment_qualities.resize(segments(rng));
  for (double &z : truth.segment_qualities) z = quality(rng);
  return truth;
}

void AppendRatings(const SimConfig &config, std::size_t index,
                   const SampleTruth &truth, std::vector<Rating> *ratings) {
  const std::size_t pool = config.listener_pool == 0
                               ? config.listeners_per_sample
                               : config.listener_pool;
  std::vector<std::size_t> panel(config.listeners_per_sample);
  std::iota(panel.begin(), panel.end(), 0);
  if (pool > config.listeners_per_sample) {
    Rng panel_rng(DeriveSeed(config.seed, {index, kPanelStream}));
    std::vector<std::size_t> everyone(pool);
    std::iota(everyone.begin(), everyone.end(), 0);
    std::shuffle(everyone.begin(), everyone.end(), panel_rng);
    std::copy_n(everyone.begin(), panel.size(), panel.begin());
    std::sort(panel.begin(), panel.end());
  }
  Rng rng(DeriveSeed(config.seed, {index, kRatingStream}));
  for (std::size_t listener : panel) {
    const int score =
        ListenerScore(truth.segment_qualities, config.overlook_prob,
                      config.score_noise_sigma, rng);
    ratings->push_back(
        Rating{truth.sample_id, PaddedId("L", listener, pool), score});
  }
}

FeatureMatrix DrawFeatures(const SimConfig &config, std::size_t index,
                           const SampleTruth &truth) {
  Rng rng(DeriveSeed(config.seed, {index, kFeatureStream}));
  std::normal_distribution<double> noise(0.0, 1.0);
  const double sigma = config.feature_noise_sigma;
  FeatureMatrix m(truth.segment_qualities.size() * config.frames_per_segment,
                  config.feature_dim);
  std::size_t t = 0;
  for (double z : truth.segment_qualities) {
    for (std::size_t f = 0; f < config.frames_per_segment; ++f, ++t) {
      auto row = m.row(t);
      row[0] = z + sigma * noise(rng);
      for (std::size_t d = 1; d < row.size(); ++d) row[d] = sigma * noise(rng);
    }
  }
  return m;
}

}  // namespace

void SimConfig::Validate() const {
  auto fail = [](const std::string &msg) {
    throw Error(ErrorCode::kPrecondition, "simulate: " + msg);
  };
  if (n_samples == 0) fail("n_samples must be >= 1");
  if (listeners_per_sample == 0) fail("listeners_per_sample must be >= 1");
  if (listener_pool != 0 && listener_pool < listeners_per_sample) {
    fail("listener_pool must be 0 or >= listeners_per_sample");
  }
  if (segments_min == 0 || segments_min > segments_max) {
    fail("need 1 <= segments_min <= segments_max");
  }
  if (!(overlook_prob >= 0.0 && overlook_prob < 1.0)) {
    fail("overlook_prob must lie in [0, 1)");
  }
  if (!(score_noise_sigma >= 0.0) || !std::isfinite(score_noise_sigma)) {
    fail("score_noise_sigma must be >= 0");
  }
  if (frames_per_segment == 0) fail("frames_per_segment must be >= 1");
  if (feature_dim == 0) fail("feature_dim must be >= 1");
  if (!(feature_noise_sigma >= 0.0) || !std::isfinite(feature_noise_sigma)) {
    fail("feature_noise_sigma must be >= 0");
  }
}

double SampleTruth::min_quality() const {
  return *std::min_element(segment_qualities.begin(), segment_qualities.end());
}

double SampleTruth::mean_quality() const {
  return std::accumulate(segment_qualities.begin(), segment_qualities.end(),
                         0.0) /
         static_cast<double>(segment_qualities.size());
}

int ListenerScore(std::span<const double> segment_qualities,
                  double overlook_prob, double noise_sigma, Rng &rng) {
  if (segment_qualities.empty()) {
    throw Error(ErrorCode::kPrecondition, "listener score needs >= 1 segment");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_seen = std::numeric_limits<double>::infinity();
  bool saw_any = false;
  for (double z : segment_qualities) {
    if (unit(rng) >= overlook_prob) {
      worst_seen = std::min(worst_seen, z);
      saw_any = true;
    }
  }
  const double noise = normal(rng);
  double base = worst_seen;
  if (!saw_any) {
    base = std::accumulate(segment_qualities.begin(), segment_qualities.end(),
                           0.0) /
           static_cast<double>(segment_qualities.size());
  }
  const long rounded = std::lround(base + noise_sigma * noise);
  return static_cast<int>(std::clamp<long>(rounded, kMinScore, kMaxScore));
}

Simulation Simulate(const SimConfig &config) {
  config.Validate();
  Simulation sim;
  std::vector<Rating> ratings;
  ratings.reserve(config.n_samples * config.listeners_per_sample);
  sim.truth.reserve(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    SampleTruth truth = DrawTruth(config, i);
    AppendRatings(config, i, truth, &ratings);
    sim.features.emplace(truth.sample_id, DrawFeatures(config, i, truth));
    sim.truth.push_back(std::move(truth));
  }
  sim.ratings = Dataset::FromRatings(ratings);
  return sim;
}

Dataset SimulateRatings(const SimConfig &config) {
  config.Validate();
  std::vector<Rating> ratings;
  ratings.reserve(config.n_samples * config.listeners_per_sample);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    AppendRatings(config, i, DrawTruth(config, i), &ratings);
  }
  return Dataset::FromRatings(ratings);
}

void WriteTruthTsv(std::ostream &out, std::span<const SampleTruth> truth) {
  out << "sample_id\tK\tmin_quality\tmean_quality\n";
  for (const SampleTruth &t : truth) {
    out << t.sample_id << '\t' << t.segment_qualities.size() << '\t'
        << FormatFixed(t.min_quality(), 6) << '\t'
        << FormatFixed(t.mean_quality(), 6) << '\n';
  }
}

}  // namespace sqalab
