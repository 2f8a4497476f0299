// include/sqalab/trainer.h

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

#ifndef SQALAB_TRAINER_H_
#define SQALAB_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sqalab/features.h"
#include "sqalab/keyed_values.h"
#include "sqalab/metrics.h"
#include "sqalab/model.h"
#include "sqalab/ratings.h"
#include "sqalab/split.h"

namespace sqalab {

struct TrainConfig {
  double alpha = 1.0;
  double learning_rate = 1e-4;
  std::size_t batch_size = 32;
  std::size_t patience = 5;
  std::size_t max_epochs = 200;
  std::size_t hidden_width = 0;  // 0 = linear frame regressor
  std::size_t trials = 8;
  std::uint64_t seed = 0;
  double dropout_rate = 0.0;  // hidden activations only; off at evaluation
  double init_stddev = 1.0;   // initial weights ~ N(0, init_stddev^2)
  RepValSpec target_spec = RepValSpec::MeanOpinion();

  void Validate() const;
};

/// Patience-based stopping on a loss that should decrease. A loss equal to
/// the best so far does not count as an improvement, so ties keep the
/// earlier epoch.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  /// Records the next epoch's loss; returns true when it is a new best.
  bool Update(double loss);
  bool ShouldStop() const { return epochs_without_improvement_ >= patience_; }
  /// 1-based epoch of the best loss; 0 before the first update.
  std::size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }
  std::size_t epochs_seen() const { return epochs_seen_; }

 private:
  std::size_t patience_;
  std::size_t epochs_seen_ = 0;
  std::size_t best_epoch_ = 0;
  double best_loss_ = 0.0;
  std::size_t epochs_without_improvement_ = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;     // 1-based
  double train_loss = 0.0;   // mean loss over the training set after the epoch
  double val_loss = 0.0;
};

struct TrainedModel {
  ModelParams params;  // from best_epoch
  std::vector<EpochRecord> history;
  std::size_t stopping_epoch = 0;
  std::size_t best_epoch = 0;
};

/// Mini-batch Adam on the pooled frame-score loss with early stopping on
/// the validation loss. Every id in split.train and split.validation must
/// have features and a target.
TrainedModel Train(const FeatureTable &features, const KeyedValues &targets,
                   const DataSplit &split, const TrainConfig &config);

KeyedValues Predict(const ModelParams &params, const FeatureTable &features);

/// `epoch\ttrain_loss\tval_loss`
void WriteHistoryTsv(std::ostream &out, const TrainedModel &model);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Evaluation test;
  std::size_t stopping_epoch = 0;
  std::size_t best_epoch = 0;
  double first_train_loss = 0.0;  // after epoch 1
  double best_train_loss = 0.0;   // at best_epoch
  double train_mean_prediction = 0.0;
};

struct TrialReport {
  RepValSpec target_spec = RepValSpec::MeanOpinion();
  /// Row label; defaults to target_spec.ToString().
  std::string label;
  std::vector<TrialResult> trials;
  /// Present when there are at least two trials.
  std::optional<MetricSummary> mse;
  std::optional<MetricSummary> lcc;
  std::optional<MetricSummary> srcc;
};

struct TrialOptions {
  SplitFractions fractions;
  /// Used for every trial when set; otherwise each trial draws its own
  /// random split. An empty test partition falls back to validation.
  std::optional<DataSplit> fixed_split;
  std::size_t threads = 1;
  /// Every trial uses config.seed itself instead of a derived sub-seed.
  bool reuse_master_seed = false;
};

/// Sub-seed of trial t under a master seed.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::size_t trial);

/// Trains config.trials models and evaluates each on its held-out set.
/// Trials may run concurrently; the report does not depend on the thread
/// count.
TrialReport RunTrials(const FeatureTable &features, const KeyedValues &targets,
                      const TrainConfig &config, const TrialOptions &options);

/// Targets are computed from the ratings with config.target_spec.
TrialReport RunTrials(const FeatureTable &features, const Dataset &ratings,
                      const TrainConfig &config, const TrialOptions &options);

/// `metric\tmean\tstd` (or `metric\tvalue` for a single trial).
void WriteTrialReportTsv(std::ostream &out, const TrialReport &report);
/// One row per trial with its seed, stopping epoch and test metrics.
void WriteTrialDetailsTsv(std::ostream &out, const TrialReport &report);
/// Table row, e.g. "n_low(n=3)  MSE 0.549±0.014  LCC 0.622±0.014  ...".
std::string FormatReportRow(const TrialReport &report);

}  // namespace sqalab

#endif  // SQALAB_TRAINER_H_
