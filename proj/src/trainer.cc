// src/trainer.cc

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

#include "sqalab/trainer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "sqalab/error.h"
#include "sqalab/random.h"
#include "text_util.h"

namespace sqalab {

namespace {

enum Stream : std::uint64_t {
  kInitStream = 1,
  kShuffleStream = 2,
  kDropoutStream = 3,
  kTrialStream = 4,
};

std::vector<Example> Gather(const std::vector<std::string> &ids,
                            const FeatureTable &features,
                            const KeyedValues &targets,
                            std::vector<std::string> *missing) {
  std::vector<Example> examples;
  examples.reserve(ids.size());
  for (const auto &id : ids) {
    auto f = features.find(id);
    auto y = targets.find(id);
    if (f == features.end() || y == targets.end()) {
      missing->push_back(id + (f == features.end() ? " (features)" : "") +
                         (y == targets.end() ? " (target)" : ""));
      continue;
    }
    examples.push_back(Example{std::cref(f->second), y->second});
  }
  return examples;
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string &msg) {
    throw Error(ErrorCode::kRange, "train config: " + msg);
  };
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    fail("learning_rate must be > 0");
  }
  if (batch_size == 0) fail("batch_size must be >= 1");
  if (patience == 0) fail("patience must be >= 1");
  if (max_epochs == 0) fail("max_epochs must be >= 1");
  if (trials == 0) fail("trials must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    fail("dropout_rate must lie in [0, 1)");
  }
  if (!(init_stddev >= 0.0) || !std::isfinite(init_stddev)) {
    fail("init_stddev must be >= 0");
  }
}

bool EarlyStopping::Update(double loss) {
  ++epochs_seen_;
  if (best_epoch_ == 0 ? std::isfinite(loss) : loss < best_loss_) {
    best_loss_ = loss;
    best_epoch_ = epochs_seen_;
    epochs_without_improvement_ = 0;
    return true;
  }
  ++epochs_without_improvement_;
  return false;
}

TrainedModel Train(const FeatureTable &features, const KeyedValues &targets,
                   const DataSplit &split, const TrainConfig &config) {
  config.Validate();
  split.CheckDisjoint();
  if (split.train.empty() || split.validation.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "training needs non-empty train and validation sets");
  }
  std::vector<std::string> missing;
  const std::vector<Example> train_set =
      Gather(split.train, features, targets, &missing);
  const std::vector<Example> val_set =
      Gather(split.validation, features, targets, &missing);
  if (!missing.empty()) {
    std::string msg = "missing data for " + std::to_string(missing.size()) +
                      " sample(s):";
    for (const auto &m : missing) msg += " " + m;
    throw Error(ErrorCode::kPrecondition, msg);
  }
  const std::size_t dim = train_set.front().features.get().cols();

  Rng init_rng(DeriveSeed(config.seed, {kInitStream}));
  Rng shuffle_rng(DeriveSeed(config.seed, {kShuffleStream}));
  Rng dropout_rng(DeriveSeed(config.seed, {kDropoutStream}));

  TrainedModel result;
  ModelParams params = ModelParams::RandomNormal(
      dim, config.hidden_width, config.init_stddev, init_rng);
  AdamState adam = AdamState::ZerosLike(params);
  const AdamConfig adam_config{config.learning_rate};
  result.params = params;

  EarlyStopping stopper(config.patience);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Example> batch;
  batch.reserve(config.batch_size);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(train_set[order[i]]);
      }
      const std::vector<double> grad = GradientWithDropout(
          params, batch, config.alpha, config.dropout_rate, dropout_rng);
      AdamStep(params, adam, grad, adam_config);
    }
    EpochRecord record{epoch, MeanLoss(params, train_set, config.alpha),
                       MeanLoss(params, val_set, config.alpha)};
    result.history.push_back(record);
    if (stopper.Update(record.val_loss)) {
      result.params = params;
      result.best_epoch = epoch;
    }
    result.stopping_epoch = epoch;
    if (stopper.ShouldStop()) break;
  }
  return result;
}

KeyedValues Predict(const ModelParams &params, const FeatureTable &features) {
  KeyedValues out;
  for (const auto &[id, x] : features) {
    try {
      out.emplace_hint(out.end(), id, Forward(params, x).utterance_score);
    } catch (const Error &e) {
      throw Error(e.code(), "sample " + id + ": " + e.what());
    }
  }
  return out;
}

void WriteHistoryTsv(std::ostream &out, const TrainedModel &model) {
  out << "epoch\ttrain_loss\tval_loss\n";
  for (const EpochRecord &r : model.history) {
    out << r.epoch << '\t' << FormatSignificant(r.train_loss, 9) << '\t'
        << FormatSignificant(r.val_loss, 9) << '\n';
  }
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::size_t trial) {
  return DeriveSeed(master_seed, {kTrialStream, trial});
}

TrialReport RunTrials(const FeatureTable &features, const KeyedValues &targets,
                      const TrainConfig &config, const TrialOptions &options) {
  config.Validate();
  if (!options.fixed_split) options.fractions.Validate();
  std::vector<std::string> ids;
  ids.reserve(targets.size());
  for (const auto &[id, v] : targets) ids.push_back(id);

  TrialReport report;
  report.target_spec = config.target_spec;
  report.label = config.target_spec.ToString();
  report.trials.resize(config.trials);
  std::vector<std::exception_ptr> errors(config.trials);

  auto run_one = [&](std::size_t t) {
    TrialResult &r = report.trials[t];
    r.trial = t;
    r.seed = options.reuse_master_seed ? config.seed
                                       : TrialSeed(config.seed, t);
    const DataSplit split = options.fixed_split
                                ? *options.fixed_split
                                : SplitIds(ids, options.fractions, r.seed);
    TrainConfig trial_config = config;
    trial_config.seed = r.seed;
    const TrainedModel model = Train(features, targets, split, trial_config);
    r.stopping_epoch = model.stopping_epoch;
    r.best_epoch = model.best_epoch;
    r.first_train_loss = model.history.front().train_loss;
    r.best_train_loss = model.history[model.best_epoch - 1].train_loss;

    double train_sum = 0.0;
    for (const auto &id : split.train) {
      train_sum += Forward(model.params, features.at(id)).utterance_score;
    }
    r.train_mean_prediction =
        train_sum / static_cast<double>(split.train.size());

    const auto &held_out = split.test.empty() ? split.validation : split.test;
    std::vector<double> truths, predictions;
    for (const auto &id : held_out) {
      truths.push_back(targets.at(id));
      predictions.push_back(
          Forward(model.params, features.at(id)).utterance_score);
    }
    r.test = Evaluate(truths, predictions);
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.threads, config.trials));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      try {
        run_one(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (config.trials >= 2) {
    std::vector<double> mse, lcc, srcc;
    for (const auto &r : report.trials) {
      mse.push_back(r.test.mse);
      lcc.push_back(r.test.lcc);
      srcc.push_back(r.test.srcc);
    }
    report.mse = AggregateTrials(mse);
    report.lcc = AggregateTrials(lcc);
    report.srcc = AggregateTrials(srcc);
  }
  return report;
}

TrialReport RunTrials(const FeatureTable &features, const Dataset &ratings,
                      const TrainConfig &config, const TrialOptions &options) {
  return RunTrials(features, RepValBatch(ratings, config.target_spec), config,
                   options);
}

void WriteTrialReportTsv(std::ostream &out, const TrialReport &report) {
  if (report.mse) {
    out << "metric\tmean\tstd\n";
    const std::pair<const char *, const MetricSummary *> rows[] = {
        {"MSE", &*report.mse}, {"LCC", &*report.lcc}, {"SRCC", &*report.srcc}};
    for (const auto &[name, s] : rows) {
      out << name << '\t' << FormatFixed(s->mean, 6) << '\t'
          << FormatFixed(s->sample_std, 6) << '\n';
    }
    return;
  }
  const Evaluation &e = report.trials.front().test;
  out << "metric\tvalue\n"
      << "MSE\t" << FormatFixed(e.mse, 6) << '\n'
      << "LCC\t" << FormatFixed(e.lcc, 6) << '\n'
      << "SRCC\t" << FormatFixed(e.srcc, 6) << '\n';
}

void WriteTrialDetailsTsv(std::ostream &out, const TrialReport &report) {
  out << "trial\tseed\tstopping_epoch\tbest_epoch\tfirst_train_loss\t"
         "best_train_loss\ttrain_mean_prediction\tMSE\tLCC\tSRCC\n";
  for (const TrialResult &r : report.trials) {
    out << r.trial << '\t' << r.seed << '\t' << r.stopping_epoch << '\t'
        << r.best_epoch << '\t' << FormatSignificant(r.first_train_loss, 9)
        << '\t' << FormatSignificant(r.best_train_loss, 9) << '\t'
        << FormatSignificant(r.train_mean_prediction, 9) << '\t'
        << FormatFixed(r.test.mse, 6) << '\t' << FormatFixed(r.test.lcc, 6)
        << '\t' << FormatFixed(r.test.srcc, 6) << '\n';
  }
}

std::string FormatReportRow(const TrialReport &report) {
  std::string row = report.label;
  if (report.mse) {
    row += "\tMSE " + FormatSummary(*report.mse) + "\tLCC " +
           FormatSummary(*report.lcc) + "\tSRCC " +
           FormatSummary(*report.srcc);
  } else {
    const Evaluation &e = report.trials.front().test;
    row += "\tMSE " + FormatFixed(e.mse, 3) + "\tLCC " +
           FormatFixed(e.lcc, 3) + "\tSRCC " + FormatFixed(e.srcc, 3);
  }
  return row;
}

}  // namespace sqalab
