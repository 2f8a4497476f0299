// tests/trainer_test.cc

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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "sqalab/error.h"
#include "sqalab/simulator.h"
#include "sqalab/split.h"
#include "sqalab/trainer.h"

namespace sqalab {
namespace {

struct LinearData {
  FeatureTable features;
  KeyedValues targets;
  DataSplit split;
};

// Feature 0 carries a per-sample level with a little frame jitter; the
// target is the sample mean of feature 0, so w = e0, b = 0 fits it.
LinearData MakeLinearData(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> level(1.0, 5.0);
  std::normal_distribution<double> g(0.0, 1.0);
  LinearData d;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "x" + std::to_string(1000 + i);
    const std::size_t frames = 4 + rng() % 5;
    FeatureMatrix m(frames, 3);
    const double base = level(rng);
    double sum = 0;
    for (std::size_t t = 0; t < frames; ++t) {
      m(t, 0) = base + 0.05 * g(rng);
      m(t, 1) = g(rng);
      m(t, 2) = 0.5 * g(rng);
      sum += m(t, 0);
    }
    d.features[id] = m;
    d.targets[id] = sum / static_cast<double>(frames);
    ids.push_back(id);
  }
  d.split = SplitIds(ids, SplitFractions{0.7, 0.15, 0.15}, seed);
  return d;
}

// Minimum of the mean training objective for a linear frame map. The
// objective is quadratic in theta = [w, b], so the normal equations give it.
double LinearLeastSquaresLoss(const LinearData &d,
                              const std::vector<std::string> &ids,
                              double alpha) {
  const std::size_t dim = FeatureDim(d.features) + 1;
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
  std::vector<double> b(dim, 0.0);
  auto accumulate = [&](const std::vector<double> &row, double y,
                        double weight) {
    for (std::size_t i = 0; i < dim; ++i) {
      b[i] += weight * row[i] * y;
      for (std::size_t j = 0; j < dim; ++j) a[i][j] += weight * row[i] * row[j];
    }
  };
  for (const auto &id : ids) {
    const FeatureMatrix &x = d.features.at(id);
    const double y = d.targets.at(id);
    std::vector<double> mean(dim, 0.0);
    mean.back() = 1.0;
    for (std::size_t t = 0; t < x.rows(); ++t) {
      std::vector<double> row(x.row(t).begin(), x.row(t).end());
      row.push_back(1.0);
      for (std::size_t c = 0; c + 1 < dim; ++c)
        mean[c] += row[c] / static_cast<double>(x.rows());
      accumulate(row, y, alpha / static_cast<double>(x.rows()));
    }
    accumulate(mean, y, 1.0);
  }
  const auto theta = oracle::SolveLinear(a, b);
  ModelParams p = ModelParams::Zeros(dim - 1, 0);
  p.theta = theta;
  double total = 0;
  for (const auto &id : ids) {
    auto fwd = Forward(p, d.features.at(id));
    total += ComputeLoss(fwd.utterance_score, d.targets.at(id),
                         fwd.frame_scores, alpha)
                 .total;
  }
  return total / static_cast<double>(ids.size());
}

TEST_CASE("early stopping follows the patience rule") {
  EarlyStopping stop(5);
  const std::vector<double> losses = {1.0, 0.9, 0.95, 0.96, 0.97, 0.98, 0.99};
  std::size_t stopped_after = 0;
  for (double l : losses) {
    stop.Update(l);
    if (stop.ShouldStop()) {
      stopped_after = stop.epochs_seen();
      break;
    }
  }
  CHECK(stopped_after == 7);
  CHECK(stop.best_epoch() == 2);
  CHECK(stop.best_loss() == 0.9);

  EarlyStopping ties(2);
  ties.Update(1.0);
  ties.Update(1.0);
  CHECK(ties.best_epoch() == 1);
  ties.Update(1.0);
  CHECK(ties.ShouldStop());
}

TEST_CASE("training converges on realizable linear data") {
  LinearData d = MakeLinearData(300, 5);
  TrainConfig cfg;
  cfg.learning_rate = 0.02;
  cfg.max_epochs = 400;
  cfg.patience = 20;
  cfg.init_stddev = 0.1;
  cfg.seed = 3;
  TrainedModel m = Train(d.features, d.targets, d.split, cfg);
  const double trained = m.history[m.best_epoch - 1].train_loss;
  const double optimum = LinearLeastSquaresLoss(d, d.split.train, cfg.alpha);
  MESSAGE("trained " << trained << " optimum " << optimum);
  CHECK(trained <= 0.05);
  CHECK(optimum <= trained + 1e-9);
  CHECK(trained <= optimum + 0.01);
}

TEST_CASE("training returns the best validation epoch") {
  LinearData d = MakeLinearData(120, 9);
  TrainConfig cfg;
  cfg.learning_rate = 0.05;
  cfg.max_epochs = 60;
  cfg.patience = 3;
  cfg.hidden_width = 3;
  cfg.seed = 21;
  TrainedModel m = Train(d.features, d.targets, d.split, cfg);
  REQUIRE(!m.history.empty());
  CHECK(m.stopping_epoch == m.history.size());
  CHECK(m.stopping_epoch <= cfg.max_epochs);
  double best = m.history.front().val_loss;
  std::size_t best_epoch = 1;
  for (const auto &r : m.history) {
    if (r.val_loss < best) {
      best = r.val_loss;
      best_epoch = r.epoch;
    }
  }
  CHECK(m.best_epoch == best_epoch);
  std::vector<Example> val;
  for (const auto &id : d.split.validation)
    val.push_back({d.features.at(id), d.targets.at(id)});
  CHECK(MeanLoss(m.params, val, cfg.alpha) == doctest::Approx(best));
  if (m.stopping_epoch < cfg.max_epochs)
    CHECK(m.stopping_epoch - m.best_epoch == cfg.patience);
}

TEST_CASE("training is deterministic for a fixed seed") {
  LinearData d = MakeLinearData(80, 2);
  TrainConfig cfg;
  cfg.max_epochs = 15;
  cfg.hidden_width = 2;
  cfg.dropout_rate = 0.3;
  cfg.learning_rate = 0.01;
  TrainedModel a = Train(d.features, d.targets, d.split, cfg);
  TrainedModel b = Train(d.features, d.targets, d.split, cfg);
  CHECK(a.params == b.params);
  std::ostringstream ha, hb;
  WriteHistoryTsv(ha, a);
  WriteHistoryTsv(hb, b);
  CHECK(ha.str() == hb.str());
  CHECK(ha.str().rfind("epoch\ttrain_loss\tval_loss\n", 0) == 0);
  cfg.seed = 1;
  CHECK_FALSE(Train(d.features, d.targets, d.split, cfg).params == a.params);
}

TEST_CASE("training reports missing data") {
  LinearData d = MakeLinearData(40, 4);
  const std::string victim = d.split.train.front();
  d.targets.erase(victim);
  try {
    Train(d.features, d.targets, d.split, TrainConfig{});
    FAIL("expected error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find(victim) != std::string::npos);
  }
  TrainConfig bad;
  bad.patience = 0;
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("predict matches forward and survives csv") {
  LinearData d = MakeLinearData(20, 6);
  Rng rng(1);
  ModelParams p = ModelParams::RandomNormal(3, 2, 1.0, rng);
  KeyedValues pred = Predict(p, d.features);
  CHECK(pred.size() == d.features.size());
  for (const auto &[id, v] : pred)
    CHECK(v == Forward(p, d.features.at(id)).utterance_score);
  for (const auto &[id, v] : Predict(ModelParams::Zeros(3, 0), d.features))
    CHECK(v == 0.0);
  std::ostringstream out;
  WritePredictionsCsv(out, pred);
  std::istringstream in(out.str());
  KeyedValues back = ReadKeyedValues(in, "p.csv", "prediction");
  for (const auto &[id, v] : pred) CHECK(std::abs(back.at(id) - v) <= 1e-6);
  CHECK_THROWS_AS(Predict(ModelParams::Zeros(4, 0), d.features), Error);
}

TEST_CASE("split sizes and determinism") {
  std::vector<std::string> ids;
  for (int i = 0; i < 10; ++i) ids.push_back("s" + std::to_string(i));
  DataSplit s = SplitIds(ids, {0.6, 0.2, 0.2}, 1);
  CHECK(s.train.size() == 6);
  CHECK(s.validation.size() == 2);
  CHECK(s.test.size() == 2);
  CHECK_NOTHROW(s.CheckDisjoint());
  DataSplit again = SplitIds(ids, {0.6, 0.2, 0.2}, 1);
  CHECK(again.train == s.train);
  CHECK(again.test == s.test);

  std::vector<std::string> many;
  for (int i = 0; i < 20580; ++i) many.push_back("v" + std::to_string(i));
  DataSplit big = SplitIds(
      many, {13580.0 / 20580, 3000.0 / 20580, 4000.0 / 20580}, 9);
  CHECK(big.train.size() == 13580);
  CHECK(big.validation.size() == 3000);
  CHECK(big.test.size() == 4000);

  CHECK_THROWS_AS(SplitIds({"a", "b"}, {0.6, 0.2, 0.2}, 1), Error);
  CHECK_THROWS_AS(SplitIds(ids, {0.6, 0.3, 0.3}, 1), Error);

  std::ostringstream out;
  WriteSplit(out, s);
  std::istringstream in(out.str());
  DataSplit read = ReadSplit(in, "split.csv");
  CHECK(read.train == s.train);
  CHECK(read.validation == s.validation);
  CHECK(read.test == s.test);
}

TEST_CASE("trials with a forced shared seed have zero spread") {
  SimConfig sim_cfg;
  sim_cfg.n_samples = 120;
  sim_cfg.seed = 4;
  Simulation sim = Simulate(sim_cfg);
  TrainConfig cfg;
  cfg.trials = 2;
  cfg.max_epochs = 5;
  cfg.learning_rate = 0.01;
  TrialOptions opt;
  opt.reuse_master_seed = true;
  TrialReport r = RunTrials(sim.features, sim.ratings, cfg, opt);
  REQUIRE(r.lcc.has_value());
  CHECK(r.mse->sample_std == 0.0);
  CHECK(r.lcc->sample_std == 0.0);
  CHECK(r.srcc->sample_std == 0.0);
}

TEST_CASE("trial report is independent of thread count") {
  SimConfig sim_cfg;
  sim_cfg.n_samples = 150;
  Simulation sim = Simulate(sim_cfg);
  TrainConfig cfg;
  cfg.trials = 4;
  cfg.max_epochs = 8;
  cfg.learning_rate = 0.01;
  cfg.target_spec = RepValSpec::NLow(3);
  TrialOptions one, many;
  many.threads = 3;
  std::ostringstream a, b;
  WriteTrialReportTsv(a, RunTrials(sim.features, sim.ratings, cfg, one));
  WriteTrialReportTsv(b, RunTrials(sim.features, sim.ratings, cfg, many));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("metric\tmean\tstd\n", 0) == 0);
  CHECK(TrialSeed(0, 0) != TrialSeed(0, 1));

  cfg.trials = 1;
  std::ostringstream single;
  WriteTrialReportTsv(single, RunTrials(sim.features, sim.ratings, cfg, one));
  CHECK(single.str().rfind("metric\tvalue\n", 0) == 0);
}

}  // namespace
}  // namespace sqalab
