// src/cli/commands.cc

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

#include "commands.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "output_stager.h"
#include "sqalab/audio.h"
#include "sqalab/error.h"
#include "sqalab/features.h"
#include "sqalab/histogram.h"
#include "sqalab/keyed_values.h"
#include "sqalab/metrics.h"
#include "sqalab/model.h"
#include "sqalab/ratings.h"
#include "sqalab/simulator.h"
#include "sqalab/split.h"
#include "sqalab/trainer.h"
#include "text_util.h"

namespace sqalab {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "tsv";
};

// Where training targets come from: a targets CSV, or ratings plus a
// representative-value kind.
struct TargetOptions {
  std::string targets_path;
  std::string ratings_path;
  std::string kind = "mos";
  int n = 0;
  int n_low_trim = 0;
  int n_high_trim = 0;
  CLI::Option *n_opt = nullptr;
  CLI::Option *low_opt = nullptr;
  CLI::Option *high_opt = nullptr;
  CLI::Option *kind_opt = nullptr;

  void Register(CLI::App *cmd, bool allow_targets_file) {
    if (allow_targets_file) {
      cmd->add_option("--targets", targets_path,
                      "targets CSV (sample_id,value)")
          ->check(CLI::ExistingFile);
    }
    cmd->add_option("--ratings", ratings_path,
                    "ratings CSV (sample_id,listener_id,score)")
        ->check(CLI::ExistingFile);
    kind_opt = cmd->add_option("--kind", kind, "mos | n_low | n_high | central")
                   ->capture_default_str();
    n_opt = cmd->add_option("--n", n, "N for n_low / n_high");
    low_opt = cmd->add_option("--n-low-trim", n_low_trim,
                              "lowest ratings dropped by central");
    high_opt = cmd->add_option("--n-high-trim", n_high_trim,
                               "highest ratings dropped by central");
  }

  RepValSpec Spec() const {
    return RepValSpec::Parse(
        kind, n_opt->count() ? std::optional<int>(n) : std::nullopt,
        low_opt->count() ? std::optional<int>(n_low_trim) : std::nullopt,
        high_opt->count() ? std::optional<int>(n_high_trim) : std::nullopt);
  }

  /// Returns the targets and a label describing them.
  std::pair<KeyedValues, std::string> Load() const {
    if (!targets_path.empty()) {
      if (!ratings_path.empty() || kind_opt->count() || n_opt->count() ||
          low_opt->count() || high_opt->count()) {
        throw Error(ErrorCode::kUsage,
                    "--targets cannot be combined with --ratings/--kind");
      }
      return {ReadKeyedValuesFile(targets_path, "value"),
              "targets(" + fs::path(targets_path).filename().string() + ")"};
    }
    if (ratings_path.empty()) {
      throw Error(ErrorCode::kUsage, "need --ratings (or --targets)");
    }
    const RepValSpec spec = Spec();
    return {RepValBatch(IngestRatingsFile(ratings_path), spec),
            spec.ToString()};
  }
};

struct SplitOptions {
  std::string split_file;
  std::vector<double> fractions{0.7, 0.15, 0.15};

  void Register(CLI::App *cmd) {
    cmd->add_option("--fixed-split", split_file,
                    "explicit partition CSV (sample_id,partition)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--fractions", fractions,
                    "train,validation,test fractions for a random split")
        ->expected(3)
        ->delimiter(',')
        ->capture_default_str();
  }

  SplitFractions Fractions() const {
    return SplitFractions{fractions[0], fractions[1], fractions[2]};
  }

  std::optional<DataSplit> Fixed() const {
    if (split_file.empty()) return std::nullopt;
    std::ifstream in = OpenInput(split_file);
    return ReadSplit(in, split_file);
  }
};

void RegisterTrainOptions(CLI::App *cmd, TrainConfig *c) {
  cmd->add_option("--alpha", c->alpha, "frame-term weight")
      ->capture_default_str();
  cmd->add_option("--lr", c->learning_rate, "Adam learning rate")
      ->capture_default_str();
  cmd->add_option("--batch-size", c->batch_size)->capture_default_str();
  cmd->add_option("--patience", c->patience, "early-stopping patience (epochs)")
      ->capture_default_str();
  cmd->add_option("--max-epochs", c->max_epochs)->capture_default_str();
  cmd->add_option("--hidden", c->hidden_width,
                  "hidden layer width (0 = linear)")
      ->capture_default_str();
  cmd->add_option("--dropout", c->dropout_rate, "dropout on hidden units")
      ->capture_default_str();
  cmd->add_option("--init-std", c->init_stddev,
                  "stddev of the normal weight initialisation")
      ->capture_default_str();
}

void PrintConfig(std::ostream &out, const CLI::App &app) {
  const CLI::App *cmd = app.get_subcommands().front();
  out << "# command=" << cmd->get_name() << '\n';
  for (const CLI::App *scope : {&app, cmd}) {
    for (const CLI::Option *opt : scope->get_options()) {
      if (opt->get_single_name() == "help") continue;
      std::string value = opt->get_default_str();
      if (opt->count() > 0) {
        value.clear();
        for (const auto &r : opt->results()) {
          value += (value.empty() ? "" : ",") + r;
        }
      }
      out << "# " << opt->get_single_name() << '=' << value << '\n';
    }
  }
}

void PrintOutputs(std::ostream &out, const OutputStager &stager) {
  for (const auto &p : stager.final_paths()) out << "wrote " << p.string() << '\n';
}

std::string StemId(const fs::path &path) { return path.stem().string(); }

// ---------------------------------------------------------------------------

int CmdValidate(const GlobalOptions &, std::ostream &out,
                const std::string &ratings, const std::string &features,
                const std::string &split) {
  if (ratings.empty() && features.empty() && split.empty()) {
    throw Error(ErrorCode::kUsage,
                "validate needs --ratings, --features and/or --split");
  }
  if (!ratings.empty()) {
    const DatasetSummary s = Summarize(IngestRatingsFile(ratings));
    out << "ratings\t" << ratings << "\tok\n"
        << "samples\t" << s.samples << '\n'
        << "listeners\t" << s.listeners << '\n'
        << "ratings\t" << s.ratings << '\n';
    for (const auto &[per, count] : s.ratings_per_sample) {
      out << "ratings_per_sample=" << per << '\t' << count << '\n';
    }
  }
  if (!features.empty()) {
    const FeatureTable table = ReadFeaturesFile(features);
    std::size_t frames = 0;
    for (const auto &[id, m] : table) frames += m.rows();
    out << "features\t" << features << "\tok\n"
        << "samples\t" << table.size() << '\n'
        << "dim\t" << FeatureDim(table) << '\n'
        << "frames\t" << frames << '\n';
  }
  if (!split.empty()) {
    std::ifstream in = OpenInput(split);
    const DataSplit s = ReadSplit(in, split);
    out << "split\t" << split << "\tok\n"
        << "train\t" << s.train.size() << '\n'
        << "validation\t" << s.validation.size() << '\n'
        << "test\t" << s.test.size() << '\n';
  }
  return 0;
}

struct AnalyzeOptions {
  std::string ratings;
  double mean_bin = 0.25;
  double std_bin = 0.25;
  double skew_bin = 0.5;
  double usage_bin = 0.05;
};

int CmdAnalyze(const GlobalOptions &g, std::ostream &out,
               const AnalyzeOptions &o) {
  const Dataset dataset = IngestRatingsFile(o.ratings);
  const DatasetSummary summary = Summarize(dataset);
  const SkewSignCounts counts = CountSkewSigns(dataset);

  std::vector<double> means, stds, skews;
  for (const auto &[id, s] : dataset.samples()) {
    const SampleStats st = ComputeSampleStats(s);
    means.push_back(st.mean);
    stds.push_back(st.sample_std);
    if (st.skewness) skews.push_back(*st.skewness);
  }
  const auto usage_low = ExtremeUsageProportions(dataset, Extreme::kLow);
  const auto usage_high = ExtremeUsageProportions(dataset, Extreme::kHigh);
  auto values_of = [](const std::map<std::string, double> &m) {
    std::vector<double> v;
    for (const auto &[k, x] : m) v.push_back(x);
    return v;
  };

  OutputStager stager(g.out_dir);
  WriteStatsTsv(stager.Open("stats.tsv"), dataset);
  WriteSkewSignCountsTsv(stager.Open("skew_signs.tsv"), counts);
  WriteHistogramTsv(stager.Open("hist_mean.tsv"),
                    ComputeHistogram(means, o.mean_bin, 1.0, 5.0));
  WriteHistogramTsv(stager.Open("hist_std.tsv"),
                    ComputeHistogram(stds, o.std_bin, 0.0, 3.0));
  WriteHistogramTsv(stager.Open("hist_skewness.tsv"),
                    ComputeHistogram(skews, o.skew_bin, -3.0, 3.0));
  for (const auto &[name, usage] :
       {std::pair{"low", &usage_low}, std::pair{"high", &usage_high}}) {
    std::ostream &u = stager.Open(std::string("usage_") + name + ".tsv");
    u << "listener_id\tproportion\n";
    for (const auto &[listener, p] : *usage) {
      u << listener << '\t' << FormatFixed(p, 6) << '\n';
    }
    // [0, 1.05) so that a proportion of exactly 1 lands in the last bin.
    WriteHistogramTsv(stager.Open(std::string("hist_usage_") + name + ".tsv"),
                      ComputeHistogram(values_of(*usage), o.usage_bin, 0.0,
                                       1.0 + o.usage_bin));
  }
  if (g.format == "json") {
    ordered_json j;
    j["samples"] = summary.samples;
    j["listeners"] = summary.listeners;
    j["ratings"] = summary.ratings;
    for (const auto &[per, count] : summary.ratings_per_sample) {
      j["ratings_per_sample"][std::to_string(per)] = count;
    }
    j["skew_signs"] = {{"positive", counts.positive},
                       {"negative", counts.negative},
                       {"zero", counts.zero},
                       {"undefined", counts.undefined}};
    stager.Open("summary.json") << j.dump(2) << '\n';
  } else {
    std::ostream &s = stager.Open("summary.tsv");
    s << "key\tvalue\n"
      << "samples\t" << summary.samples << '\n'
      << "listeners\t" << summary.listeners << '\n'
      << "ratings\t" << summary.ratings << '\n';
    for (const auto &[per, count] : summary.ratings_per_sample) {
      s << "ratings_per_sample=" << per << '\t' << count << '\n';
    }
  }
  stager.Commit();
  out << "skew_signs\tpositive=" << counts.positive
      << "\tnegative=" << counts.negative << "\tzero=" << counts.zero
      << "\tundefined=" << counts.undefined << '\n';
  PrintOutputs(out, stager);
  return 0;
}

int CmdRepval(const GlobalOptions &g, std::ostream &out,
              const TargetOptions &t) {
  if (t.ratings_path.empty()) {
    throw Error(ErrorCode::kUsage, "repval needs --ratings");
  }
  const auto [values, label] = t.Load();
  OutputStager stager(g.out_dir);
  WriteRepValCsv(stager.Open("targets.csv"), values);
  stager.Commit();
  out << "repval\t" << label << '\t' << values.size() << " samples\n";
  PrintOutputs(out, stager);
  return 0;
}

int CmdEval(const GlobalOptions &g, std::ostream &out,
            const std::string &targets_path,
            const std::string &predictions_path) {
  const KeyedValues targets = ReadKeyedValuesFile(targets_path, "value");
  const KeyedValues predictions =
      ReadKeyedValuesFile(predictions_path, "prediction");
  const JoinedSeries joined = JoinOnId(targets, predictions);
  const Evaluation e = Evaluate(joined.truths, joined.predictions);
  OutputStager stager(g.out_dir);
  if (g.format == "json") {
    ordered_json j = {{"samples", joined.ids.size()},
                      {"MSE", e.mse},
                      {"LCC", e.lcc},
                      {"SRCC", e.srcc}};
    stager.Open("report.json") << j.dump(2) << '\n';
  } else {
    stager.Open("report.tsv") << "metric\tvalue\n"
                              << "MSE\t" << FormatFixed(e.mse, 6) << '\n'
                              << "LCC\t" << FormatFixed(e.lcc, 6) << '\n'
                              << "SRCC\t" << FormatFixed(e.srcc, 6) << '\n';
  }
  stager.Commit();
  out << "MSE " << FormatFixed(e.mse, 3) << "\tLCC " << FormatFixed(e.lcc, 3)
      << "\tSRCC " << FormatFixed(e.srcc, 3) << '\n';
  PrintOutputs(out, stager);
  return 0;
}

int CmdFeatures(const GlobalOptions &g, std::ostream &out, std::ostream &err,
                const std::string &wav_list,
                const std::vector<std::string> &wavs,
                const StftConfig &stft) {
  stft.Validate();
  std::vector<std::pair<std::string, fs::path>> inputs;
  if (!wav_list.empty()) {
    std::ifstream in = OpenInput(wav_list);
    LineReader reader(in);
    std::string line;
    if (!reader.Next(&line) || line != "sample_id,path") {
      throw Error(ErrorCode::kParse,
                  wav_list + " row 1: expected header 'sample_id,path'");
    }
    const fs::path base = fs::path(wav_list).parent_path();
    while (reader.Next(&line)) {
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos || comma == 0 ||
          comma + 1 == line.size()) {
        throw Error(ErrorCode::kParse,
                    wav_list + " row " + std::to_string(reader.line_number()) +
                        ": expected 'sample_id,path'");
      }
      fs::path p = line.substr(comma + 1);
      if (p.is_relative()) p = base / p;
      inputs.emplace_back(line.substr(0, comma), p);
    }
  }
  for (const auto &w : wavs) inputs.emplace_back(StemId(w), w);
  if (inputs.empty()) {
    throw Error(ErrorCode::kUsage, "features needs --wav-list or WAV files");
  }
  FeatureTable table;
  for (const auto &[id, path] : inputs) {
    const WaveBuffer wave = ReadWavFile(path);
    if (wave.sample_rate != kProtocolSampleRate) {
      err << "warning: " << path.string() << " has sample_rate="
          << wave.sample_rate << " (expected " << kProtocolSampleRate
          << ")\n";
    }
    FeatureMatrix m;
    try {
      m = StftMagnitude(wave, stft);
    } catch (const Error &e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
    if (!table.emplace(id, std::move(m)).second) {
      throw Error(ErrorCode::kUsage, "duplicate sample_id " + id);
    }
  }
  OutputStager stager(g.out_dir);
  WriteFeatures(stager.Open("features.csv"), table);
  stager.Commit();
  out << "features\t" << table.size() << " samples, D="
      << stft.window_length / 2 + 1 << '\n';
  PrintOutputs(out, stager);
  return 0;
}

int CmdSimulate(const GlobalOptions &g, std::ostream &out, SimConfig config) {
  config.seed = g.seed;
  const Simulation sim = Simulate(config);
  OutputStager stager(g.out_dir);
  WriteRatings(stager.Open("ratings.csv"), sim.ratings);
  WriteFeatures(stager.Open("features.csv"), sim.features);
  WriteTruthTsv(stager.Open("truth.tsv"), sim.truth);
  stager.Commit();
  out << "simulate\t" << sim.ratings.size() << " samples, "
      << sim.ratings.rating_count() << " ratings\n";
  PrintOutputs(out, stager);
  return 0;
}

int CmdTrain(const GlobalOptions &g, std::ostream &out,
             const std::string &features_path, const TargetOptions &t,
             const SplitOptions &s, TrainConfig config) {
  config.seed = g.seed;
  const FeatureTable features = ReadFeaturesFile(features_path);
  const auto [targets, label] = t.Load();
  std::optional<DataSplit> split = s.Fixed();
  if (!split) {
    std::vector<std::string> ids;
    for (const auto &[id, v] : targets) ids.push_back(id);
    split = SplitIds(ids, s.Fractions(), g.seed);
  }
  const TrainedModel model = Train(features, targets, *split, config);
  OutputStager stager(g.out_dir);
  WriteModel(stager.Open("model.txt"), model.params);
  WriteHistoryTsv(stager.Open("history.tsv"), model);
  WriteSplit(stager.Open("split.csv"), *split);
  stager.Commit();
  const EpochRecord &best = model.history[model.best_epoch - 1];
  out << "train\t" << label << "\tstopped at epoch " << model.stopping_epoch
      << ", best epoch " << model.best_epoch << " (train "
      << FormatSignificant(best.train_loss, 6) << ", validation "
      << FormatSignificant(best.val_loss, 6) << ")\n";
  PrintOutputs(out, stager);
  return 0;
}

int CmdPredict(const GlobalOptions &g, std::ostream &out,
               const std::string &model_path,
               const std::string &features_path) {
  std::ifstream in = OpenInput(model_path);
  const ModelParams params = ReadModel(in, model_path);
  const KeyedValues predictions =
      Predict(params, ReadFeaturesFile(features_path));
  OutputStager stager(g.out_dir);
  WritePredictionsCsv(stager.Open("predictions.csv"), predictions);
  stager.Commit();
  out << "predict\t" << predictions.size() << " samples\n";
  PrintOutputs(out, stager);
  return 0;
}

int CmdTrials(const GlobalOptions &g, std::ostream &out,
              const std::string &features_path, const TargetOptions &t,
              const SplitOptions &s, TrainConfig config) {
  config.seed = g.seed;
  const FeatureTable features = ReadFeaturesFile(features_path);
  const auto [targets, label] = t.Load();
  if (t.targets_path.empty()) config.target_spec = t.Spec();
  TrialOptions options;
  options.fractions = s.Fractions();
  options.fixed_split = s.Fixed();
  options.threads = ThreadLimitFromEnv();
  TrialReport report = RunTrials(features, targets, config, options);
  report.label = label;

  OutputStager stager(g.out_dir);
  if (g.format == "json") {
    ordered_json j;
    j["target"] = report.label;
    j["trials"] = report.trials.size();
    if (report.mse) {
      for (const auto &[name, summary] :
           {std::pair{"MSE", *report.mse}, std::pair{"LCC", *report.lcc},
            std::pair{"SRCC", *report.srcc}}) {
        j["metrics"][name] = {{"mean", summary.mean},
                              {"std", summary.sample_std}};
      }
    }
    for (const TrialResult &r : report.trials) {
      j["per_trial"].push_back({{"trial", r.trial},
                                {"seed", r.seed},
                                {"stopping_epoch", r.stopping_epoch},
                                {"best_epoch", r.best_epoch},
                                {"first_train_loss", r.first_train_loss},
                                {"best_train_loss", r.best_train_loss},
                                {"train_mean_prediction",
                                 r.train_mean_prediction},
                                {"MSE", r.test.mse},
                                {"LCC", r.test.lcc},
                                {"SRCC", r.test.srcc}});
    }
    stager.Open("report.json") << j.dump(2) << '\n';
  } else {
    WriteTrialReportTsv(stager.Open("report.tsv"), report);
  }
  WriteTrialDetailsTsv(stager.Open("trials.tsv"), report);
  stager.Commit();
  out << FormatReportRow(report) << '\n';
  PrintOutputs(out, stager);
  return 0;
}

}  // namespace

std::size_t ThreadLimitFromEnv() {
  std::size_t limit = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("SQA_LAB_THREADS")) {
    std::uint64_t v = 0;
    if (ParseUint64(env, &v) && v > 0) {
      limit = std::min<std::size_t>(limit, static_cast<std::size_t>(v));
    }
  }
  return limit;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Subjective speech quality toolkit: representative values, "
               "rating analysis, features and desk-scale predictor training",
               "sqa-lab"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "master random seed")
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "directory for output files")
      ->capture_default_str();
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  std::function<int()> action;

  // validate
  std::string v_ratings, v_features, v_split;
  auto *validate = app.add_subcommand("validate", "check input files");
  validate->add_option("--ratings", v_ratings)->check(CLI::ExistingFile);
  validate->add_option("--features", v_features)->check(CLI::ExistingFile);
  validate->add_option("--split", v_split)->check(CLI::ExistingFile);
  validate->callback([&] {
    action = [&] { return CmdValidate(g, out, v_ratings, v_features, v_split); };
  });

  // analyze
  AnalyzeOptions a;
  auto *analyze = app.add_subcommand(
      "analyze", "per-sample stats, skewness signs, histograms, listener usage");
  analyze->add_option("--ratings", a.ratings)
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("--mean-bin", a.mean_bin)->capture_default_str();
  analyze->add_option("--std-bin", a.std_bin)->capture_default_str();
  analyze->add_option("--skew-bin", a.skew_bin)->capture_default_str();
  analyze->add_option("--usage-bin", a.usage_bin)->capture_default_str();
  analyze->callback([&] { action = [&] { return CmdAnalyze(g, out, a); }; });

  // repval
  TargetOptions rv;
  auto *repval =
      app.add_subcommand("repval", "representative value per sample");
  rv.Register(repval, false);
  repval->callback([&] { action = [&] { return CmdRepval(g, out, rv); }; });

  // eval
  std::string e_targets, e_predictions;
  auto *eval = app.add_subcommand("eval", "MSE / LCC / SRCC of predictions");
  eval->add_option("--targets", e_targets)
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--predictions", e_predictions)
      ->required()
      ->check(CLI::ExistingFile);
  eval->callback([&] {
    action = [&] { return CmdEval(g, out, e_targets, e_predictions); };
  });

  // features
  std::string f_list;
  std::vector<std::string> f_wavs;
  StftConfig stft;
  auto *features =
      app.add_subcommand("features", "STFT magnitude features from WAV files");
  features->add_option("--wav-list", f_list, "CSV sample_id,path")
      ->check(CLI::ExistingFile);
  features->add_option("wavs", f_wavs, "WAV files (sample_id = file stem)")
      ->check(CLI::ExistingFile);
  features->add_option("--window", stft.window_length, "samples")
      ->capture_default_str();
  features->add_option("--hop", stft.hop_length, "samples")
      ->capture_default_str();
  features->callback([&] {
    action = [&] { return CmdFeatures(g, out, err, f_list, f_wavs, stft); };
  });

  // simulate
  SimConfig sim;
  auto *simulate =
      app.add_subcommand("simulate", "synthetic ratings and aligned features");
  simulate->add_option("--n-samples", sim.n_samples)->capture_default_str();
  simulate->add_option("--listeners", sim.listeners_per_sample,
                       "ratings per sample")
      ->capture_default_str();
  simulate->add_option("--listener-pool", sim.listener_pool,
                       "0 = one fixed panel")
      ->capture_default_str();
  simulate->add_option("--segments-min", sim.segments_min)
      ->capture_default_str();
  simulate->add_option("--segments-max", sim.segments_max)
      ->capture_default_str();
  simulate->add_option("--overlook-prob", sim.overlook_prob)
      ->capture_default_str();
  simulate->add_option("--score-noise", sim.score_noise_sigma)
      ->capture_default_str();
  simulate->add_option("--frames-per-segment", sim.frames_per_segment)
      ->capture_default_str();
  simulate->add_option("--feature-dim", sim.feature_dim)
      ->capture_default_str();
  simulate->add_option("--feature-noise", sim.feature_noise_sigma)
      ->capture_default_str();
  simulate->callback([&] { action = [&] { return CmdSimulate(g, out, sim); }; });

  // train
  std::string t_features;
  TargetOptions tt;
  SplitOptions ts;
  TrainConfig tc;
  auto *train = app.add_subcommand("train", "train one frame-level regressor");
  train->add_option("--features", t_features)
      ->required()
      ->check(CLI::ExistingFile);
  tt.Register(train, true);
  ts.Register(train);
  RegisterTrainOptions(train, &tc);
  train->callback([&] {
    action = [&] { return CmdTrain(g, out, t_features, tt, ts, tc); };
  });

  // predict
  std::string p_model, p_features;
  auto *predict = app.add_subcommand("predict", "utterance scores from a model");
  predict->add_option("--model", p_model)
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--features", p_features)
      ->required()
      ->check(CLI::ExistingFile);
  predict->callback([&] {
    action = [&] { return CmdPredict(g, out, p_model, p_features); };
  });

  // trials
  std::string r_features;
  TargetOptions rt;
  SplitOptions rs;
  TrainConfig rc;
  auto *trials = app.add_subcommand(
      "trials", "repeated training with mean and sample std of test metrics");
  trials->add_option("--features", r_features)
      ->required()
      ->check(CLI::ExistingFile);
  rt.Register(trials, true);
  rs.Register(trials);
  RegisterTrainOptions(trials, &rc);
  trials->add_option("--trials", rc.trials)->capture_default_str();
  trials->callback([&] {
    action = [&] { return CmdTrials(g, out, r_features, rt, rs, rc); };
  });

  for (auto *cmd : app.get_subcommands({})) cmd->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << ErrorCodeName(ErrorCode::kUsage) << ": " << msg << '\n';
    return 2;
  }

  try {
    PrintConfig(out, app);
    return action();
  } catch (const Error &e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << ErrorCodeName(e.code()) << ": " << msg << '\n';
    return e.code() == ErrorCode::kUsage ? 2 : 1;
  } catch (const std::exception &e) {
    err << "internal_error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sqalab
