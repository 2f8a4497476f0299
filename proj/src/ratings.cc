// src/ratings.cc

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

#include "sqalab/ratings.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sqalab/error.h"
#include "text_util.h"

namespace sqalab {

namespace {

void CheckScore(int score, const std::string &context) {
  if (score < kMinScore || score > kMaxScore) {
    throw Error(ErrorCode::kRange, context + ": score " +
                                       std::to_string(score) +
                                       " outside 1..5");
  }
}

double MeanOfRange(std::span<const int> scores) {
  long long sum = std::accumulate(scores.begin(), scores.end(), 0LL);
  return static_cast<double>(sum) / static_cast<double>(scores.size());
}

std::string RangeMessage(const SampleRatings &sample, std::string_view what) {
  std::ostringstream os;
  os << "sample " << sample.sample_id() << ": " << what
     << " not valid for N_all=" << sample.size();
  return os.str();
}

}  // namespace

SampleRatings::SampleRatings(
    std::string sample_id,
    std::vector<std::pair<std::string, int>> listener_scores)
    : sample_id_(std::move(sample_id)) {
  if (listener_scores.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "sample " + sample_id_ + " has no ratings");
  }
  for (const auto &[listener, score] : listener_scores) {
    CheckScore(score, "sample " + sample_id_ + ", listener " + listener);
  }
  std::sort(listener_scores.begin(), listener_scores.end(),
            [](const auto &a, const auto &b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  scores_.reserve(listener_scores.size());
  listeners_.reserve(listener_scores.size());
  for (auto &[listener, score] : listener_scores) {
    scores_.push_back(score);
    listeners_.push_back(std::move(listener));
  }
}

SampleRatings SampleRatings::FromScores(std::string sample_id,
                                        std::span<const int> scores) {
  std::vector<std::pair<std::string, int>> pairs;
  pairs.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    pairs.emplace_back("#" + std::to_string(i), scores[i]);
  }
  return SampleRatings(std::move(sample_id), std::move(pairs));
}

Dataset Dataset::FromRatings(std::span<const Rating> ratings) {
  std::map<std::string, std::vector<std::pair<std::string, int>>> grouped;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Rating &r : ratings) {
    CheckScore(r.score, "sample " + r.sample_id + ", listener " +
                            r.listener_id);
    if (!seen.emplace(r.sample_id, r.listener_id).second) {
      throw Error(ErrorCode::kParse, "duplicate rating for sample " +
                                         r.sample_id + ", listener " +
                                         r.listener_id);
    }
    grouped[r.sample_id].emplace_back(r.listener_id, r.score);
  }
  Dataset dataset;
  for (auto &[id, pairs] : grouped) {
    for (const auto &p : pairs) dataset.listeners_.insert(p.first);
    dataset.samples_.emplace(id, SampleRatings(id, std::move(pairs)));
  }
  return dataset;
}

const SampleRatings &Dataset::at(const std::string &sample_id) const {
  auto it = samples_.find(sample_id);
  if (it == samples_.end()) {
    throw Error(ErrorCode::kPrecondition, "unknown sample " + sample_id);
  }
  return it->second;
}

std::size_t Dataset::rating_count() const {
  std::size_t n = 0;
  for (const auto &[id, s] : samples_) n += s.size();
  return n;
}

std::vector<std::string> Dataset::sample_ids() const {
  std::vector<std::string> ids;
  ids.reserve(samples_.size());
  for (const auto &[id, s] : samples_) ids.push_back(id);
  return ids;
}

DatasetSummary Summarize(const Dataset &dataset) {
  DatasetSummary summary;
  summary.samples = dataset.size();
  summary.listeners = dataset.listeners().size();
  for (const auto &[id, s] : dataset.samples()) {
    summary.ratings += s.size();
    ++summary.ratings_per_sample[s.size()];
  }
  return summary;
}

Dataset IngestRatings(std::istream &in, std::string_view source_name) {
  const std::string source(source_name);
  LineReader reader(in);
  std::string line;
  if (!reader.Next(&line)) {
    throw Error(ErrorCode::kParse, source + ": empty file");
  }
  if (line != "sample_id,listener_id,score") {
    throw Error(ErrorCode::kParse,
                source + " row 1: expected header "
                         "'sample_id,listener_id,score', got '" + line + "'");
  }
  std::vector<Rating> ratings;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t blank_run_start = 0;
  while (reader.Next(&line)) {
    const std::string where =
        source + " row " + std::to_string(reader.line_number());
    if (line.empty()) {
      if (blank_run_start == 0) blank_run_start = reader.line_number();
      continue;
    }
    if (blank_run_start != 0) {
      throw Error(ErrorCode::kParse,
                  source + " row " + std::to_string(blank_run_start) +
                      ": blank line inside data");
    }
    auto fields = SplitFields(line, ',');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kParse, where + ": expected 3 fields, got " +
                                         std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::kParse, where + ": empty sample_id or listener_id");
    }
    long long score = 0;
    if (!ParseInt(fields[2], &score)) {
      throw Error(ErrorCode::kParse, where + ": score '" +
                                         std::string(fields[2]) +
                                         "' is not an integer");
    }
    if (score < kMinScore || score > kMaxScore) {
      throw Error(ErrorCode::kRange, where + ": score " +
                                         std::to_string(score) +
                                         " outside 1..5");
    }
    Rating r{std::string(fields[0]), std::string(fields[1]),
             static_cast<int>(score)};
    if (!seen.emplace(r.sample_id, r.listener_id).second) {
      throw Error(ErrorCode::kParse, where + ": duplicate rating for sample " +
                                         r.sample_id + ", listener " +
                                         r.listener_id);
    }
    ratings.push_back(std::move(r));
  }
  if (ratings.empty()) {
    throw Error(ErrorCode::kParse, source + ": no ratings after header");
  }
  return Dataset::FromRatings(ratings);
}

Dataset IngestRatingsFile(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  return IngestRatings(in, path.string());
}

void WriteRatings(std::ostream &out, const Dataset &dataset) {
  out << "sample_id,listener_id,score\n";
  for (const auto &[id, s] : dataset.samples()) {
    // Listener order, so the file layout does not depend on the scores.
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return s.listeners()[a] < s.listeners()[b];
    });
    for (std::size_t i : order) {
      out << id << ',' << s.listeners()[i] << ',' << s.scores()[i] << '\n';
    }
  }
}

double Mos(const SampleRatings &sample) { return MeanOfRange(sample.scores()); }

double NLowMos(const SampleRatings &sample, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > sample.size()) {
    throw Error(ErrorCode::kRange,
                RangeMessage(sample, "n_low n=" + std::to_string(n)));
  }
  return MeanOfRange(sample.scores().first(n));
}

double NHighMos(const SampleRatings &sample, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > sample.size()) {
    throw Error(ErrorCode::kRange,
                RangeMessage(sample, "n_high n=" + std::to_string(n)));
  }
  return MeanOfRange(sample.scores().last(n));
}

double CentralMos(const SampleRatings &sample, int n_low_trim,
                  int n_high_trim) {
  if (n_low_trim < 0 || n_high_trim < 0 ||
      static_cast<std::size_t>(n_low_trim) +
              static_cast<std::size_t>(n_high_trim) >=
          sample.size()) {
    throw Error(ErrorCode::kRange,
                RangeMessage(sample, "central trims (" +
                                         std::to_string(n_low_trim) + "," +
                                         std::to_string(n_high_trim) + ")"));
  }
  const std::size_t kept = sample.size() - n_low_trim - n_high_trim;
  return MeanOfRange(sample.scores().subspan(n_low_trim, kept));
}

RepValSpec RepValSpec::NLow(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kRange, "n_low requires n >= 1");
  }
  return RepValSpec(Kind::kNLow, n, 0, 0);
}

RepValSpec RepValSpec::NHigh(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kRange, "n_high requires n >= 1");
  }
  return RepValSpec(Kind::kNHigh, n, 0, 0);
}

RepValSpec RepValSpec::Central(int n_low_trim, int n_high_trim) {
  if (n_low_trim < 0 || n_high_trim < 0) {
    throw Error(ErrorCode::kRange, "central trims must be >= 0");
  }
  return RepValSpec(Kind::kCentral, 0, n_low_trim, n_high_trim);
}

RepValSpec RepValSpec::Parse(std::string_view kind, std::optional<int> n,
                             std::optional<int> n_low_trim,
                             std::optional<int> n_high_trim) {
  const bool has_trims = n_low_trim.has_value() || n_high_trim.has_value();
  auto reject = [&](const std::string &why) -> Error {
    return Error(ErrorCode::kUsage,
                 "kind " + std::string(kind) + ": " + why);
  };
  if (kind == "mos") {
    if (n || has_trims) throw reject("takes no parameters");
    return MeanOpinion();
  }
  if (kind == "n_low" || kind == "n_high") {
    if (!n) throw reject("requires --n");
    if (has_trims) throw reject("does not take trims");
    return kind == "n_low" ? NLow(*n) : NHigh(*n);
  }
  if (kind == "central") {
    if (n) throw reject("does not take --n");
    if (!n_low_trim || !n_high_trim) {
      throw reject("requires --n-low-trim and --n-high-trim");
    }
    return Central(*n_low_trim, *n_high_trim);
  }
  throw Error(ErrorCode::kUsage,
              "unknown kind '" + std::string(kind) +
                  "' (expected mos, n_low, n_high, central)");
}

bool RepValSpec::ValidFor(std::size_t rating_count) const {
  switch (kind_) {
    case Kind::kMos:
      return rating_count >= 1;
    case Kind::kNLow:
    case Kind::kNHigh:
      return static_cast<std::size_t>(n_) <= rating_count;
    case Kind::kCentral:
      return static_cast<std::size_t>(n_low_trim_ + n_high_trim_) <
             rating_count;
  }
  return false;
}

double RepValSpec::Apply(const SampleRatings &sample) const {
  switch (kind_) {
    case Kind::kMos: return Mos(sample);
    case Kind::kNLow: return NLowMos(sample, n_);
    case Kind::kNHigh: return NHighMos(sample, n_);
    case Kind::kCentral: return CentralMos(sample, n_low_trim_, n_high_trim_);
  }
  return 0.0;
}

std::string RepValSpec::ToString() const {
  switch (kind_) {
    case Kind::kMos: return "mos";
    case Kind::kNLow: return "n_low(n=" + std::to_string(n_) + ")";
    case Kind::kNHigh: return "n_high(n=" + std::to_string(n_) + ")";
    case Kind::kCentral:
      return "central(low=" + std::to_string(n_low_trim_) +
             ",high=" + std::to_string(n_high_trim_) + ")";
  }
  return "";
}

std::string_view KindName(RepValSpec::Kind kind) {
  switch (kind) {
    case RepValSpec::Kind::kMos: return "mos";
    case RepValSpec::Kind::kNLow: return "n_low";
    case RepValSpec::Kind::kNHigh: return "n_high";
    case RepValSpec::Kind::kCentral: return "central";
  }
  return "";
}

std::map<std::string, double> RepValBatch(const Dataset &dataset,
                                          const RepValSpec &spec) {
  std::vector<std::string> offending;
  for (const auto &[id, s] : dataset.samples()) {
    if (!spec.ValidFor(s.size())) {
      offending.push_back(id + " (N_all=" + std::to_string(s.size()) + ")");
    }
  }
  if (!offending.empty()) {
    std::string msg = spec.ToString() + " invalid for " +
                      std::to_string(offending.size()) + " sample(s):";
    for (const auto &o : offending) msg += " " + o;
    throw Error(ErrorCode::kRange, msg);
  }
  std::map<std::string, double> values;
  for (const auto &[id, s] : dataset.samples()) {
    values.emplace_hint(values.end(), id, spec.Apply(s));
  }
  return values;
}

std::optional<double> SkewnessG1(std::span<const int> scores) {
  // With d_i = n*s_i - S the population moments are m2 = M2/n^3 and
  // m3 = M3/n^4, so g1 = M3 * sqrt(n) / M2^(3/2). M2 and M3 are exact
  // integers for any realistic rating count.
  __extension__ typedef __int128 Wide;
  const Wide n = static_cast<Wide>(scores.size());
  if (n == 0) return std::nullopt;
  Wide total = 0;
  for (int s : scores) total += s;
  Wide m2 = 0;
  Wide m3 = 0;
  for (int s : scores) {
    const Wide d = n * s - total;
    m2 += d * d;
    m3 += d * d * d;
  }
  if (m2 == 0) return std::nullopt;
  const long double m2l = static_cast<long double>(m2);
  const long double g1 = static_cast<long double>(m3) *
                         std::sqrt(static_cast<long double>(n)) /
                         (m2l * std::sqrt(m2l));
  return static_cast<double>(g1);
}

SampleStats ComputeSampleStats(const SampleRatings &sample) {
  SampleStats stats;
  auto scores = sample.scores();
  const double n = static_cast<double>(scores.size());
  stats.mean = MeanOfRange(scores);
  if (scores.size() > 1) {
    double ss = 0.0;
    for (int s : scores) ss += (s - stats.mean) * (s - stats.mean);
    stats.sample_std = std::sqrt(ss / (n - 1.0));
  }
  stats.skewness = SkewnessG1(scores);
  return stats;
}

SkewSign ClassifySkew(const std::optional<double> &skewness) {
  if (!skewness) return SkewSign::kUndefined;
  if (*skewness > 0.0) return SkewSign::kPositive;
  if (*skewness < 0.0) return SkewSign::kNegative;
  return SkewSign::kZero;
}

SkewSignCounts CountSkewSigns(const Dataset &dataset) {
  SkewSignCounts counts;
  for (const auto &[id, s] : dataset.samples()) {
    switch (ClassifySkew(SkewnessG1(s.scores()))) {
      case SkewSign::kPositive: ++counts.positive; break;
      case SkewSign::kNegative: ++counts.negative; break;
      case SkewSign::kZero: ++counts.zero; break;
      case SkewSign::kUndefined: ++counts.undefined; break;
    }
  }
  return counts;
}

std::map<std::string, double> ExtremeUsageProportions(const Dataset &dataset,
                                                      Extreme which) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  for (const auto &[id, s] : dataset.samples()) {
    const int extremum =
        which == Extreme::kLow ? s.scores().front() : s.scores().back();
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto &[used, total] = tally[s.listeners()[i]];
      ++total;
      if (s.scores()[i] == extremum) ++used;
    }
  }
  std::map<std::string, double> proportions;
  for (const auto &[listener, counts] : tally) {
    proportions.emplace_hint(proportions.end(), listener,
                             static_cast<double>(counts.first) /
                                 static_cast<double>(counts.second));
  }
  return proportions;
}

void WriteRepValCsv(std::ostream &out,
                    const std::map<std::string, double> &values) {
  out << "sample_id,value\n";
  for (const auto &[id, v] : values) {
    out << id << ',' << FormatFixed(v, 6) << '\n';
  }
}

void WriteStatsTsv(std::ostream &out, const Dataset &dataset) {
  out << "sample_id\tmean\tsample_std\tskewness\n";
  for (const auto &[id, s] : dataset.samples()) {
    const SampleStats st = ComputeSampleStats(s);
    out << id << '\t' << FormatFixed(st.mean, 6) << '\t'
        << FormatFixed(st.sample_std, 6) << '\t'
        << (st.skewness ? FormatFixed(*st.skewness, 6) : std::string("NA"))
        << '\n';
  }
}

void WriteSkewSignCountsTsv(std::ostream &out, const SkewSignCounts &counts) {
  out << "sign\tcount\n"
      << "positive\t" << counts.positive << '\n'
      << "negative\t" << counts.negative << '\n'
      << "zero\t" << counts.zero << '\n'
      << "undefined\t" << counts.undefined << '\n';
}

}  // namespace sqalab
