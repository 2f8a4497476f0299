// include/sqalab/ratings.h

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

#ifndef SQALAB_RATINGS_H_
#define SQALAB_RATINGS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqalab {

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;

/// One ACR opinion score given by one listener to one speech sample.
struct Rating {
  std::string sample_id;
  std::string listener_id;
  int score = 0;
};

/// All ratings of one speech sample, kept in ascending score order.
/// Equal scores are ordered by listener id so the listener alignment is
/// independent of the order the ratings were read in.
class SampleRatings {
 public:
  /// Pairs are (listener_id, score). Throws kPrecondition when empty and
  /// kRange for a score outside 1..5.
  SampleRatings(std::string sample_id,
                std::vector<std::pair<std::string, int>> listener_scores);

  /// Convenience for anonymous scores; listeners are named "#0", "#1", ...
  /// in input order.
  static SampleRatings FromScores(std::string sample_id,
                                  std::span<const int> scores);

  const std::string &sample_id() const { return sample_id_; }
  std::span<const int> scores() const { return scores_; }
  std::span<const std::string> listeners() const { return listeners_; }
  std::size_t size() const { return scores_.size(); }

 private:
  std::string sample_id_;
  std::vector<int> scores_;
  std::vector<std::string> listeners_;
};

class Dataset {
 public:
  Dataset() = default;

  /// Validates score range and (sample, listener) uniqueness.
  static Dataset FromRatings(std::span<const Rating> ratings);

  const std::map<std::string, SampleRatings> &samples() const {
    return samples_;
  }
  const std::set<std::string> &listeners() const { return listeners_; }
  const SampleRatings &at(const std::string &sample_id) const;
  bool contains(const std::string &sample_id) const {
    return samples_.count(sample_id) > 0;
  }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::size_t rating_count() const;
  std::vector<std::string> sample_ids() const;

 private:
  std::map<std::string, SampleRatings> samples_;
  std::set<std::string> listeners_;
};

struct DatasetSummary {
  std::size_t samples = 0;
  std::size_t listeners = 0;
  std::size_t ratings = 0;
  /// ratings-per-sample -> number of samples with that many ratings
  std::map<std::size_t, std::size_t> ratings_per_sample;
};

DatasetSummary Summarize(const Dataset &dataset);

/// Parses a `sample_id,listener_id,score` CSV. Errors carry the source name
/// and 1-based row (line) number.
Dataset IngestRatings(std::istream &in, std::string_view source_name);
Dataset IngestRatingsFile(const std::filesystem::path &path);
void WriteRatings(std::ostream &out, const Dataset &dataset);

// ---------------------------------------------------------------------------
// Representative values.

double Mos(const SampleRatings &sample);

/// Mean of the n lowest scores; n must lie in [1, size].
double NLowMos(const SampleRatings &sample, int n);

/// Mean of the n highest scores; n must lie in [1, size].
double NHighMos(const SampleRatings &sample, int n);

/// Mean after dropping the n_low_trim lowest and n_high_trim highest scores.
/// At least one score must remain.
double CentralMos(const SampleRatings &sample, int n_low_trim,
                  int n_high_trim);

/// Which representative value to compute. Construct through the named
/// factories; each kind only carries the parameters it uses.
class RepValSpec {
 public:
  enum class Kind { kMos, kNLow, kNHigh, kCentral };

  static RepValSpec MeanOpinion() { return RepValSpec(Kind::kMos, 0, 0, 0); }
  static RepValSpec NLow(int n);
  static RepValSpec NHigh(int n);
  static RepValSpec Central(int n_low_trim, int n_high_trim);

  /// Builds a spec from CLI-style pieces; rejects missing or superfluous
  /// parameters for the given kind ("mos", "n_low", "n_high", "central").
  static RepValSpec Parse(std::string_view kind, std::optional<int> n,
                          std::optional<int> n_low_trim,
                          std::optional<int> n_high_trim);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int n_low_trim() const { return n_low_trim_; }
  int n_high_trim() const { return n_high_trim_; }

  bool ValidFor(std::size_t rating_count) const;
  double Apply(const SampleRatings &sample) const;
  /// e.g. "mos", "n_low(n=3)", "central(low=3,high=3)"
  std::string ToString() const;

  bool operator==(const RepValSpec &) const = default;

 private:
  RepValSpec(Kind kind, int n, int lo, int hi)
      : kind_(kind), n_(n), n_low_trim_(lo), n_high_trim_(hi) {}

  Kind kind_;
  int n_;
  int n_low_trim_;
  int n_high_trim_;
};

std::string_view KindName(RepValSpec::Kind kind);

/// One value per sample. Fails as a whole, listing every sample whose
/// rating count cannot support the requested parameters.
std::map<std::string, double> RepValBatch(const Dataset &dataset,
                                          const RepValSpec &spec);

// ---------------------------------------------------------------------------
// Distribution analysis.

struct SampleStats {
  double mean = 0.0;
  /// n-1 denominator; 0 for a single rating.
  double sample_std = 0.0;
  /// Fisher-Pearson g1 with population moments; nullopt when all scores are
  /// equal (zero variance).
  std::optional<double> skewness;
};

SampleStats ComputeSampleStats(const SampleRatings &sample);

/// g1 = m3 / m2^(3/2) over integer scores. Computed from integer-centred
/// moments so that the sign is exact: symmetric multisets give exactly 0 and
/// reflected multisets give exactly the negated value. Returns nullopt for
/// zero variance.
std::optional<double> SkewnessG1(std::span<const int> scores);

enum class SkewSign { kPositive, kNegative, kZero, kUndefined };

SkewSign ClassifySkew(const std::optional<double> &skewness);

struct SkewSignCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t undefined = 0;

  std::size_t total() const { return positive + negative + zero + undefined; }
  bool operator==(const SkewSignCounts &) const = default;
};

/// Zero means g1 == 0 exactly; no epsilon is applied.
SkewSignCounts CountSkewSigns(const Dataset &dataset);

enum class Extreme { kLow, kHigh };

/// For every listener, the fraction of their ratings that equal the minimum
/// (kLow) or maximum (kHigh) score of the rated sample. Ties at the extremum
/// all count.
std::map<std::string, double> ExtremeUsageProportions(const Dataset &dataset,
                                                      Extreme which);

// ---------------------------------------------------------------------------
// Text output.

/// `sample_id,value`, six decimals.
void WriteRepValCsv(std::ostream &out,
                    const std::map<std::string, double> &values);
/// `sample_id\tmean\tsample_std\tskewness`, undefined skewness as NA.
void WriteStatsTsv(std::ostream &out, const Dataset &dataset);
void WriteSkewSignCountsTsv(std::ostream &out, const SkewSignCounts &counts);

}  // namespace sqalab

#endif  // SQALAB_RATINGS_H_
