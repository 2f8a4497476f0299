// tests/ratings_test.cc

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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "sqalab/error.h"
#include "sqalab/histogram.h"
#include "sqalab/ratings.h"

namespace sqalab {
namespace {

SampleRatings Make(std::vector<int> scores) {
  return SampleRatings::FromScores("s", scores);
}

Dataset FromScoreLists(const std::vector<std::vector<int>> &lists) {
  std::vector<Rating> ratings;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t j = 0; j < lists[i].size(); ++j) {
      ratings.push_back({"s" + std::to_string(i), "L" + std::to_string(j),
                         lists[i][j]});
    }
  }
  return Dataset::FromRatings(ratings);
}

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kUsage;
}

std::string MessageOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

TEST_CASE("representative values on worked examples") {
  auto s = Make({5, 4, 2, 4});
  CHECK(Mos(s) == doctest::Approx(3.75).epsilon(1e-12));
  CHECK(NLowMos(s, 2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(NHighMos(s, 2) == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(CentralMos(s, 1, 1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(Mos(Make({3})) == 3.0);
  CHECK(Mos(Make({1, 1, 1, 1})) == 1.0);
  CHECK(NLowMos(Make({5, 5, 5}), 2) == 5.0);
  CHECK(NHighMos(Make({1, 2}), 1) == 2.0);
}

TEST_CASE("representative values reject out-of-range parameters") {
  auto s = Make({2, 4});
  CHECK(CodeOf([&] { NLowMos(s, 3); }) == ErrorCode::kRange);
  CHECK(CodeOf([&] { NLowMos(s, 0); }) == ErrorCode::kRange);
  CHECK(CodeOf([&] { NHighMos(s, 3); }) == ErrorCode::kRange);
  CHECK(CodeOf([&] { CentralMos(s, 1, 1); }) == ErrorCode::kRange);
  CHECK(MessageOf([&] { NLowMos(s, 3); }).find("N_all=2") !=
        std::string::npos);
}

TEST_CASE("exhaustive oracle agreement and invariants over all multisets") {
  const auto all = oracle::AllScoreMultisets(1, 8);
  REQUIRE(all.size() == 1286);
  for (const auto &scores : all) {
    auto s = Make(scores);
    const std::size_t n_all = scores.size();
    const double mos = Mos(s);
    CHECK(std::abs(mos - oracle::SortedSliceMean(scores, 0, n_all)) <= 1e-12);
    double prev_low = -1, prev_high = 99;
    for (std::size_t n = 1; n <= n_all; ++n) {
      const double low = NLowMos(s, static_cast<int>(n));
      const double high = NHighMos(s, static_cast<int>(n));
      CHECK(std::abs(low - oracle::SortedSliceMean(scores, 0, n)) <= 1e-12);
      CHECK(std::abs(high - oracle::SortedSliceMean(scores, n_all - n,
                                                    n_all)) <= 1e-12);
      CHECK(low >= prev_low);
      CHECK(high <= prev_high);
      CHECK(low <= mos + 1e-12);
      CHECK(mos <= high + 1e-12);
      prev_low = low;
      prev_high = high;
    }
    for (std::size_t lo = 0; lo < n_all; ++lo) {
      for (std::size_t hi = 0; lo + hi < n_all; ++hi) {
        const double c =
            CentralMos(s, static_cast<int>(lo), static_cast<int>(hi));
        CHECK(std::abs(c - oracle::SortedSliceMean(scores, lo, n_all - hi)) <=
              1e-12);
      }
    }
    CHECK(NLowMos(s, 1) == *std::min_element(scores.begin(), scores.end()));
    CHECK(NLowMos(s, static_cast<int>(n_all)) == mos);
    CHECK(NHighMos(s, static_cast<int>(n_all)) == mos);
    CHECK(CentralMos(s, 0, 0) == mos);
    if (n_all == 8) CHECK(CentralMos(s, 3, 3) == oracle::Median(scores));
  }
}

TEST_CASE("values and stats are invariant under permutation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> score(1, 5);
  std::uniform_int_distribution<int> size(1, 12);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<int> scores(static_cast<std::size_t>(size(rng)));
    for (int &v : scores) v = score(rng);
    auto shuffled = scores;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = Make(scores), b = Make(shuffled);
    CHECK(Mos(a) == Mos(b));
    const int n = 1 + static_cast<int>(scores.size()) / 2;
    CHECK(NLowMos(a, n) == NLowMos(b, n));
    CHECK(NHighMos(a, n) == NHighMos(b, n));
    auto sa = ComputeSampleStats(a), sb = ComputeSampleStats(b);
    CHECK(sa.mean == sb.mean);
    CHECK(sa.sample_std == sb.sample_std);
    CHECK(sa.skewness == sb.skewness);
  }
}

TEST_CASE("sample ordering is stable by listener id within ties") {
  SampleRatings s("x", {{"c", 3}, {"a", 3}, {"b", 1}, {"d", 5}});
  const std::vector<int> scores(s.scores().begin(), s.scores().end());
  CHECK(scores == std::vector<int>{1, 3, 3, 5});
  const std::vector<std::string> listeners(s.listeners().begin(),
                                           s.listeners().end());
  CHECK(listeners == std::vector<std::string>{"b", "a", "c", "d"});
}

TEST_CASE("sample statistics examples") {
  auto st = ComputeSampleStats(Make({1, 1, 5}));
  CHECK(st.mean == doctest::Approx(7.0 / 3.0));
  CHECK(st.sample_std == doctest::Approx(std::sqrt(16.0 / 3.0)));
  REQUIRE(st.skewness.has_value());
  CHECK(std::abs(*st.skewness - 0.70710678) <= 1e-4);
  auto mirror = ComputeSampleStats(Make({5, 5, 1}));
  REQUIRE(mirror.skewness.has_value());
  CHECK(std::abs(*mirror.skewness + 0.70710678) <= 1e-4);
  CHECK_FALSE(ComputeSampleStats(Make({4, 4, 4, 4})).skewness.has_value());
  auto single = ComputeSampleStats(Make({3}));
  CHECK(single.sample_std == 0.0);
  CHECK_FALSE(single.skewness.has_value());
}

TEST_CASE("skewness matches the moment formula and is antisymmetric") {
  for (const auto &scores : oracle::AllScoreMultisets(1, 8)) {
    const auto g1 = SkewnessG1(scores);
    const auto expected = oracle::MomentSkewness(scores);
    REQUIRE(g1.has_value() == expected.has_value());
    if (g1 && scores.size() <= 6) CHECK(std::abs(*g1 - *expected) <= 1e-9);

    std::vector<int> reflected;
    for (int v : scores) reflected.push_back(6 - v);
    const auto r = SkewnessG1(reflected);
    REQUIRE(r.has_value() == g1.has_value());
    if (!g1) continue;
    const SkewSign a = ClassifySkew(g1), b = ClassifySkew(r);
    if (a == SkewSign::kZero) {
      CHECK(b == SkewSign::kZero);
    } else {
      CHECK(a != b);
      CHECK(b != SkewSign::kZero);
    }
  }
}

TEST_CASE("skew sign counts") {
  auto ds = FromScoreLists({{1, 1, 5}, {5, 5, 1}, {1, 3, 5}, {4, 4, 4}});
  SkewSignCounts c = CountSkewSigns(ds);
  CHECK(c == SkewSignCounts{1, 1, 1, 1});
  CHECK(c.total() == ds.size());
  CHECK(CountSkewSigns(Dataset()) == SkewSignCounts{});

  std::ostringstream out;
  WriteSkewSignCountsTsv(out, c);
  CHECK(out.str() ==
        "sign\tcount\npositive\t1\nnegative\t1\nzero\t1\nundefined\t1\n");
}

TEST_CASE("extreme usage proportions") {
  std::vector<Rating> r = {{"s1", "A", 1}, {"s1", "B", 3},
                           {"s2", "A", 4}, {"s2", "B", 2}};
  auto low = ExtremeUsageProportions(Dataset::FromRatings(r), Extreme::kLow);
  CHECK(low.at("A") == 0.5);
  CHECK(low.at("B") == 0.5);

  auto single = ExtremeUsageProportions(
      Dataset::FromRatings(std::vector<Rating>{{"s", "only", 3}}),
      Extreme::kHigh);
  CHECK(single.at("only") == 1.0);

  std::vector<Rating> tie = {{"s", "A", 2}, {"s", "B", 2}, {"s", "C", 4}};
  auto t = ExtremeUsageProportions(Dataset::FromRatings(tie), Extreme::kLow);
  CHECK(t.at("A") == 1.0);
  CHECK(t.at("B") == 1.0);
  CHECK(t.at("C") == 0.0);

  std::vector<Rating> ones = {{"s1", "A", 1}, {"s1", "B", 5}, {"s2", "A", 1},
                              {"s2", "B", 1}, {"s3", "A", 1}, {"s3", "B", 3}};
  for (Extreme which : {Extreme::kLow, Extreme::kHigh}) {
    auto p = ExtremeUsageProportions(Dataset::FromRatings(ones), which);
    for (const auto &[listener, v] : p) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    if (which == Extreme::kLow) CHECK(p.at("A") == 1.0);
  }
}

TEST_CASE("ingest accepts a small table") {
  std::istringstream in(
      "sample_id,listener_id,score\r\n"
      "a,L1,1\r\na,L2,2\r\na,L3,3\r\nb,L1,4\r\nb,L2,5\r\nb,L4,3\r\n");
  Dataset ds = IngestRatings(in, "r.csv");
  CHECK(ds.size() == 2);
  CHECK(ds.listeners().size() == 4);
  auto summary = Summarize(ds);
  CHECK(summary.ratings == 6);
  CHECK(summary.ratings_per_sample == std::map<std::size_t, std::size_t>{{3, 2}});

  std::ostringstream out;
  WriteRatings(out, ds);
  std::istringstream again(out.str());
  Dataset round = IngestRatings(again, "copy");
  CHECK(round.size() == ds.size());
  for (const auto &[id, s] : ds.samples()) {
    const auto &t = round.at(id);
    CHECK(std::vector<int>(s.scores().begin(), s.scores().end()) ==
          std::vector<int>(t.scores().begin(), t.scores().end()));
  }
}

TEST_CASE("ingest errors") {
  auto ingest = [](const std::string &text) {
    std::istringstream in(text);
    return IngestRatings(in, "r.csv");
  };
  const std::string header = "sample_id,listener_id,score\n";
  CHECK(MessageOf([&] { ingest(header + "a,L1,3\na,L2,6\n"); })
            .find("row 3") != std::string::npos);
  CHECK(CodeOf([&] { ingest(header + "a,L1,3\na,L2,6\n"); }) ==
        ErrorCode::kRange);
  CHECK(CodeOf([&] { ingest(header + "a,L1,x\n"); }) == ErrorCode::kParse);
  CHECK(CodeOf([&] { ingest(header + "a,L1,2.5\n"); }) == ErrorCode::kParse);
  CHECK(MessageOf([&] { ingest(header + "a,L1,3\na,L1,4\n"); })
            .find("duplicate") != std::string::npos);
  CHECK(CodeOf([&] { ingest(""); }) == ErrorCode::kParse);
  CHECK(CodeOf([&] { ingest(header); }) == ErrorCode::kParse);
  CHECK(CodeOf([&] { ingest("sample,listener,score\na,L1,3\n"); }) ==
        ErrorCode::kParse);
}

TEST_CASE("repval batch and spec parsing") {
  auto ds = FromScoreLists({{2, 4, 4, 5}, {1, 3}});
  auto mos = RepValBatch(ds, RepValSpec::MeanOpinion());
  CHECK(mos.at("s0") == 3.75);
  CHECK(mos.at("s1") == 2.0);
  const std::string msg =
      MessageOf([&] { RepValBatch(ds, RepValSpec::NLow(3)); });
  CHECK(msg.find("s1") != std::string::npos);
  CHECK(msg.find("s0") == std::string::npos);

  auto eight = FromScoreLists({{1, 2, 2, 3, 4, 4, 5, 5}, {5, 1, 1, 1, 2, 3, 3, 4}});
  auto med = RepValBatch(eight, RepValSpec::Central(3, 3));
  CHECK(med.at("s0") == 3.5);
  CHECK(med.at("s1") == 2.5);

  CHECK(RepValSpec::Parse("n_low", 3, {}, {}) == RepValSpec::NLow(3));
  CHECK(RepValSpec::Parse("central", {}, 1, 2) == RepValSpec::Central(1, 2));
  CHECK(RepValSpec::Parse("mos", {}, {}, {}) == RepValSpec::MeanOpinion());
  CHECK(CodeOf([] { RepValSpec::Parse("n_low", {}, {}, {}); }) ==
        ErrorCode::kUsage);
  CHECK(CodeOf([] { RepValSpec::Parse("mos", 2, {}, {}); }) ==
        ErrorCode::kUsage);
  CHECK(CodeOf([] { RepValSpec::Parse("median", {}, {}, {}); }) ==
        ErrorCode::kUsage);

  std::ostringstream out;
  WriteRepValCsv(out, mos);
  CHECK(out.str() == "sample_id,value\ns0,3.750000\ns1,2.000000\n");
}

TEST_CASE("stats tsv marks undefined skewness as NA") {
  std::ostringstream out;
  WriteStatsTsv(out, FromScoreLists({{4, 4}}));
  CHECK(out.str().rfind("sample_id\tmean\tsample_std\tskewness\n", 0) == 0);
  CHECK(out.str().find("\tNA\n") != std::string::npos);
}

TEST_CASE("histogram binning") {
  const std::vector<double> v = {1.0, 1.2, 4.9};
  Histogram h = ComputeHistogram(v, 1.0, 1.0, 5.0);
  CHECK(h.counts == std::vector<std::size_t>{2, 0, 0, 1});
  CHECK(h.underflow == 0);
  CHECK(h.overflow == 0);

  const std::vector<double> edge = {5.0, 0.5};
  Histogram e = ComputeHistogram(edge, 1.0, 1.0, 5.0);
  CHECK(e.overflow == 1);
  CHECK(e.underflow == 1);
  CHECK(e.total() == 2);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 4.0);
  std::vector<double> many(100);
  for (double &x : many) x = u(rng);
  Histogram m = ComputeHistogram(many, 0.3, 0.0, 3.0);
  CHECK(m.total() == 100);
  for (std::size_t b = 0; b < m.counts.size(); ++b) {
    std::size_t expect = 0;
    for (double x : many) {
      if (x >= m.bin_start(b) && x < m.bin_start(b) + m.bin_width &&
          x < m.range_max)
        ++expect;
    }
    CHECK(m.counts[b] == expect);
  }

  const std::vector<double> bad = {1.0, std::nan("")};
  CHECK(CodeOf([&] { ComputeHistogram(bad, 1.0, 0.0, 2.0); }) ==
        ErrorCode::kRange);
  CHECK(CodeOf([&] { ComputeHistogram(v, 0.0, 0.0, 2.0); }) ==
        ErrorCode::kPrecondition);
  CHECK(CodeOf([&] { ComputeHistogram(v, 1.0, 2.0, 2.0); }) ==
        ErrorCode::kPrecondition);

  std::ostringstream out;
  WriteHistogramTsv(out, h);
  CHECK(out.str().rfind("bin_start\tcount\n", 0) == 0);
}

}  // namespace
}  // namespace sqalab
