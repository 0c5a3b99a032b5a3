// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#include "levels/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "fixtures.hpp"

using namespace levels;
using namespace levels::mc;

namespace {

constexpr double kPi = std::numbers::pi;

// Geometric oracles: chord lengths on the unit circle against the side of the
// inscribed equilateral triangle, sqrt(3).
bool parallel_chord_longer_than_side(double offset) { return 2.0 * std::sqrt(1.0 - offset * offset) > std::sqrt(3.0); }
bool endpoint_chord_longer_than_side(double theta) { return 2.0 * std::sin(theta / 2.0) > std::sqrt(3.0); }

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

std::uint64_t total_occurrences(const std::vector<FrequencyRecord>& records) {
  return std::accumulate(records.begin(), records.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const FrequencyRecord& r) { return acc + r.occurrences; });
}

}  // namespace

TEST(SimulateGroupTest, CoinConvergesWithinThreeSigma) {
  const auto records = simulate_group(fixtures::coin(), "comes_down", 1'000'000, 2024);
  ASSERT_EQ(2u, records.size());
  EXPECT_EQ("R_h", records[0].relation);
  // 3 sigma = 3 * sqrt(0.25 / 1e6)
  EXPECT_NEAR(0.5, records[0].relative, 0.0015);
  EXPECT_NEAR(0.5, records[1].relative, 0.0015);
  EXPECT_EQ(1'000'000u, total_occurrences(records));
}

TEST(SimulateGroupTest, SmallSamplesAreUnbalanced) {
  // Seven throws cannot split evenly over six faces.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto records = simulate_group(fixtures::dice(), "faces", 7, seed);
    bool deviates = false;
    for (const auto& r : records) deviates |= r.occurrences * 6 != r.trials;
    EXPECT_TRUE(deviates);
    EXPECT_EQ(7u, total_occurrences(records));
  }
}

TEST(SimulateGroupTest, SingleTrial) {
  const auto records = simulate_group(fixtures::dice(), "faces", 1, 5);
  EXPECT_EQ(1u, total_occurrences(records));
  int ones = 0;
  for (const auto& r : records) {
    EXPECT_LE(r.occurrences, 1u);
    ones += static_cast<int>(r.occurrences);
    EXPECT_GE(r.relative, 0.0);
    EXPECT_LE(r.relative, 1.0);
  }
  EXPECT_EQ(1, ones);
}

TEST(SimulateGroupTest, SkewedGroupAndZeroMass) {
  Structure s = complement_expand(fixtures::decision(), "decide");
  s = assign_probability(s, "decide_i", Probability::one());
  s = assign_probability(s, "not_decide_i", Probability::zero());
  const auto records = simulate_group(s, "decide", 100'000, 3);
  EXPECT_EQ(100'000u, records[0].occurrences);
  EXPECT_EQ(0u, records[1].occurrences);
}

TEST(SimulateGroupTest, Errors) {
  EXPECT_EQ(ErrorCode::UnnormalizedAlternatives,
            code_of([] { simulate_group(fixtures::dice(false), "faces", 10, 1); }));
  EXPECT_EQ(ErrorCode::NotFound, code_of([] { simulate_group(fixtures::dice(), "none", 10, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { simulate_group(fixtures::dice(), "faces", 0, 1); }));
}

TEST(SimulateGroupTest, WorkerCountDoesNotChangeResults) {
  const auto s = fixtures::dice();
  const auto one = simulate_group(s, "faces", 300'001, 77, Workers{1});
  EXPECT_EQ(one, simulate_group(s, "faces", 300'001, 77, Workers{3}));
  EXPECT_EQ(one, simulate_group(s, "faces", 300'001, 77, Workers{8}));
  EXPECT_EQ(one, simulate_group(s, "faces", 300'001, 77, Workers{0}));
  EXPECT_NE(one, simulate_group(s, "faces", 300'001, 78, Workers{1}));
}

TEST(BertrandTest, ParallelPredicateMatchesChordLength) {
  EXPECT_TRUE(parallel_chord_is_long(0.0));
  EXPECT_FALSE(parallel_chord_is_long(0.9));
  EXPECT_FALSE(parallel_chord_is_long(0.5));
  EXPECT_FALSE(parallel_chord_is_long(-0.5));
  for (double d : {0.0, 0.1, 0.49, 0.499999, 0.4999999999, 0.5000000001, 0.500001, 0.51, 0.9, 0.999999, 1.0}) {
    EXPECT_EQ(parallel_chord_longer_than_side(d), parallel_chord_is_long(d)) << d;
    EXPECT_EQ(parallel_chord_longer_than_side(-d), parallel_chord_is_long(-d)) << -d;
  }
  Xorshift64Star rng(11);
  for (int i = 0; i < 100'000; ++i) {
    const double d = draw_offset(rng);
    if (std::abs(std::abs(d) - 0.5) < 1e-12) continue;
    ASSERT_EQ(parallel_chord_longer_than_side(d), parallel_chord_is_long(d)) << d;
  }
}

TEST(BertrandTest, EndpointPredicateMatchesChordLength) {
  EXPECT_TRUE(endpoint_chord_is_long(kPi));
  EXPECT_FALSE(endpoint_chord_is_long(0.1));
  EXPECT_FALSE(endpoint_chord_is_long(2.0 * kPi / 3.0));
  EXPECT_FALSE(endpoint_chord_is_long(4.0 * kPi / 3.0));
  for (double eps : {1e-9, 1e-6, 1e-3}) {
    for (double edge : {2.0 * kPi / 3.0, 4.0 * kPi / 3.0}) {
      EXPECT_EQ(endpoint_chord_longer_than_side(edge - eps), endpoint_chord_is_long(edge - eps));
      EXPECT_EQ(endpoint_chord_longer_than_side(edge + eps), endpoint_chord_is_long(edge + eps));
    }
  }
  Xorshift64Star rng(12);
  for (int i = 0; i < 100'000; ++i) {
    const double theta = draw_angle(rng);
    if (std::abs(theta - 2.0 * kPi / 3.0) < 1e-12 || std::abs(theta - 4.0 * kPi / 3.0) < 1e-12) continue;
    ASSERT_EQ(endpoint_chord_longer_than_side(theta), endpoint_chord_is_long(theta)) << theta;
  }
}

TEST(BertrandTest, ParallelEstimate) {
  const auto r = bertrand_parallel(1'000'000, 42);
  EXPECT_EQ("R_1", r.relation);
  EXPECT_NEAR(0.5, r.relative, 0.0015);
}

TEST(BertrandTest, EndpointEstimate) {
  const auto r = bertrand_endpoint(1'000'000, 42);
  EXPECT_EQ("R_2", r.relation);
  // 3 sigma = 3 * sqrt((1/3)(2/3) / 1e6) ~ 0.00141
  EXPECT_NEAR(1.0 / 3.0, r.relative, 0.0015);
}

TEST(BertrandTest, DynamicsDisagree) {
  const double gap = bertrand_parallel(1'000'000, 42).relative - bertrand_endpoint(1'000'000, 42).relative;
  EXPECT_NEAR(1.0 / 6.0, gap, 0.003);
  EXPECT_GT(gap, 0.1);
}

TEST(BertrandTest, SingleTrial) {
  // Seed 24 draws offset d ~ 0.0059 on its first chord.
  EXPECT_EQ(1.0, bertrand_parallel(1, 24).relative);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double f = bertrand_endpoint(1, seed).relative;
    EXPECT_TRUE(f == 0.0 || f == 1.0);
  }
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { bertrand_parallel(0, 1); }));
}

TEST(BertrandTest, DeterministicAcrossWorkers) {
  const auto a = bertrand_parallel(500'000, 9, Workers{1});
  EXPECT_EQ(a, bertrand_parallel(500'000, 9, Workers{4}));
  const auto b = bertrand_endpoint(500'000, 9, Workers{1});
  EXPECT_EQ(b, bertrand_endpoint(500'000, 9, Workers{7}));
}

TEST(ConvergenceTest, RatioFollowsSquareRootLaw) {
  const auto report = convergence_study(Probability(1, 2), {400, 10000}, 100, 2718);
  const double ratio = report.mean_abs_deviation.at(400) / report.mean_abs_deviation.at(10000);
  // sqrt(10000 / 400) = 5
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 7.0);
  EXPECT_GT(report.mean_abs_deviation.at(10000), 0.0);
}

TEST(ConvergenceTest, DeviationsShrink) {
  const std::vector<std::uint64_t> sizes{100, 1000, 10000};
  const auto report = convergence_study(Probability(1, 2), sizes, 50, 31);
  int inversions = 0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (report.mean_abs_deviation.at(sizes[i]) >= report.mean_abs_deviation.at(sizes[i - 1])) ++inversions;
  }
  EXPECT_LE(inversions, 1);
  EXPECT_LT(report.mean_abs_deviation.at(10000), report.mean_abs_deviation.at(100));
}

TEST(ConvergenceTest, NonDyadicProbability) {
  const auto report = convergence_study(Probability(1, 3), {900}, 40, 5);
  // Expected |F - p| for s = 900 is about sqrt(2/pi) * sqrt(2/9/900) ~ 0.0125.
  EXPECT_GT(report.mean_abs_deviation.at(900), 0.005);
  EXPECT_LT(report.mean_abs_deviation.at(900), 0.025);
}

TEST(ConvergenceTest, Errors) {
  EXPECT_EQ(ErrorCode::DegenerateProbability, code_of([] { convergence_study(Probability::one(), {10}, 30, 1); }));
  EXPECT_EQ(ErrorCode::DegenerateProbability, code_of([] { convergence_study(Probability::zero(), {10}, 30, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { convergence_study(Probability(1, 2), {10}, 29, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { convergence_study(Probability(1, 2), {100, 10}, 30, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { convergence_study(Probability(1, 2), {10, 10}, 30, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { convergence_study(Probability(1, 2), {}, 30, 1); }));
  EXPECT_EQ(ErrorCode::InvalidArgument, code_of([] { convergence_study(Probability(1, 2), {0, 10}, 30, 1); }));
}

TEST(ConvergenceTest, DeterministicAcrossWorkers) {
  const auto a = convergence_study(Probability(1, 2), {100, 1000}, 40, 8, Workers{1});
  const auto b = convergence_study(Probability(1, 2), {100, 1000}, 40, 8, Workers{5});
  EXPECT_EQ(a.mean_abs_deviation, b.mean_abs_deviation);
}

TEST(ConvergenceTest, SizeResultsIndependentOfOtherSizes) {
  const auto a = convergence_study(Probability(1, 2), {100, 1000}, 30, 8);
  const auto b = convergence_study(Probability(1, 2), {1000}, 30, 8);
  EXPECT_EQ(a.mean_abs_deviation.at(1000), b.mean_abs_deviation.at(1000));
}
