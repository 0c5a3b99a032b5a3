// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Seeded simulation of relationships: categorical sampling of alternative
/// groups, the two chord dynamics, and the frequency-convergence study.
///
/// Trials are cut into fixed blocks of kBlockTrials; block b draws from the
/// stream derive_seed(seed, b). Results depend only on (parameters, seed),
/// never on how many workers run the blocks.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "levels/error.hpp"
#include "levels/probability.hpp"
#include "levels/random.hpp"
#include "levels/rational.hpp"
#include "levels/structure.hpp"

namespace levels::mc {

inline constexpr std::uint64_t kBlockTrials = 1u << 16;

/// Worker count for a run. Zero means one per hardware thread.
struct Workers {
  unsigned count = 1;

  unsigned resolved() const {
    if (count != 0) return count;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// g_s occurrences of a relationship in s trials, and F_s = g_s / s.
struct FrequencyRecord {
  std::string relation;
  std::uint64_t trials = 0;
  std::uint64_t occurrences = 0;
  double relative = 0.0;

  friend bool operator==(const FrequencyRecord&, const FrequencyRecord&) = default;
};

inline FrequencyRecord make_record(std::string relation, std::uint64_t trials, std::uint64_t occurrences) {
  return FrequencyRecord{std::move(relation), trials, occurrences,
                         static_cast<double>(occurrences) / static_cast<double>(trials)};
}

/// Runs task(i) for i in [0, n) on up to `workers` threads.
template <class Task>
void parallel_for(std::uint64_t n, Workers workers, Task&& task) {
  const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(workers.resolved(), n));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < n; i = next++) task(i);
    });
  }
}

namespace detail {

/// Tallies `categories` counters over all trials; `draw(rng)` returns the
/// category of one trial.
template <class Draw>
std::vector<std::uint64_t> tally(std::uint64_t trials, std::uint64_t seed, std::size_t categories, Workers workers,
                                 Draw draw) {
  const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::vector<std::uint64_t>> per_block(blocks, std::vector<std::uint64_t>(categories, 0));
  parallel_for(blocks, workers, [&](std::uint64_t b) {
    Xorshift64Star rng(derive_seed(seed, b));
    const std::uint64_t count = std::min(kBlockTrials, trials - b * kBlockTrials);
    auto& counts = per_block[b];
    for (std::uint64_t i = 0; i < count; ++i) ++counts[draw(rng)];
  });
  std::vector<std::uint64_t> total(categories, 0);
  for (const auto& counts : per_block) {
    for (std::size_t c = 0; c < categories; ++c) total[c] += counts[c];
  }
  return total;
}

inline void require_trials(std::uint64_t trials) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
}

}  // namespace detail

/// Draws `trials` categorical samples from the members of alternative group
/// `group`, one record per member in declaration order.
inline std::vector<FrequencyRecord> simulate_group(const Structure& s, std::string_view group, std::uint64_t trials,
                                                   std::uint64_t seed, Workers workers = {}) {
  detail::require_trials(trials);
  const auto members = s.group_members(group);
  if (members.empty()) throw Error(ErrorCode::NotFound, "no alternative group '" + std::string(group) + "'");

  // thresholds[i] = ceil(cumulative_i * 2^53): a draw k falls in the first
  // category whose threshold exceeds it.
  std::vector<std::uint64_t> thresholds;
  Rational cumulative;
  for (const Element* m : members) {
    const auto p = probability_of(s, m->id);
    if (!p) {
      throw Error(ErrorCode::UnnormalizedAlternatives,
                  "'" + m->id + "' in group '" + std::string(group) + "' has no probability");
    }
    cumulative = cumulative + p->value();
    using U = unsigned __int128;
    const U scaled = static_cast<U>(cumulative.numerator()) << 53;
    thresholds.push_back(static_cast<std::uint64_t>((scaled + cumulative.denominator() - 1) / cumulative.denominator()));
  }
  if (!within_nano(cumulative, Rational::integer(1))) {
    throw Error(ErrorCode::UnnormalizedAlternatives,
                "group '" + std::string(group) + "' has mass " + cumulative.to_string() + ", expected 1");
  }

  const std::size_t last = members.size() - 1;
  const auto counts = detail::tally(trials, seed, members.size(), workers, [&](Xorshift64Star& rng) {
    const std::uint64_t k = rng.next53();
    for (std::size_t i = 0; i < last; ++i) {
      if (k < thresholds[i]) return i;
    }
    return last;
  });

  std::vector<FrequencyRecord> out;
  for (std::size_t i = 0; i < members.size(); ++i) out.push_back(make_record(members[i]->id, trials, counts[i]));
  return out;
}

/// Chord falling parallel to a side at signed offset d from the centre of a
/// unit circle. Longer than the inscribed triangle's side iff |d| < 1/2.
inline bool parallel_chord_is_long(double offset) { return std::abs(offset) < 0.5; }

/// Chord from the fixed vertex A to the point at angle theta (from A). Longer
/// than the triangle's side iff the point lies strictly inside arc BC.
inline bool endpoint_chord_is_long(double theta) {
  constexpr double kPi = std::numbers::pi;
  return theta > 2.0 * kPi / 3.0 && theta < 4.0 * kPi / 3.0;
}

/// Offset drawn uniformly on [-1, 1).
inline double draw_offset(Xorshift64Star& rng) { return 2.0 * rng.uniform() - 1.0; }

/// Angle drawn uniformly on [0, 2 pi).
inline double draw_angle(Xorshift64Star& rng) { return 2.0 * std::numbers::pi * rng.uniform(); }

inline FrequencyRecord bertrand_parallel(std::uint64_t trials, std::uint64_t seed, Workers workers = {}) {
  detail::require_trials(trials);
  const auto counts = detail::tally(trials, seed, 2, workers, [](Xorshift64Star& rng) -> std::size_t {
    return parallel_chord_is_long(draw_offset(rng)) ? 1 : 0;
  });
  return make_record("R_1", trials, counts[1]);
}

inline FrequencyRecord bertrand_endpoint(std::uint64_t trials, std::uint64_t seed, Workers workers = {}) {
  detail::require_trials(trials);
  const auto counts = detail::tally(trials, seed, 2, workers, [](Xorshift64Star& rng) -> std::size_t {
    return endpoint_chord_is_long(draw_angle(rng)) ? 1 : 0;
  });
  return make_record("R_2", trials, counts[1]);
}

struct ConvergenceReport {
  std::vector<std::uint64_t> sample_sizes;
  std::uint64_t replications = 0;
  /// Mean over replications of |F_s - p|, keyed by sample size.
  std::map<std::uint64_t, double> mean_abs_deviation;
};

/// For every size s, `replications` Bernoulli(p) samples of size s. Sample
/// (s, r) draws from stream derive_seed(derive_seed(seed, s), r).
inline ConvergenceReport convergence_study(const Probability& p, const std::vector<std::uint64_t>& sample_sizes,
                                           std::uint64_t replications, std::uint64_t seed, Workers workers = {}) {
  if (p.is_impossible() || p.is_certain()) {
    throw Error(ErrorCode::DegenerateProbability, "P = " + p.to_string() + " leaves no fluctuation to study");
  }
  if (replications < 30) throw Error(ErrorCode::InvalidArgument, "at least 30 replications are required");
  if (sample_sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no sample sizes");
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] == 0) throw Error(ErrorCode::InvalidArgument, "sample sizes must be positive");
    if (i > 0 && sample_sizes[i] <= sample_sizes[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "sample sizes must be strictly ascending");
    }
  }

  const std::uint64_t tasks = sample_sizes.size() * replications;
  std::vector<double> deviation(tasks, 0.0);
  const Rational& mass = p.value();
  parallel_for(tasks, workers, [&](std::uint64_t t) {
    const std::uint64_t size = sample_sizes[t / replications];
    Xorshift64Star rng(derive_seed(derive_seed(seed, size), t % replications));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < size; ++i) hits += rng.bernoulli(mass) ? 1 : 0;
    // |hits/size - n/d| = |hits*d - n*size| / (size*d)
    using U = unsigned __int128;
    const U lhs = static_cast<U>(hits) * mass.denominator();
    const U rhs = static_cast<U>(mass.numerator()) * size;
    const U diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    deviation[t] = static_cast<double>(diff) / (static_cast<double>(size) * static_cast<double>(mass.denominator()));
  });

  ConvergenceReport report;
  report.sample_sizes = sample_sizes;
  report.replications = replications;
  for (std::size_t i = 0; i < sample_sizes.size(); ++i) {
    double sum = 0.0;
    for (std::uint64_t r = 0; r < replications; ++r) sum += deviation[i * replications + r];
    report.mean_abs_deviation[sample_sizes[i]] = sum / static_cast<double>(replications);
  }
  return report;
}

}  // namespace levels::mc
