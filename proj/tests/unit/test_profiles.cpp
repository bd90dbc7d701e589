// Copyright 2026 The vqebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "vqebench/profiles.hpp"
#include "vqebench/rng.hpp"

namespace vqeb {
namespace {

RunRecord synthetic(std::size_t n, double initial, double optimum, std::vector<double> tail) {
  RunRecord r;
  r.num_params = n;
  r.initial_value = initial;
  r.optimum = optimum;
  r.energies.push_back(initial);
  r.energies.insert(r.energies.end(), tail.begin(), tail.end());
  r.prob_optimal.assign(r.energies.size(), 0.0);
  return r;
}

TEST(Convergence, SingleRecordStepsAtGridFive) {
  // n = 1: evaluation 10 becomes available at t = 5.
  std::vector<double> tail(8, 9.0);
  tail.push_back(0.5);
  tail.resize(29, 0.5);
  const auto r = synthetic(1, 10.0, 0.0, tail);
  EXPECT_DOUBLE_EQ(convergence_time(r, 0.1), 5.0);
  const std::vector<RunRecord> rs{r};
  const auto c = convergence_profile(rs, 0.1);
  ASSERT_EQ(c.grid.size(), 101U);
  for (int t = 0; t <= 100; ++t) EXPECT_EQ(c.fraction[t], t >= 5 ? 1.0 : 0.0) << t;
  EXPECT_EQ(c.instances, 1U);
  EXPECT_EQ(c.lucky_starts, 0U);
}

TEST(Convergence, ThresholdIsInclusive) {
  // Exactly 75% of the gap closed counts at tau = 0.25.
  const auto r = synthetic(3, 8.0, 0.0, {4.0, 2.0});
  EXPECT_DOUBLE_EQ(convergence_time(r, 0.25), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(convergence_time(r, 0.5), 2.0 / 4.0);
  EXPECT_TRUE(std::isinf(convergence_time(r, 0.2)));
}

TEST(Convergence, LuckyStartCountsAtZero) {
  const std::vector<RunRecord> rs{synthetic(4, -3.0, -3.0, {-1.0, 2.0})};
  EXPECT_DOUBLE_EQ(convergence_time(rs[0], 0.01), 0.0);
  const auto c = convergence_profile(rs, 0.01);
  for (double f : c.fraction) EXPECT_EQ(f, 1.0);
  EXPECT_EQ(c.lucky_starts, 1U);
}

TEST(Convergence, MatchesDirectCdfOnRandomTraces) {
  Rng rng(77);
  std::vector<RunRecord> rs;
  std::vector<double> times;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 6));
    const std::size_t len = 1 + static_cast<std::size_t>(rng.uniform_int(0, 300));
    std::vector<double> tail;
    for (std::size_t k = 1; k < len; ++k) tail.push_back(rng.uniform(-1.0, 1.0));
    rs.push_back(synthetic(n, 1.0, -1.0, tail));
    // Independent scan in normalized time.
    double best = 1.0;
    double when = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= rs.back().energies.size(); ++k) {
      best = std::min(best, rs.back().energies[k - 1]);
      if (1.0 - best >= (1.0 - 0.1) * 2.0) {
        when = static_cast<double>(k) / static_cast<double>(n + 1);
        break;
      }
    }
    times.push_back(when);
  }
  const auto c = convergence_profile(rs, 0.1);
  for (int t = 0; t <= 100; ++t) {
    double hits = 0.0;
    for (double w : times) hits += w <= t ? 1.0 : 0.0;
    EXPECT_DOUBLE_EQ(c.fraction[t], hits / 20.0) << t;
  }
}

TEST(Convergence, NestedToleranceAndMonotone) {
  Rng rng(5);
  std::vector<RunRecord> rs;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> tail;
    double level = 4.0;
    for (int k = 0; k < 200; ++k) {
      level -= rng.uniform(0.0, 0.05);
      tail.push_back(level + rng.uniform(0.0, 0.5));
    }
    rs.push_back(synthetic(3, 4.0, -1.0, tail));
  }
  const auto loose = convergence_profile(rs, 0.3);
  const auto mid = convergence_profile(rs, 0.1);
  const auto tight = convergence_profile(rs, 0.01);
  for (std::size_t i = 0; i < loose.grid.size(); ++i) {
    EXPECT_GE(loose.fraction[i], mid.fraction[i]);
    EXPECT_GE(mid.fraction[i], tight.fraction[i]);
    if (i > 0) {
      EXPECT_GE(mid.fraction[i], mid.fraction[i - 1]);
    }
  }
}

TEST(Convergence, EmptyRecordSetThrows) {
  const std::vector<RunRecord> none;
  EXPECT_THROW(convergence_profile(none, 0.1), std::invalid_argument);
  EXPECT_THROW(sampling_profile(none, 0.5), std::invalid_argument);
  EXPECT_THROW(approx_ratio_profile(none), std::invalid_argument);
}

TEST(Sampling, FirstCrossingCountsEvenIfLaterLost) {
  auto r = synthetic(1, 2.0, 0.0, std::vector<double>(19, 1.0));
  r.prob_optimal.assign(20, 0.1);
  r.prob_optimal[5] = 0.9;  // evaluation 6, available at t = 3
  const std::vector<RunRecord> rs{r};
  EXPECT_DOUBLE_EQ(sampling_time(r, 0.5), 3.0);
  const auto c = sampling_profile(rs, 0.5);
  for (int t = 0; t <= 100; ++t) EXPECT_EQ(c.fraction[t], t >= 3 ? 1.0 : 0.0);
  const auto all = sampling_profile(rs, 0.0);
  for (double f : all.fraction) EXPECT_EQ(f, 1.0);
  EXPECT_TRUE(std::isinf(sampling_time(r, 0.95)));
}

TEST(Ratio, Examples) {
  const std::vector<RunRecord> exact{synthetic(1, -10.0, -10.0, {})};
  EXPECT_DOUBLE_EQ(*approx_ratio_profile(exact, 3).geometric_mean[2], 1.0);

  const std::vector<RunRecord> one{synthetic(1, -8.0, -10.0, {})};
  EXPECT_DOUBLE_EQ(*approx_ratio_profile(one, 3).geometric_mean[0], 1.25);

  const std::vector<RunRecord> two{synthetic(1, 2.0, 2.0, {}), synthetic(1, 8.0, 2.0, {})};
  const auto c = approx_ratio_profile(two, 2);
  EXPECT_NEAR(*c.geometric_mean[1], 2.0, 1e-12);
  EXPECT_EQ(c.included[1], 2U);
}

TEST(Ratio, ImprovesAlongTrace) {
  const std::vector<RunRecord> rs{synthetic(1, -2.0, -10.0, {-3.0, -5.0, -4.0})};
  const auto c = approx_ratio_profile(rs, 3);
  EXPECT_DOUBLE_EQ(*c.geometric_mean[0], 5.0);
  EXPECT_DOUBLE_EQ(*c.geometric_mean[1], 10.0 / 3.0);
  EXPECT_DOUBLE_EQ(*c.geometric_mean[2], 2.0);
  EXPECT_DOUBLE_EQ(*c.geometric_mean[3], 2.0);
}

TEST(Ratio, UndefinedPointsAreExcludedOrAbsent) {
  // Best-so-far on the wrong side of zero has no defined ratio.
  const std::vector<RunRecord> rs{synthetic(1, 3.0, -10.0, {1.0, -5.0}),
                                  synthetic(1, 1.0, 0.0, {})};
  const auto c = approx_ratio_profile(rs, 2);
  EXPECT_FALSE(c.geometric_mean[0]);
  EXPECT_EQ(c.excluded[0], 2U);
  EXPECT_FALSE(c.geometric_mean[1]);
  ASSERT_TRUE(c.geometric_mean[2]);
  EXPECT_DOUBLE_EQ(*c.geometric_mean[2], 2.0);
  EXPECT_EQ(c.included[2], 1U);
  EXPECT_EQ(c.excluded[2], 1U);
}

TEST(Difference, SubtractsPointwise) {
  const std::vector<RunRecord> fast{synthetic(1, 1.0, 0.0, {0.0})};
  const std::vector<RunRecord> slow{synthetic(1, 1.0, 0.0, {1.0, 1.0, 1.0, 0.0})};
  const auto d = profile_difference(convergence_profile(fast, 0.1, 4), convergence_profile(slow, 0.1, 4));
  EXPECT_EQ(d, (std::vector<double>{0.0, 1.0, 1.0, 0.0, 0.0}));
  EXPECT_THROW(profile_difference(convergence_profile(fast, 0.1, 4), convergence_profile(slow, 0.1, 5)),
               std::invalid_argument);
}

TEST(Labels, Grouping) {
  RunRecord r;
  r.problem_class = ProblemClass::MaxCut;
  r.num_qubits = 6;
  r.algorithm = Algorithm::LinearModelTrust;
  EXPECT_EQ(group_label(r, GroupBy::Optimizer), "cobyla_2L-CZ");
  r.form.entangler = Entangler::TGate;
  EXPECT_EQ(group_label(r, GroupBy::OptimizerAndClass), "maxcut_cobyla_2L-T");
}

TEST(Csv, ProfileAndRatioLayout) {
  const std::vector<RunRecord> rs{synthetic(1, 1.0, 0.0, {0.5, 0.0})};
  std::ostringstream os;
  write_profile_csv(os, {"a", "b"}, {convergence_profile(rs, 0.1, 2), convergence_profile(rs, 0.6, 2)});
  EXPECT_EQ(os.str(),
            "normalized_iter,a,b\n"
            "0,0.000000,0.000000\n"
            "1,0.000000,1.000000\n"
            "2,1.000000,1.000000\n");

  const std::vector<RunRecord> odd{synthetic(1, 1.0, -1.0, {-0.5})};
  std::ostringstream ro;
  write_ratio_csv(ro, {"x"}, {approx_ratio_profile(odd, 1)});
  EXPECT_EQ(ro.str(),
            "normalized_iter,x,x_excluded\n"
            "0,,1\n"
            "1,2.000000,0\n");
}

}  // namespace
}  // namespace vqeb
