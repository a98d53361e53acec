// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "feederlab/intervention.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "feederlab/error.hpp"
#include "condition_oracle.hpp"
#include "test_support.hpp"

namespace feederlab {
namespace {

using testing::oracle_g2_rank;
using testing::pareto_preset;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  double c_hat;
  std::array<double, 2> mm;
  std::array<double, 2> pauc;
};

// Reference optimal intervals for alpha 3, beta 0.8, p 0.25 (4 d.p.).
constexpr std::array<Row, 8> kReference = {{
    {0.10, {1.2252, 1.3111}, {1.2187, 1.3026}},
    {0.20, {1.2022, 1.3861}, {1.1903, 1.3653}},
    {0.30, {1.1802, 1.4803}, {1.1644, 1.4421}},
    {0.40, {1.1461, 1.5584}, {1.1346, 1.5203}},
    {0.50, {1.1156, 1.6560}, {1.1070, 1.6155}},
    {0.60, {1.0881, 1.7839}, {1.0819, 1.7403}},
    {0.70, {1.0632, 1.9635}, {1.0589, 1.9154}},
    {0.80, {1.0404, 2.2476}, {1.0377, 2.1926}},
}};

// Post-intervention PAUC at the PAUC-optimal interval, from scipy quadrature.
constexpr std::array<double, 8> kOptimalPauc = {
    0.153160956, 0.124351024, 0.096570204, 0.070963317,
    0.049280081, 0.031539252, 0.017740829, 0.007884813};

TEST(Intervention, EmptyIntervalKeepsBiasedRanks) {
  const auto m = pareto_preset();
  for (double z : {1.0, 1.1, 1.3, 2.0, 7.0}) {
    for (Group g : {Group::kG1, Group::kG2}) {
      EXPECT_EQ(rank_post_voucher(m, DebiasInterval::none(), z, g), rank_biased(m, z, g));
    }
  }
}

TEST(Intervention, PostVoucherRankMatchesTranscription) {
  const auto m = pareto_preset();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    double z1 = u(rng);
    double z2 = u(rng);
    if (z1 > z2) std::swap(z1, z2);
    for (int i = 0; i < 200; ++i) {
      const double z = 1.0 + 4.0 * i / 199.0;
      ASSERT_NEAR(rank_post_voucher(m, {z1, z2}, z, Group::kG2),
                  oracle_g2_rank(0.25, 0.8, 3.0, z1, z2, z), 1e-12);
    }
  }
}

TEST(Intervention, DisplacementAtOptimalLowerEndpoint) {
  const auto m = pareto_preset();
  const DebiasInterval t{1.2252, 1.3111};
  // The endpoint itself is debiased; the worst case is the student just below.
  const double z = std::nextafter(1.2252, 0.0);
  const double d = rank_post_voucher(m, t, z, Group::kG2) - rank_unbiased(m, z);
  EXPECT_NEAR(d, 0.3422, 1e-3);
}

TEST(Intervention, FullDebiasingRestoresUnbiasedRanks) {
  const auto m = pareto_preset();
  const DebiasInterval all{1.0, kInf};
  for (double z : {1.0, 1.2, 1.5, 3.0}) {
    EXPECT_NEAR(rank_post_voucher(m, all, z, Group::kG2), rank_unbiased(m, z), 1e-15);
    EXPECT_NEAR(rank_post_voucher(m, all, z, Group::kG1), rank_unbiased(m, z), 1e-15);
  }
}

TEST(Intervention, G1NeverPushedBelowUnbiasedRank) {
  const auto m = pareto_preset();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    double z1 = u(rng);
    double z2 = u(rng);
    if (z1 > z2) std::swap(z1, z2);
    for (int i = 0; i < 200; ++i) {
      const double z = 1.0 + 4.0 * i / 199.0;
      const double post = rank_post_voucher(m, {z1, z2}, z, Group::kG1);
      ASSERT_GE(post, rank_biased(m, z, Group::kG1) - 1e-15);
      ASSERT_LE(post, rank_unbiased(m, z) + 1e-15);
    }
  }
}

TEST(Intervention, BudgetOfInterval) {
  const auto m = pareto_preset();
  EXPECT_NEAR(budget_of_interval(m, {1.2252, 1.3111}), 0.10002147986639315, 1e-14);
  EXPECT_EQ(budget_of_interval(m, DebiasInterval::none()), 0.0);
  EXPECT_EQ(budget_of_interval(m, {1.0, kInf}), 1.0);
}

TEST(Intervention, MostMistreatedExamples) {
  const auto m = pareto_preset();
  EXPECT_NEAR(mistreatment_max(m, DebiasInterval::none()), 0.366, 1e-15);
  EXPECT_NEAR(mistreatment_max_numeric(m, DebiasInterval::none()), 0.366, 1e-9);
  const OptimalInterval t = optimal_interval_mm(m, 0.4);
  EXPECT_NEAR(mistreatment_max(m, t.interval), 0.251834862385, 1e-9);
  EXPECT_EQ(mistreatment_max(testing::unbiased_pareto(), {1.2, 1.4}), 0.0);
}

TEST(Intervention, PaucExamples) {
  const auto m = pareto_preset();
  EXPECT_NEAR(pauc(m, DebiasInterval::none()), 0.183, 1e-12);
  EXPECT_NEAR(pauc_quadrature(m, DebiasInterval::none()), 0.183, 1e-9);
  const OptimalInterval t = optimal_interval_pauc(m, 0.4);
  EXPECT_NEAR(pauc(m, t.interval), 0.070963317, 1e-8);
  EXPECT_EQ(pauc(m, optimal_interval_pauc(m, 0.0).interval), pauc(m, DebiasInterval::none()));
}

TEST(Intervention, ClosedFormsAgreeWithNumericRoutes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 3.5);
  for (const auto& m : {pareto_preset(), MarketParams::make(0.6, 0.6, Distribution::pareto(2.0))}) {
    for (int trial = 0; trial < 200; ++trial) {
      double z1 = u(rng);
      double z2 = u(rng);
      if (z1 > z2) std::swap(z1, z2);
      const DebiasInterval t{z1, z2};
      const double mm = mistreatment_max(m, t);
      const double sigma = pauc_closed_form(m, t);
      ASSERT_NEAR(mm, mistreatment_max_numeric(m, t), 1e-9) << z1 << " " << z2;
      ASSERT_NEAR(sigma, pauc_quadrature(m, t), 1e-8) << z1 << " " << z2;
      ASSERT_GE(sigma, 0.0);
      ASSERT_LE(sigma, mm);
    }
  }
}

TEST(Intervention, NormalLawUsesNumericRoutes) {
  const auto m = testing::sat_preset();
  EXPECT_NEAR(pauc(m, DebiasInterval::none()), 0.14128008537605413, 1e-8);
  EXPECT_NEAR(mistreatment_max(m, DebiasInterval::none()), 0.21443042718289787, 1e-8);
  EXPECT_NEAR(pauc(m, {1700.0940, 2230.0247}), 0.083230375, 1e-7);
  EXPECT_THROW(classify_case(m, {1500, 1600}), DomainError);
  EXPECT_THROW(improvement_condition(m, {1500, 1600}), DomainError);
  EXPECT_THROW(pauc_closed_form(m, {1500, 1600}), DomainError);
}

TEST(Intervention, CaseExamples) {
  const auto m = pareto_preset();
  EXPECT_EQ(classify_case(m, {1.3, 1.5}), ParetoCase::kII1);
  EXPECT_EQ(improvement_condition(m, {1.3, 1.5}), Verdict::kImproves);
  EXPECT_EQ(classify_case(m, {1.05, 1.2}), ParetoCase::kII3);
  EXPECT_EQ(improvement_condition(m, {1.05, 1.2}), Verdict::kCaseII3NeverImproves);
  EXPECT_EQ(classify_case(m, {1.3, 2.0}), ParetoCase::kI1);
  EXPECT_EQ(classify_case(m, {1.1, 1.5}), ParetoCase::kI2);
  EXPECT_EQ(classify_case(m, {1.2, 1.3}), ParetoCase::kII2);
  EXPECT_EQ(improvement_condition(testing::unbiased_pareto(), {1.3, 1.5}),
            Verdict::kNoStrictChange);
}

TEST(Intervention, ConditionTableMatchesBruteForce) {
  std::array<int, 5> per_case{};
  int improves = 0;
  int worsens = 0;
  for (const auto& trial : testing::condition_trials(2026)) {
    ++per_case[static_cast<std::size_t>(trial.wanted)];
    double margin = 0.0;
    const int truth = testing::brute_force_compare(trial.market, trial.interval, &margin);
    if (truth == 0) continue;
    (truth > 0 ? improves : worsens) += 1;
    const Verdict v = improvement_condition(trial.market, trial.interval);
    EXPECT_TRUE(testing::verdict_agrees(v, truth))
        << verdict_name(v) << " [" << trial.interval.z1 << ", " << trial.interval.z2
        << "] p=" << trial.market.p << " margin " << margin;
  }
  for (int c : per_case) EXPECT_EQ(c, 40);
  EXPECT_GT(improves + worsens, 180);
  EXPECT_GT(improves, 20);
  EXPECT_GT(worsens, 20);
}

TEST(Intervention, ReferenceOptimalIntervals) {
  const auto m = pareto_preset();
  for (const Row& row : kReference) {
    const OptimalInterval mm = optimal_interval_mm(m, row.c_hat);
    const OptimalInterval pa = optimal_interval_pauc(m, row.c_hat);
    EXPECT_TRUE(mm.precondition_ok);
    EXPECT_TRUE(pa.precondition_ok);
    EXPECT_NEAR(mm.interval.z1, row.mm[0], 5.01e-5) << row.c_hat;
    EXPECT_NEAR(mm.interval.z2, row.mm[1], 5.01e-5) << row.c_hat;
    EXPECT_NEAR(pa.interval.z1, row.pauc[0], 5.01e-5) << row.c_hat;
    EXPECT_NEAR(pa.interval.z2, row.pauc[1], 5.01e-5) << row.c_hat;
  }
}

TEST(Intervention, OptimalValues) {
  const auto m = pareto_preset();
  for (std::size_t i = 0; i < kReference.size(); ++i) {
    const double c = kReference[i].c_hat;
    const OptimalInterval pa = optimal_interval_pauc(m, c);
    EXPECT_NEAR(pa.value, kOptimalPauc[i], 1e-8) << c;
    EXPECT_NEAR(pauc_quadrature(m, pa.interval), kOptimalPauc[i], 1e-8) << c;
    const OptimalInterval mm = optimal_interval_mm(m, c);
    EXPECT_NEAR(mistreatment_max_numeric(m, mm.interval), mm.value, 1e-9) << c;
  }
  EXPECT_NEAR(optimal_interval_mm(m, 0.1).value, 0.3422, 1e-12);
}

TEST(Intervention, OptimalIntervalsSpendExactlyTheBudget) {
  const auto m = pareto_preset();
  for (const Row& row : kReference) {
    EXPECT_NEAR(budget_of_interval(m, optimal_interval_mm(m, row.c_hat).interval), row.c_hat, 1e-6);
    EXPECT_NEAR(budget_of_interval(m, optimal_interval_pauc(m, row.c_hat).interval), row.c_hat,
                1e-6);
  }
}

TEST(Intervention, MostMistreatedEqualizedAtEndpoints) {
  const auto m = pareto_preset();
  for (const Row& row : kReference) {
    const DebiasInterval t = optimal_interval_mm(m, row.c_hat).interval;
    const auto h = [&](double z) {
      return rank_post_voucher(m, t, z, Group::kG2) - rank_unbiased(m, z);
    };
    // Both sides are one-sided limits: just below z1 and just above z2.
    EXPECT_NEAR(h(std::nextafter(t.z1, 0.0)), h(std::nextafter(t.z2, kInf)), 1e-6)
        << row.c_hat;
  }
}

TEST(Intervention, OptimaImproveWithBudget) {
  const auto m = pareto_preset();
  double prev_mm = mistreatment_max(m, DebiasInterval::none());
  double prev_pauc = pauc(m, DebiasInterval::none());
  for (int i = 1; i <= 99; ++i) {
    const double c = i / 100.0;
    const double mm = optimal_interval_mm(m, c).value;
    const double pa = optimal_interval_pauc(m, c).value;
    ASSERT_LT(mm, prev_mm) << c;
    ASSERT_LT(pa, prev_pauc) << c;
    prev_mm = mm;
    prev_pauc = pa;
  }
}

TEST(Intervention, RegimeThresholdsJoinContinuously) {
  const auto m = pareto_preset();
  const double tm = mm_regime_threshold(m);
  const auto lo = optimal_interval_mm(m, tm - 1e-10);
  const auto hi = optimal_interval_mm(m, tm + 1e-10);
  EXPECT_NEAR(lo.interval.z1, hi.interval.z1, 1e-7);
  EXPECT_NEAR(lo.interval.z2, hi.interval.z2, 1e-7);
  const double tp = pauc_regime_threshold(m);
  const auto plo = optimal_interval_pauc(m, tp - 1e-10);
  const auto phi = optimal_interval_pauc(m, tp + 1e-10);
  EXPECT_NEAR(plo.interval.z1, phi.interval.z1, 1e-7);
  EXPECT_NEAR(plo.interval.z2, phi.interval.z2, 1e-7);
}

TEST(Intervention, ZeroBudgetIsTheStatusQuo) {
  const auto m = pareto_preset();
  const OptimalInterval mm = optimal_interval_mm(m, 0.0);
  EXPECT_TRUE(mm.interval.empty());
  EXPECT_NEAR(mm.value, 0.366, 1e-15);
  const OptimalInterval num = optimal_interval_numeric(m, 0.0, Measure::kPauc, 100);
  EXPECT_TRUE(num.interval.empty());
  EXPECT_NEAR(num.value, 0.183, 1e-9);
}

TEST(Intervention, PreconditionFlaggedOutsideAssumption) {
  const auto m = MarketParams::make(0.6, 0.8, Distribution::pareto(3.0));
  EXPECT_FALSE(optimal_interval_mm(m, 0.2).precondition_ok);
  EXPECT_FALSE(optimal_interval_pauc(m, 0.2).precondition_ok);
}

// The grid optimizer runs on the numeric routes only, so agreement with the
// closed forms is a genuine cross-check. One cell is one grid step in ccdf.
TEST(Intervention, GridOptimizerWithinOneCell) {
  const auto m = pareto_preset();
  constexpr int kGrid = 2000;
  for (const Row& row : kReference) {
    const double cell = (1.0 - 2e-4 - row.c_hat) / (kGrid - 1);
    for (Measure measure : {Measure::kMm, Measure::kPauc}) {
      const OptimalInterval cf = measure == Measure::kMm ? optimal_interval_mm(m, row.c_hat)
                                                         : optimal_interval_pauc(m, row.c_hat);
      const OptimalInterval num = optimal_interval_numeric(m, row.c_hat, measure, kGrid);
      EXPECT_LE(std::abs(m.dist.ccdf(num.interval.z1) - m.dist.ccdf(cf.interval.z1)), cell)
          << measure_name(measure) << " c=" << row.c_hat;
      EXPECT_GE(num.value, cf.value - 1e-9);
    }
  }
  const OptimalInterval mm = optimal_interval_numeric(m, 0.1, Measure::kMm, kGrid);
  EXPECT_NEAR(mm.interval.z1, 1.2252, 1e-3);
  EXPECT_NEAR(mm.interval.z2, 1.3111, 1e-3);
}

TEST(Intervention, NormalOptimumTargetsUpperMiddle) {
  const auto m = testing::sat_preset();
  const OptimalInterval best = optimal_interval_numeric(m, 0.3, Measure::kPauc, 400);
  EXPECT_GT(best.interval.z1, 1550.0);
  EXPECT_NEAR(best.interval.z1, 1700.0940, 0.01);
  EXPECT_NEAR(best.interval.z2, 2230.0247, 0.01);
  EXPECT_NEAR(best.value, 0.083230375, 1e-7);
}

TEST(Intervention, MeasureNames) {
  EXPECT_EQ(parse_measure("mm"), Measure::kMm);
  EXPECT_EQ(parse_measure("pauc"), Measure::kPauc);
  EXPECT_STREQ(measure_name(Measure::kPauc), "pauc");
  EXPECT_THROW(parse_measure("auc"), DomainError);
  EXPECT_THROW(optimal_interval_mm(pareto_preset(), 1.2), DomainError);
}

}  // namespace
}  // namespace feederlab
