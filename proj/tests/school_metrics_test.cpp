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

#include "feederlab/school_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "feederlab/sim_discrete.hpp"
#include "test_support.hpp"

namespace feederlab {
namespace {

using testing::pareto_preset;

TEST(SchoolMetrics, UnbiasedUtility) {
  const auto m = pareto_preset();
  EXPECT_NEAR(utility_unbiased(m, 0.5), std::cbrt(2.0), 1e-12);
  EXPECT_NEAR(utility_unbiased(m, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(utility_unbiased(m, 0.125), 2.0, 1e-12);
}

TEST(SchoolMetrics, BiasedUtilityExamples) {
  const auto m = pareto_preset();
  EXPECT_NEAR(utility_biased(m, 0.5), 1.24267981869742, 1e-10);
  EXPECT_NEAR(utility_biased(m, 0.95), 1.0772173450159421, 1e-10);
}

TEST(SchoolMetrics, NoBiasUtilitiesCoincide) {
  const auto flat = testing::unbiased_pareto();
  for (int i = 1; i <= 99; ++i) {
    const double s = i / 100.0;
    ASSERT_NEAR(utility_biased(flat, s), utility_unbiased(flat, s), 1e-12);
  }
}

TEST(SchoolMetrics, OverqualifiedG2AboveBranchPoint) {
  const auto m = pareto_preset();
  const double k = m.branch_point();
  for (int i = 1; i < 1000; ++i) {
    const double s = i / 1000.0;
    if (std::abs(s - k) < 1e-9) continue;
    if (s < k) {
      ASSERT_LE(utility_biased(m, s), utility_unbiased(m, s)) << s;
    } else {
      ASSERT_GE(utility_biased(m, s), utility_unbiased(m, s)) << s;
    }
  }
}

TEST(SchoolMetrics, Diversity) {
  const auto m = pareto_preset();
  EXPECT_NEAR(diversity(m, 0.5, true), 0.128 / 0.878, 1e-12);
  EXPECT_EQ(diversity(m, 0.9, true), 1.0);
  EXPECT_EQ(diversity(m, 0.3, false), 0.25);
  // General-law route through the normal law: p = 0.5, no clamp in play.
  const auto sat = testing::sat_preset();
  const double d = school_cutoff(sat, 0.5);
  const double g1 = 0.5 * sat.dist.pdf(d);
  const double g2 = 0.5 * sat.dist.pdf(d / 0.8) / 0.8;
  EXPECT_NEAR(diversity(sat, 0.5, true), g2 / (g1 + g2), 1e-12);
}

TEST(SchoolMetrics, GeneralRouteIsDensityWeightedMean) {
  const auto m = testing::sat_preset();
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double d = school_cutoff(m, s);
    const double w1 = 0.5 * m.dist.pdf(d);
    const double w2 = 0.5 * m.dist.pdf(d / 0.8);
    EXPECT_NEAR(utility_biased(m, s), (w1 * d + w2 * d / 0.8) / (w1 + w2), 1e-9);
  }
}

// Mean true potential of students seated in ranks [s - h, s + h] of a
// 10^6-student discrete draw, compared with the continuous utility. Ranks
// start at 0.05: closer to the top the window's convexity bias alone is
// about 0.5%.
TEST(SchoolMetrics, MonteCarloAdmittedCohortMean) {
  SimConfig config;
  config.n_schools = 1000;
  config.capacity = 1000;
  config.n_students = 1000000;
  config.market = pareto_preset();
  const DiscreteMarket market = build_market(config, 2026);
  std::vector<std::size_t> order(market.students.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return market.students[a].z_hat > market.students[b].z_hat;
  });
  const double n = static_cast<double>(order.size());
  const double half_width = 0.005;
  for (int i = 0; i < 20; ++i) {
    const double s = 0.05 + 0.045 * i;
    const auto lo = static_cast<std::size_t>((s - half_width) * n);
    const auto hi = static_cast<std::size_t>((s + half_width) * n);
    double sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) sum += market.students[order[k]].z;
    const double mc = sum / static_cast<double>(hi - lo);
    EXPECT_NEAR(mc / utility_biased(config.market, s), 1.0, 0.01) << "s=" << s;
  }
}

}  // namespace
}  // namespace feederlab
