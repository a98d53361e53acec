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

#include "feederlab/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "feederlab/error.hpp"

namespace feederlab {
namespace {

std::vector<SchoolRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_schools(in, "mem.csv");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(Ingest, ParsesWellFormedFile) {
  const auto r = parse(
      "school_id,avg_sat,num_takers,eni\n"
      "A,1500,120,0.3\n"
      "B,1420.5,80,0.72\n"
      "C,1710,200,0.1\n");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1].school_id, "B");
  EXPECT_DOUBLE_EQ(r[1].avg_sat, 1420.5);
  EXPECT_EQ(r[2].num_takers, 200);
  EXPECT_DOUBLE_EQ(r[0].eni, 0.3);
}

TEST(Ingest, HeaderOnlyFileIsEmpty) {
  EXPECT_TRUE(parse("school_id,avg_sat,num_takers,eni\n").empty());
}

TEST(Ingest, RowErrorsNameRowAndField) {
  const std::string header = "school_id,avg_sat,num_takers,eni\n";
  const std::string eni = error_of(header + "A,1500,10,0.3\nB,1500,10,1.2\n");
  EXPECT_NE(eni.find("row 3"), std::string::npos) << eni;
  EXPECT_NE(eni.find("eni"), std::string::npos) << eni;
  EXPECT_NE(error_of(header + "A,2500,10,0.3\n").find("avg_sat"), std::string::npos);
  EXPECT_NE(error_of(header + "A,1500,-1,0.3\n").find("num_takers"), std::string::npos);
  EXPECT_NE(error_of(header + "A,15x0,1,0.3\n").find("not a number"), std::string::npos);
  EXPECT_NE(error_of(header + "A,1500,1\n").find("expected 4 fields"), std::string::npos);
  EXPECT_NE(error_of("id,sat\n").find("header"), std::string::npos);
  EXPECT_NE(error_of("").find("missing header"), std::string::npos);
  EXPECT_THROW(load_schools("/nonexistent/schools.csv"), DataError);
}

TEST(Ingest, WriteThenParseRoundTrips) {
  const std::vector<SchoolRecord> in = {{"X1", 1234.5678901234, 17, 0.123456789},
                                        {"X2", 2400.0, 0, 1.0}};
  std::ostringstream out;
  write_schools_csv(in, out);
  const auto back = parse(out.str());
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(back[i].school_id, in[i].school_id);
    EXPECT_EQ(back[i].avg_sat, in[i].avg_sat);
    EXPECT_EQ(back[i].num_takers, in[i].num_takers);
    EXPECT_EQ(back[i].eni, in[i].eni);
  }
}

TEST(Ingest, SplitByEni) {
  const auto two = split_by_eni({{"a", 1500, 10, 0.2}, {"b", 1400, 30, 0.8}});
  EXPECT_EQ(two.groups, (std::vector<Group>{Group::kG1, Group::kG2}));
  EXPECT_DOUBLE_EQ(two.p, 0.75);
  const auto flat = split_by_eni({{"a", 1500, 10, 0.5}, {"b", 1400, 30, 0.5}});
  EXPECT_EQ(flat.groups, (std::vector<Group>{Group::kG1, Group::kG1}));
  EXPECT_EQ(flat.p, 0.0);
  const auto synth = split_by_eni(synthetic_schools({}, 4));
  EXPECT_DOUBLE_EQ(synth.p, 0.5);
}

TEST(Ingest, SimulatedScoresAreClippedAndReproducible) {
  const std::vector<SchoolRecord> top = {{"T", 2350, 5000, 0.1}};
  const SimulatedCohort a = simulate_students(top, 310.0, 3);
  ASSERT_EQ(a.scores.size(), 5000u);
  bool clipped = false;
  for (double s : a.scores) {
    ASSERT_GE(s, kMinSat);
    ASSERT_LE(s, kMaxSat);
    clipped = clipped || s == kMaxSat;
  }
  EXPECT_TRUE(clipped);
  const SimulatedCohort b = simulate_students(top, 310.0, 3);
  EXPECT_EQ(a.scores, b.scores);
}

TEST(Ingest, SimulatedMeanFollowsClt) {
  const std::vector<SchoolRecord> mid = {{"M", 1550, 100000, 0.1}};
  const SimulatedCohort c = simulate_students(mid, 310.0, 11);
  const double mean = std::accumulate(c.scores.begin(), c.scores.end(), 0.0) / 1e5;
  EXPECT_NEAR(mean, 1550.0, 3.0);
}

TEST(Ingest, CohortCsv) {
  const SimulatedCohort c{{1500.25, 1210.0}, {Group::kG1, Group::kG2}, {"A", "B"}};
  std::ostringstream out;
  write_cohort_csv(c, out);
  EXPECT_EQ(out.str(), "score,group,school_id\n1500.25,G1,A\n1210,G2,B\n");
}

TEST(Ingest, EstimateBeta) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> law(1550.0, 310.0);
  std::vector<double> g1(100000), g2(100000);
  for (auto& x : g1) x = law(rng);
  for (auto& x : g2) x = 0.8 * law(rng);
  EXPECT_NEAR(estimate_beta(g1, g2), 0.8, 0.01);
  EXPECT_NEAR(estimate_beta(g1, g2, BetaEstimator::kMedianRatio), 0.8, 0.01);
  EXPECT_EQ(estimate_beta(g1, g1), 1.0);
  EXPECT_THROW(estimate_beta({}, g2), DomainError);
}

TEST(Ingest, FitPotentialLaw) {
  const SimulatedCohort c{{1000, 1200, 800, 1600}, {Group::kG1, Group::kG1, Group::kG2, Group::kG2},
                          {"a", "a", "b", "b"}};
  const Distribution d = fit_potential_dist(c, 0.8);
  const std::vector<double> pooled = {1000, 1200, 1000, 2000};
  const double mean = 1300.0;
  double ss = 0.0;
  for (double x : pooled) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(d.mean(), mean, 1e-9);
  EXPECT_NEAR(d.stddev(), std::sqrt(ss / 3.0), 1e-9);
  const SimulatedCohort flat{{900, 900, 900}, {Group::kG1, Group::kG1, Group::kG2}, {"a", "a", "a"}};
  try {
    fit_potential_dist(flat, 1.0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.parameter(), "sd");
  }
}

TEST(Ingest, SyntheticSchools) {
  const auto a = synthetic_schools({}, 9);
  const auto b = synthetic_schools({}, 9);
  ASSERT_EQ(a.size(), 400u);
  EXPECT_EQ(a[7].school_id, "S0007");
  EXPECT_EQ(a[7].avg_sat, b[7].avg_sat);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].eni > 0.5, i % 2 == 1);
  }
  EXPECT_THROW(synthetic_schools({.within_sd = 300.0}, 1), DomainError);
}

// Split, estimate and fit on a dataset drawn from the model itself.
TEST(Ingest, PipelineRecoversModelParameters) {
  SyntheticSpec spec;
  spec.n_schools = 20000;
  spec.takers_per_school = 10;
  const auto schools = synthetic_schools(spec, 1);
  const SimulatedCohort cohort = simulate_students(schools, spec.within_sd, 1);
  std::vector<double> g1, g2;
  for (std::size_t i = 0; i < cohort.scores.size(); ++i) {
    (cohort.groups[i] == Group::kG2 ? g2 : g1).push_back(cohort.scores[i]);
  }
  const double beta = estimate_beta(g1, g2);
  const Distribution law = fit_potential_dist(cohort, beta);
  EXPECT_NEAR(beta, 0.8, 0.02);
  EXPECT_NEAR(law.mean() / 1550.0, 1.0, 0.02);
  EXPECT_NEAR(law.stddev() / 310.0, 1.0, 0.02);
}

}  // namespace
}  // namespace feederlab
