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


// SAT case-study pipeline: school records in, fitted potential law out.

#ifndef FEEDERLAB_INGEST_HPP_
#define FEEDERLAB_INGEST_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "feederlab/distribution.hpp"
#include "feederlab/market.hpp"

namespace feederlab {

inline constexpr double kMinSat = 600.0;
inline constexpr double kMaxSat = 2400.0;

struct SchoolRecord {
  std::string school_id;
  double avg_sat;
  std::int64_t num_takers;
  double eni;
};

// CSV with header `school_id,avg_sat,num_takers,eni`. Throws DataError with
// the row number and field name on the first invalid row.
std::vector<SchoolRecord> load_schools(const std::string& path);
std::vector<SchoolRecord> parse_schools(std::istream& in,
                                        const std::string& source = "<input>");
void write_schools_csv(const std::vector<SchoolRecord>& records, std::ostream& out);

struct EniSplit {
  std::vector<Group> groups;  // per school
  double median_eni;
  double p;  // fraction of test takers in G2
};

// Schools with ENI strictly above the median are G2.
EniSplit split_by_eni(const std::vector<SchoolRecord>& records);

struct SimulatedCohort {
  std::vector<double> scores;
  std::vector<Group> groups;
  std::vector<std::string> school_ids;
};

// num_takers draws per school from Normal(avg_sat, sd), clipped to the SAT
// range. School i draws from std::mt19937_64 seeded with seed + i.
SimulatedCohort simulate_students(const std::vector<SchoolRecord>& records,
                                  double sd, std::uint64_t seed);
void write_cohort_csv(const SimulatedCohort& cohort, std::ostream& out);

enum class BetaEstimator { kMeanRatio, kMedianRatio };

// Ratio of G2 to G1 location, clipped to (0, 1]. Throws DomainError when a
// group is empty.
double estimate_beta(const std::vector<double>& g1_scores,
                     const std::vector<double>& g2_scores,
                     BetaEstimator estimator = BetaEstimator::kMeanRatio);

// Divides G2 scores by beta, pools them with G1 and fits a Normal with the
// pooled mean and sample standard deviation.
Distribution fit_potential_dist(const SimulatedCohort& cohort, double beta);

// Model-generated school table. Odd-indexed schools are disadvantaged: they
// report beta times their true mean and get ENI in [0.55, 0.95] (others
// [0.05, 0.45]). School true means are Normal around `mean` with the
// between-school sd chosen so that students simulated with sd within_sd and
// debiased by beta pool to Normal(mean, sd).
struct SyntheticSpec {
  int n_schools = 400;
  std::int64_t takers_per_school = 100;
  double mean = 1550.0;
  double sd = 310.0;
  double within_sd = 100.0;
  double beta = 0.8;
};
std::vector<SchoolRecord> synthetic_schools(const SyntheticSpec& spec,
                                            std::uint64_t seed);

}  // namespace feederlab

#endif  // FEEDERLAB_INGEST_HPP_
