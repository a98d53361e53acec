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


// Finite-market Monte Carlo: students drawn from the potential law are
// seated in schools of fixed capacity by perceived or true potential.
//
// Random streams: replicate r uses seed base_seed + r. The market draws come
// from std::mt19937_64 seeded with that value; voucher take-up draws use a
// second engine seeded with voucher_seed(seed).

#ifndef FEEDERLAB_SIM_DISCRETE_HPP_
#define FEEDERLAB_SIM_DISCRETE_HPP_

#include <cstdint>
#include <vector>

#include "feederlab/intervention.hpp"
#include "feederlab/market.hpp"

namespace feederlab {

struct SimConfig {
  std::int64_t n_students = 10000;
  int n_schools = 100;
  int capacity = 100;
  MarketParams market;
  // Per-student bias drawn from Uniform[beta - epsilon, beta + epsilon],
  // clipped at 1.
  double epsilon = 0.0;
  // Probability that an eligible G2 student uses the voucher.
  double take_up = 1.0;
  int replications = 100;
  std::uint64_t base_seed = 1;

  void validate() const;
};

struct DiscreteStudent {
  Group group;
  double z;
  double beta;
  double z_hat;
};

struct DiscreteMarket {
  std::vector<DiscreteStudent> students;
  int n_schools = 0;
  int capacity = 0;
  std::vector<int> assignment_biased;
  std::vector<int> assignment_unbiased;
};

struct DiscreteMetrics {
  double pauc;
  double mm;
};

struct SimSummary {
  double pauc_mean = 0.0;
  double pauc_sem = 0.0;
  double mm_mean = 0.0;
  double mm_sem = 0.0;
  std::vector<double> pauc;
  std::vector<double> mm;
};

struct SimResult {
  DebiasInterval interval;
  SimSummary baseline;
  SimSummary intervened;
};

struct EmpiricalBest {
  DebiasInterval interval;
  double value;
  int windows;
};

std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate);
std::uint64_t voucher_seed(std::uint64_t seed);

DiscreteMarket build_market(const SimConfig& config, std::uint64_t seed);

// School index per student. Students are ordered by the chosen potential
// (descending), then true potential (descending), then index (ascending);
// position k goes to school k / capacity.
std::vector<int> assign(const DiscreteMarket& market, bool use_perceived);

// Each G2 student with true potential in [z1, z2] reveals it with
// probability take_up; the biased assignment is recomputed.
DiscreteMarket apply_vouchers(const DiscreteMarket& market,
                              const DebiasInterval& interval, double take_up,
                              std::uint64_t seed);

// Displacement of a student is (biased school - unbiased school) / n_schools.
// pauc averages its positive part over G2 students; mm is the largest value.
DiscreteMetrics metrics(const DiscreteMarket& market);

SimResult run_experiment(const SimConfig& config, const DebiasInterval& interval);

// Sliding window over the sorted potentials of replicate 0, each window
// holding floor(c_hat * n_students) students. Every window is scored on the
// same replicate markets and voucher streams; the lowest mean score wins,
// ties going to the lowest window.
EmpiricalBest empirical_best_interval(const SimConfig& config, double c_hat,
                                      Measure measure, int n_windows = 200);

}  // namespace feederlab

#endif  // FEEDERLAB_SIM_DISCRETE_HPP_
