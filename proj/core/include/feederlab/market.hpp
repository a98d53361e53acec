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


// Continuous biased market: perceived potentials, unbiased and biased
// rankings, displacement and school cutoffs.

#ifndef FEEDERLAB_MARKET_HPP_
#define FEEDERLAB_MARKET_HPP_

#include "feederlab/distribution.hpp"

namespace feederlab {

enum class Group { kG1, kG2 };

const char* group_name(Group group);

struct MarketParams {
  double p = 0.25;     // fraction of G2 students
  double beta = 0.8;   // bias factor applied to G2 perceived potentials
  Distribution dist = Distribution::pareto(3.0);

  // Validates and returns the parameters; throws DomainError naming the
  // offending field.
  static MarketParams make(double p, double beta, Distribution dist);
  void validate() const;

  // p < 1 - beta^alpha. Always true for non-Pareto laws.
  bool assumption_holds() const;
  // School rank below which some G1 students are still admitted under the
  // biased ranking (1 - p + p beta^alpha for Pareto).
  double branch_point() const;
};

struct Student {
  Group group;
  double z;
  double z_hat;
};

struct Extremum1d {
  double value;
  double at_z;
};

double perceived(const MarketParams& params, double z, Group group);

double rank_unbiased(const MarketParams& params, double z);
double rank_biased(const MarketParams& params, double z, Group group);

double displacement(const MarketParams& params, double z, Group group);
// Pareto-only piecewise closed form; throws DomainError for other laws.
double displacement_closed_form(const MarketParams& params, double z,
                                Group group);

// Largest G2 displacement. Pareto uses the closed form; other laws fall back
// to max_displacement_numeric.
Extremum1d max_displacement(const MarketParams& params);
Extremum1d max_displacement_numeric(const MarketParams& params,
                                    int grid_size = 10000);

// Perceived potential of the marginal student admitted by school s.
double school_cutoff(const MarketParams& params, double s);
double school_cutoff_numeric(const MarketParams& params, double s);

// Biased rank of a perceived potential: (1-p) F(z_hat) + p F(z_hat / beta).
double perceived_rank(const MarketParams& params, double z_hat);

}  // namespace feederlab

#endif  // FEEDERLAB_MARKET_HPP_
