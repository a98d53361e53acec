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


// Voucher interventions: G2 students whose true potential lies in [z1, z2]
// have it revealed. Covers the post-voucher ranking, the two unfairness
// measures (largest mistreatment and positive area under the displacement
// curve), the Pareto improvement table, closed-form optimal intervals and a
// grid search for arbitrary laws.

#ifndef FEEDERLAB_INTERVENTION_HPP_
#define FEEDERLAB_INTERVENTION_HPP_

#include <string>

#include "feederlab/market.hpp"

namespace feederlab {

struct DebiasInterval {
  double z1;
  double z2;

  static DebiasInterval none();
  // An interval with z1 >= z2 (or NaN bounds) debiases nobody.
  bool empty() const { return !(z1 < z2); }
};

struct VoucherBudget {
  double c_hat;
  void validate() const;
};

enum class Measure { kMm, kPauc };

const char* measure_name(Measure measure);
Measure parse_measure(const std::string& name);

struct UnfairnessReport {
  double mm;
  double pauc;
  DebiasInterval interval;
};

double rank_post_voucher(const MarketParams& params,
                         const DebiasInterval& interval, double z, Group group);

// F(z1) - F(z2) under the potential law.
double budget_of_interval(const MarketParams& params,
                          const DebiasInterval& interval);

// Largest post-voucher G2 displacement. Pareto uses the piecewise closed form,
// other laws the numeric route.
double mistreatment_max(const MarketParams& params,
                        const DebiasInterval& interval);
// Piecewise scan between the kinks of the displacement curve, probing
// one-sided limits at each kink.
double mistreatment_max_numeric(const MarketParams& params,
                                const DebiasInterval& interval);

// Integral of the positive part of G2 displacement against the potential law.
double pauc(const MarketParams& params, const DebiasInterval& interval);
double pauc_quadrature(const MarketParams& params,
                       const DebiasInterval& interval);
// Pareto only; throws DomainError otherwise.
double pauc_closed_form(const MarketParams& params,
                        const DebiasInterval& interval);

UnfairnessReport evaluate(const MarketParams& params,
                          const DebiasInterval& interval);

enum class ParetoCase { kI1, kI2, kII1, kII2, kII3 };
const char* pareto_case_name(ParetoCase c);
// Case I when beta z2 >= z1, case II otherwise; subcases compare beta z1 and
// beta z2 against the support minimum 1.
ParetoCase classify_case(const MarketParams& params,
                         const DebiasInterval& interval);

enum class Verdict { kImproves, kWorsens, kCaseII3NeverImproves, kNoStrictChange };
const char* verdict_name(Verdict verdict);

// Whether debiasing the (non-empty) interval lowers the largest mistreatment
// among the affected G2 students [z1, z2 / beta]. Pareto only.
Verdict improvement_condition(const MarketParams& params,
                              const DebiasInterval& interval);

struct OptimalInterval {
  DebiasInterval interval;
  double value;
  // False when the closed form's precondition fails; the result is still
  // returned but carries no optimality guarantee.
  bool precondition_ok;
};

// Closed-form budget-exact optimum for the mm measure (Pareto).
OptimalInterval optimal_interval_mm(const MarketParams& params, double c_hat);
// Closed-form budget-exact optimum for the pauc measure (Pareto).
OptimalInterval optimal_interval_pauc(const MarketParams& params, double c_hat);

// Budget thresholds separating the small- and large-budget regimes.
double mm_regime_threshold(const MarketParams& params);
double pauc_regime_threshold(const MarketParams& params);

// Sliding-window search: window i starts at quantile level u_i (from 1 - 1e-4
// down to c_hat + 1e-4 in grid_size steps) and carries mass c_hat. Uses the
// numeric measure routes for every law. Ties resolve to the lowest index.
OptimalInterval optimal_interval_numeric(const MarketParams& params,
                                         double c_hat, Measure measure,
                                         int grid_size);

}  // namespace feederlab

#endif  // FEEDERLAB_INTERVENTION_HPP_
