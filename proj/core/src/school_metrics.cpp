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

#include <cmath>

#include "feederlab/error.hpp"

namespace feederlab {
namespace {

void check_school(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("school_metrics", "s", "must lie in [0, 1]");
  }
}

}  // namespace

double utility_unbiased(const MarketParams& params, double s) {
  check_school(s);
  if (params.dist.is_pareto()) return std::pow(s, -1.0 / params.dist.alpha());
  return params.dist.inv_ccdf(s);
}

double utility_biased(const MarketParams& params, double s) {
  check_school(s);
  const double d = school_cutoff(params, s);
  const double p = params.p;
  const double beta = params.beta;
  if (params.dist.is_pareto()) {
    const double alpha = params.dist.alpha();
    const double k = params.branch_point();
    if (s > k) return d / beta;
    return k / (1.0 - p + p * std::pow(beta, alpha + 1.0)) * d;
  }
  const double w1 = (1.0 - p) * params.dist.pdf(d);
  const double w2 = p * params.dist.pdf(d / beta);
  if (w1 + w2 <= 0.0) return d < params.dist.support_min() ? d / beta : d;
  return (w1 * d + w2 * d / beta) / (w1 + w2);
}

double diversity(const MarketParams& params, double s, bool biased) {
  check_school(s);
  if (!biased) return params.p;
  const double p = params.p;
  if (params.dist.is_pareto()) {
    const double k = params.branch_point();
    if (s > k) return 1.0;
    return p * std::pow(params.beta, params.dist.alpha()) / k;
  }
  // Perceived-potential densities of the two groups at the cutoff.
  const double d = school_cutoff(params, s);
  if (d < params.dist.support_min()) return 1.0;
  const double g1 = (1.0 - p) * params.dist.pdf(d);
  const double g2 = p * params.dist.pdf(d / params.beta) / params.beta;
  if (g1 + g2 <= 0.0) return p;
  return g2 / (g1 + g2);
}

}  // namespace feederlab
