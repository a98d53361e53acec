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


#include "feederlab/interviewing.hpp"

#include <algorithm>

#include "feederlab/error.hpp"

namespace feederlab {
InterviewCutoffs interview_cutoffs(const MarketParams& params, double s,
                                   double iv) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("interviewing", "s", "must lie in [0, 1]");
  if (!(iv >= 0.0 && iv <= 1.0)) {
    throw DomainError("interviewing", "iv", "must lie in [0, 1]");
  }
  const Distribution& dist = params.dist;
  const double p = params.p;
  const double pool_bottom = school_cutoff(params, std::min(1.0, s + iv));
  const double d2 = pool_bottom / params.beta;
  if (dist.ccdf(d2) >= s) {
    const double d = dist.inv_ccdf(s);
    return {d, d};
  }
  if (p >= 1.0) return {dist.support_min(), d2};
  const double g1_mass = (s - p * dist.ccdf(d2)) / (1.0 - p);
  if (g1_mass >= 1.0) return {dist.support_min(), d2};
  return {dist.inv_ccdf(std::max(g1_mass, 0.0)), d2};
}

double utility_all_interview(const MarketParams& params, double s, double iv) {
  const InterviewCutoffs c = interview_cutoffs(params, s, iv);
  // Only G2 remains at the margin once G1 is exhausted. With iv = 0 at the
  // branch point d1 sits exactly on the support minimum while the perceived
  // cutoff is still inside the support; both groups are marginal there, as in
  // utility_biased.
  const bool g1_exhausted =
      c.d1 <= params.dist.support_min() &&
      school_cutoff(params, std::min(1.0, s + iv)) < params.dist.support_min();
  if (c.d1 != c.d2 && (params.p >= 1.0 || g1_exhausted)) return c.d2;
  const double w1 = (1.0 - params.p) * params.dist.pdf(c.d1);
  const double w2 = params.p * params.dist.pdf(c.d2);
  if (w1 + w2 <= 0.0) return c.d2;
  return (w1 * c.d1 + w2 * c.d2) / (w1 + w2);
}

double utility_solo_interview(const MarketParams& params, double s) {
  return school_cutoff(params, s) / params.beta;
}

double utility_solo_abstain(const MarketParams& params, double s, double iv) {
  return interview_cutoffs(params, s, iv).d1;
}

}  // namespace feederlab
