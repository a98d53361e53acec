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


#ifndef FEEDERLAB_INTERVIEWING_HPP_
#define FEEDERLAB_INTERVIEWING_HPP_

#include "feederlab/market.hpp"

namespace feederlab {

// True-potential admission cutoffs for G1 and G2 when every school can
// interview the G2 students in the rank window [s, s + iv].
struct InterviewCutoffs {
  double d1;
  double d2;
};

InterviewCutoffs interview_cutoffs(const MarketParams& params, double s,
                                   double iv);

double utility_all_interview(const MarketParams& params, double s, double iv);
// School s interviews while no other school does.
double utility_solo_interview(const MarketParams& params, double s);
// Every school but s interviews.
double utility_solo_abstain(const MarketParams& params, double s, double iv);

}  // namespace feederlab

#endif  // FEEDERLAB_INTERVIEWING_HPP_
