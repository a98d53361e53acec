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


#ifndef FEEDERLAB_SCHOOL_METRICS_HPP_
#define FEEDERLAB_SCHOOL_METRICS_HPP_

#include "feederlab/market.hpp"

namespace feederlab {

// Mean true potential admitted at school rank s without bias.
double utility_unbiased(const MarketParams& params, double s);

// Same under the biased ranking: a density-weighted mix of the G1 cutoff d(s)
// and the G2 cutoff d(s)/beta, with weights (1-p) f(d) and p f(d/beta).
double utility_biased(const MarketParams& params, double s);

// Share of G2 students admitted at school s.
double diversity(const MarketParams& params, double s, bool biased);

}  // namespace feederlab

#endif  // FEEDERLAB_SCHOOL_METRICS_HPP_
