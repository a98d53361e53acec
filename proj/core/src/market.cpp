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


#include "feederlab/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "feederlab/error.hpp"
#include "feederlab/numerics.hpp"

namespace feederlab {

const char* group_name(Group group) { return group == Group::kG1 ? "G1" : "G2"; }

MarketParams MarketParams::make(double p, double beta, Distribution dist) {
  MarketParams params{p, beta, std::move(dist)};
  params.validate();
  return params;
}

void MarketParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("market", "p", "must lie in [0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("market", "beta", "must lie in (0, 1]");
  }
}

bool MarketParams::assumption_holds() const {
  if (!dist.is_pareto()) return true;
  return p < 1.0 - std::pow(beta, dist.alpha());
}

double MarketParams::branch_point() const {
  if (dist.is_pareto()) return 1.0 - p + p * std::pow(beta, dist.alpha());
  const double lo = dist.support_min();
  if (!std::isfinite(lo)) return 1.0;
  return perceived_rank(*this, lo);
}

double perceived(const MarketParams& params, double z, Group group) {
  return group == Group::kG1 ? z : params.beta * z;
}

double rank_unbiased(const MarketParams& params, double z) {
  return params.dist.ccdf(z);
}

double perceived_rank(const MarketParams& params, double z_hat) {
  const Distribution& d = params.dist;
  return (1.0 - params.p) * d.ccdf(std::max(z_hat, d.support_min())) +
         params.p * d.ccdf(z_hat / params.beta);
}

double rank_biased(const MarketParams& params, double z, Group group) {
  return perceived_rank(params, perceived(params, z, group));
}

double displacement(const MarketParams& params, double z, Group group) {
  return rank_biased(params, z, group) - rank_unbiased(params, z);
}

double displacement_closed_form(const MarketParams& params, double z,
                                Group group) {
  if (!params.dist.is_pareto()) {
    throw DomainError("market", "dist", "closed form requires a Pareto law");
  }
  if (z < 1.0) return 0.0;
  const double alpha = params.dist.alpha();
  const double b_alpha = std::pow(params.beta, alpha);
  const double tail = std::pow(z, -alpha);
  if (group == Group::kG1) return (-params.p + params.p * b_alpha) * tail;
  if (z <= 1.0 / params.beta) return (1.0 - params.p) * (1.0 - tail);
  return (1.0 - params.p) * tail * (1.0 / b_alpha - 1.0);
}

Extremum1d max_displacement(const MarketParams& params) {
  if (!params.dist.is_pareto()) return max_displacement_numeric(params);
  const double b_alpha = std::pow(params.beta, params.dist.alpha());
  return {(1.0 - params.p) * (1.0 - b_alpha), 1.0 / params.beta};
}

Extremum1d max_displacement_numeric(const MarketParams& params, int grid_size) {
  grid_size = std::max(grid_size, 3);
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  const double top = 0.9999, bottom = 0.0001;
  for (int i = 0; i < grid_size; ++i) {
    const double u = top - (top - bottom) * i / (grid_size - 1);
    grid[static_cast<std::size_t>(i)] = params.dist.inv_ccdf(u);
  }
  const auto best = numerics::grid_then_golden_max(
      [&](double z) { return displacement(params, z, Group::kG2); }, grid);
  return {best.value, best.x};
}

double school_cutoff(const MarketParams& params, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("market", "s", "must lie in [0, 1]");
  if (!params.dist.is_pareto()) return school_cutoff_numeric(params, s);
  const double alpha = params.dist.alpha();
  const double k = params.branch_point();
  if (s <= k) return std::pow(s / k, -1.0 / alpha);
  return params.beta * std::pow((s - (1.0 - params.p)) / params.p, -1.0 / alpha);
}

double school_cutoff_numeric(const MarketParams& params, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("market", "s", "must lie in [0, 1]");
  const Distribution& d = params.dist;
  const double lowest = params.beta * d.support_min();
  const double highest = d.support_max();
  double center = d.inv_ccdf(std::clamp(s, 1e-12, 1.0 - 1e-12));
  if (!std::isfinite(center)) center = 0.0;
  const double half = 0.5 * std::abs(center) + 1.0;
  return numerics::solve_monotone(
      [&](double z_hat) { return perceived_rank(params, z_hat); }, s,
      numerics::Monotone::kDecreasing, center - half, center + half,
      std::isfinite(lowest) ? lowest : -std::numeric_limits<double>::infinity(),
      highest);
}

}  // namespace feederlab
