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

// Small numeric toolkit shared by the continuous modules: monotone root
// solving, golden-section maximization and adaptive quadrature.

#ifndef FEEDERLAB_NUMERICS_HPP_
#define FEEDERLAB_NUMERICS_HPP_

#include <functional>
#include <span>

namespace feederlab::numerics {

enum class Monotone { kIncreasing, kDecreasing };

struct BisectionOptions {
  double abs_tol = 1e-10;
  int max_iterations = 200;
  int max_expansions = 200;
};

// Returns the smallest x at which a monotone f reaches `target` (f(x) >= target
// when increasing, f(x) <= target when decreasing). Starts from the bracket
// [lo, hi], expands it geometrically until it straddles the target, then
// bisects. The search is confined to [min_x, max_x]; if the target is not
// reached inside those limits, the nearest limit is returned.
double solve_monotone(const std::function<double(double)>& f, double target,
                      Monotone direction, double lo, double hi, double min_x,
                      double max_x, const BisectionOptions& options = {});

struct Extremum {
  double x;
  double value;
};

// Golden-section search for the maximum of a unimodal function on [a, b].
Extremum golden_section_max(const std::function<double(double)>& f, double a,
                            double b, double x_tol = 1e-8);

// Maximizes f by scanning `grid` (ascending) and refining the best grid cell
// with golden-section search.
Extremum grid_then_golden_max(const std::function<double(double)>& f,
                              std::span<const double> grid,
                              double x_tol = 1e-8);

// Adaptive Gauss-Kronrod integration of f over [a, b]; either limit may be
// infinite. `breakpoints` are interior points where f has kinks; the range is
// split there and each piece integrated separately. A panel is accepted once
// its error estimate is below max(abs_tol * share, rel_tol * |panel|), where
// share is the panel's fraction of the (mapped) range.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 double abs_tol = 1e-10, double rel_tol = 1e-12);

}  // namespace feederlab::numerics

#endif  // FEEDERLAB_NUMERICS_HPP_
