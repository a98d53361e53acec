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


#include "feederlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace feederlab::numerics {
namespace {

bool reached(double value, double target, Monotone direction) {
  return direction == Monotone::kIncreasing ? value >= target
                                            : value <= target;
}

constexpr int kMaxDepth = 30;

// Recursive bisection on 15-point Kronrod panels; the tolerance is split
// between halves.
template <typename F>
double adaptive(const F& f, double a, double b, double abs_tol, double rel_tol,
                int depth) {
  double error = 0.0;
  const double estimate =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, 0, 0.0, &error);
  // Boost reports the error of the panel mapped onto [-1, 1].
  error *= 0.5 * (b - a);
  if (depth == 0 || error <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
    return estimate;
  }
  const double mid = a + 0.5 * (b - a);
  if (mid <= a || mid >= b) return estimate;
  return adaptive(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1) +
         adaptive(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

}  // namespace

double solve_monotone(const std::function<double(double)>& f, double target,
                      Monotone direction, double lo, double hi, double min_x,
                      double max_x, const BisectionOptions& options) {
  lo = std::clamp(lo, min_x, max_x);
  hi = std::clamp(hi, min_x, max_x);
  if (lo > hi) std::swap(lo, hi);

  // Grow the bracket until f(lo) has not reached the target and f(hi) has.
  double width = std::max(hi - lo, 1.0);
  for (int i = 0; i < options.max_expansions; ++i) {
    const bool lo_reached = reached(f(lo), target, direction);
    const bool hi_reached = reached(f(hi), target, direction);
    if (lo_reached) {
      if (lo <= min_x) return min_x;
      hi = lo;
      lo = std::max(lo - width, min_x);
    } else if (!hi_reached) {
      if (hi >= max_x) return max_x;
      lo = hi;
      hi = std::min(hi + width, max_x);
    } else {
      break;
    }
    width *= 2.0;
  }

  for (int i = 0; i < options.max_iterations; ++i) {
    if (hi - lo <= options.abs_tol) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (reached(f(mid), target, direction)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Extremum golden_section_max(const std::function<double(double)>& f, double a,
                            double b, double x_tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

Extremum grid_then_golden_max(const std::function<double(double)>& f,
                              std::span<const double> grid, double x_tol) {
  if (grid.empty()) return {std::numeric_limits<double>::quiet_NaN(),
                            -std::numeric_limits<double>::infinity()};
  std::size_t best = 0;
  double best_value = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (grid.size() < 3) return {grid[best], best_value};
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, grid.size() - 1)];
  const Extremum refined = golden_section_max(f, a, b, x_tol);
  if (refined.value > best_value) return refined;
  return {grid[best], best_value};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, double abs_tol,
                 double rel_tol) {
  if (!(a < b)) return 0.0;
  std::vector<double> knots{a};
  for (double x : breakpoints) {
    if (std::isfinite(x) && x > a && x < b) knots.push_back(x);
  }
  if (!std::isfinite(a) && !std::isfinite(b) && knots.size() == 1) knots.push_back(0.0);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  const double pieces = static_cast<double>(knots.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    const double tol = abs_tol / pieces;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      total += adaptive(f, lo, hi, tol, rel_tol, kMaxDepth);
    } else if (std::isfinite(lo)) {
      // x = lo + t / (1 - t) on t in [0, 1).
      const auto g = [&](double t) {
        const double s = 1.0 - t;
        return s > 0 ? f(lo + t / s) / (s * s) : 0.0;
      };
      total += adaptive(g, 0.0, 1.0, tol, rel_tol, kMaxDepth);
    } else {
      // x = hi - (1 - t) / t on t in (0, 1].
      const auto g = [&](double t) {
        return t > 0 ? f(hi - (1.0 - t) / t) / (t * t) : 0.0;
      };
      total += adaptive(g, 0.0, 1.0, tol, rel_tol, kMaxDepth);
    }
  }
  return total;
}

}  // namespace feederlab::numerics
