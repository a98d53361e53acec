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


#include "feederlab/intervention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "feederlab/error.hpp"
#include "feederlab/numerics.hpp"
#include "feederlab/parallel.hpp"

namespace feederlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_pareto(const MarketParams& params, const char* what) {
  if (!params.dist.is_pareto()) {
    throw DomainError("intervention", "dist",
                      std::string(what) + " requires a Pareto law");
  }
}

// Debiased range with the lower end lifted to the support minimum.
struct Range {
  double z1;
  double z2;
};

Range clamp_range(const MarketParams& params, const DebiasInterval& interval) {
  return {std::max(interval.z1, params.dist.support_min()), interval.z2};
}

double g2_displacement(const MarketParams& params,
                       const DebiasInterval& interval, double z) {
  return rank_post_voucher(params, interval, z, Group::kG2) -
         rank_unbiased(params, z);
}

// Points where the post-voucher G2 displacement has kinks or jumps.
std::vector<double> kinks(const MarketParams& params,
                          const DebiasInterval& interval) {
  const double beta = params.beta;
  std::vector<double> points;
  const double lo = params.dist.support_min();
  if (std::isfinite(lo)) points.push_back(lo / beta);
  if (!interval.empty()) {
    const Range r = clamp_range(params, interval);
    for (double x : {r.z1, r.z2, r.z1 / beta, r.z2 / beta, beta * r.z2}) {
      points.push_back(x);
    }
  }
  return points;
}

// Finite scan range covering all but 1e-10 of the mass on either side.
std::pair<double, double> scan_range(const Distribution& dist) {
  double lo = dist.support_min();
  double hi = dist.support_max();
  if (!std::isfinite(lo)) lo = dist.inv_ccdf(1.0 - 1e-10);
  if (!std::isfinite(hi)) hi = dist.inv_ccdf(1e-10);
  return {lo, hi};
}

}  // namespace

DebiasInterval DebiasInterval::none() { return {kNaN, kNaN}; }

void VoucherBudget::validate() const {
  if (!(c_hat >= 0.0 && c_hat <= 1.0)) {
    throw DomainError("intervention", "c_hat", "must lie in [0, 1]");
  }
}

const char* measure_name(Measure measure) {
  return measure == Measure::kMm ? "mm" : "pauc";
}

Measure parse_measure(const std::string& name) {
  if (name == "mm") return Measure::kMm;
  if (name == "pauc") return Measure::kPauc;
  throw DomainError("intervention", "measure", "expected mm or pauc, got '" + name + "'");
}

double rank_post_voucher(const MarketParams& params,
                         const DebiasInterval& interval, double z, Group group) {
  if (interval.empty()) return rank_biased(params, z, group);
  const Distribution& d = params.dist;
  const double p = params.p;
  const double beta = params.beta;
  const auto [z1, z2] = clamp_range(params, interval);
  const double tail_z2 = d.ccdf(z2);

  if (group == Group::kG1) {
    const double hidden = std::max(0.0, d.ccdf(std::max(z / beta, z1)) - tail_z2);
    const double revealed = std::max(0.0, d.ccdf(std::max(z, z1)) - tail_z2);
    return (1.0 - p) * d.ccdf(z) + p * (d.ccdf(z / beta) - hidden) + p * revealed;
  }
  if (z > z2) {
    return (1.0 - p) * d.ccdf(std::max(beta * z, d.support_min())) +
           p * d.ccdf(z) +
           p * std::max(0.0, d.ccdf(std::max(beta * z, z1)) - tail_z2);
  }
  if (z >= z1) {
    return (1.0 - p) * d.ccdf(z) + p * (d.ccdf(z) - tail_z2) +
           p * d.ccdf(std::max(z / beta, z2));
  }
  return rank_biased(params, z, group);
}

double budget_of_interval(const MarketParams& params,
                          const DebiasInterval& interval) {
  if (interval.empty()) return 0.0;
  return params.dist.ccdf(interval.z1) - params.dist.ccdf(interval.z2);
}

double mistreatment_max(const MarketParams& params,
                        const DebiasInterval& interval) {
  if (!params.dist.is_pareto()) return mistreatment_max_numeric(params, interval);
  const double p = params.p;
  const double beta = params.beta;
  const double alpha = params.dist.alpha();
  const double b = std::pow(beta, alpha);
  const auto status_quo = [&](double z) {
    return displacement_closed_form(params, z, Group::kG2);
  };
  if (interval.empty()) return (1.0 - p) * (1.0 - b);

  const auto [z1, z2] = clamp_range(params, interval);
  const double a = std::pow(z1, -alpha);
  const double x = std::pow(z2, -alpha);
  double affected = 0.0;
  switch (classify_case(params, interval)) {
    case ParetoCase::kI1:
    case ParetoCase::kI2:
      affected = (1.0 / b - 1.0) * x;
      break;
    case ParetoCase::kII1:
    case ParetoCase::kII2:
      affected = p * a + x * ((1.0 - p) / b - 1.0);
      break;
    case ParetoCase::kII3:
      affected = (1.0 - p) * (1.0 - b) + p * (a - x);
      break;
  }
  const double below = status_quo(std::min(z1, 1.0 / beta));
  const double above = std::isfinite(z2) ? status_quo(z2 / beta) : 0.0;
  return std::max({below, affected, above});
}

double mistreatment_max_numeric(const MarketParams& params,
                                const DebiasInterval& interval) {
  const auto h = [&](double z) { return g2_displacement(params, interval, z); };
  const auto [lo, hi] = scan_range(params.dist);
  std::vector<double> points{lo, hi};
  for (double x : kinks(params, interval)) {
    if (x > lo && x < hi) points.push_back(x);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  constexpr int kPieceGrid = 32;
  double best = -kInf;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    best = std::max({best, h(a), h(std::nextafter(a, kInf)),
                     h(std::nextafter(b, -kInf))});
    std::vector<double> grid(kPieceGrid);
    for (int k = 0; k < kPieceGrid; ++k) {
      grid[static_cast<std::size_t>(k)] = a + (b - a) * k / (kPieceGrid - 1);
    }
    best = std::max(best, numerics::grid_then_golden_max(h, grid, 1e-10 * (b - a)).value);
  }
  best = std::max(best, h(points.back()));
  return std::max(best, 0.0);
}

double pauc(const MarketParams& params, const DebiasInterval& interval) {
  if (params.dist.is_pareto()) return pauc_closed_form(params, interval);
  return pauc_quadrature(params, interval);
}

double pauc_quadrature(const MarketParams& params,
                       const DebiasInterval& interval) {
  const Distribution& d = params.dist;
  const std::vector<double> breaks = kinks(params, interval);
  return numerics::integrate(
      [&](double z) {
        return std::max(g2_displacement(params, interval, z), 0.0) * d.pdf(z);
      },
      d.support_min(), d.support_max(), breaks);
}

double pauc_closed_form(const MarketParams& params,
                        const DebiasInterval& interval) {
  require_pareto(params, "pauc_closed_form");
  const double p = params.p;
  const double b = std::pow(params.beta, params.dist.alpha());
  const double status_quo = 0.5 * (1.0 - p) * (1.0 - b);
  if (interval.empty()) return status_quo;

  const double alpha = params.dist.alpha();
  const auto [z1, z2] = clamp_range(params, interval);
  const double a = std::pow(z1, -alpha);
  const double x = std::pow(z2, -alpha);
  const double big_a = ((1.0 - p) * (1.0 / b - 1.0) + p * b) / 2.0;
  const double big_b = (-(1.0 - p) + p * b) / 2.0;
  const double top_tail = (p - p * b - 1.0 / b + 1.0) / 2.0 * x * x;
  double gain = 0.0;
  switch (classify_case(params, interval)) {
    case ParetoCase::kI1:
      gain = (1.0 - p) * (1.0 / b - 1.0) / 2.0 * a * a + top_tail;
      break;
    case ParetoCase::kI2:
      gain = -0.5 * (1.0 - p) * b + (1.0 - p) * (a - 0.5 * a * a) + top_tail;
      break;
    case ParetoCase::kII1:
      gain = big_a * a * a - big_a * x * x + p * x * x - p * a * x;
      break;
    case ParetoCase::kII2:
      gain = -0.5 * (1.0 - p) * b + big_b * a * a + (1.0 - p) * a -
             big_a * x * x + p * x * x - p * a * x;
      break;
    case ParetoCase::kII3:
      gain = big_b * a * a + (1.0 - p) * a - big_b * x * x - (1.0 - p) * x +
             p * x * x - p * a * x;
      break;
  }
  return status_quo - gain;
}

UnfairnessReport evaluate(const MarketParams& params,
                          const DebiasInterval& interval) {
  return {mistreatment_max(params, interval), pauc(params, interval), interval};
}

const char* pareto_case_name(ParetoCase c) {
  switch (c) {
    case ParetoCase::kI1: return "I.1";
    case ParetoCase::kI2: return "I.2";
    case ParetoCase::kII1: return "II.1";
    case ParetoCase::kII2: return "II.2";
    case ParetoCase::kII3: return "II.3";
  }
  return "?";
}

ParetoCase classify_case(const MarketParams& params,
                         const DebiasInterval& interval) {
  require_pareto(params, "classify_case");
  const double beta = params.beta;
  const auto [z1, z2] = clamp_range(params, interval);
  if (beta * z2 >= z1) return beta * z1 >= 1.0 ? ParetoCase::kI1 : ParetoCase::kI2;
  if (beta * z1 >= 1.0) return ParetoCase::kII1;
  if (beta * z2 >= 1.0) return ParetoCase::kII2;
  return ParetoCase::kII3;
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kImproves: return "Improves";
    case Verdict::kWorsens: return "Worsens";
    case Verdict::kCaseII3NeverImproves: return "CaseII3_NeverImproves";
    case Verdict::kNoStrictChange: return "NoStrictChange";
  }
  return "?";
}

Verdict improvement_condition(const MarketParams& params,
                              const DebiasInterval& interval) {
  require_pareto(params, "improvement_condition");
  if (params.beta == 1.0 || interval.empty()) return Verdict::kNoStrictChange;
  const double p = params.p;
  const double alpha = params.dist.alpha();
  const double b = std::pow(params.beta, alpha);
  const auto [z1, z2] = clamp_range(params, interval);
  bool improves = false;
  switch (classify_case(params, interval)) {
    case ParetoCase::kI1:
      improves = p < 1.0 - std::pow(z1 / z2, alpha);
      break;
    case ParetoCase::kI2:
      improves = p < 1.0 - std::pow(1.0 / (params.beta * z2), alpha);
      break;
    case ParetoCase::kII1:
      improves = p < 1.0 - b;
      break;
    case ParetoCase::kII2: {
      const double x = std::pow(z2, -alpha);
      improves = p * (std::pow(z1, -alpha) - x) < (1.0 - p) * (1.0 / b - 1.0) * (b - x);
      break;
    }
    case ParetoCase::kII3:
      return Verdict::kCaseII3NeverImproves;
  }
  return improves ? Verdict::kImproves : Verdict::kWorsens;
}

double mm_regime_threshold(const MarketParams& params) {
  require_pareto(params, "mm_regime_threshold");
  const double p = params.p;
  const double b = std::pow(params.beta, params.dist.alpha());
  return (1.0 - p) * (1.0 - b) / (1.0 - p + 1.0 - b);
}

double pauc_regime_threshold(const MarketParams& params) {
  require_pareto(params, "pauc_regime_threshold");
  const double p = params.p;
  const double b = std::pow(params.beta, params.dist.alpha());
  return (1.0 - p) * (1.0 - b) / (2.0 - p - b - p * b + p * b * b);
}

OptimalInterval optimal_interval_mm(const MarketParams& params, double c_hat) {
  require_pareto(params, "optimal_interval_mm");
  VoucherBudget{c_hat}.validate();
  const double p = params.p;
  const double b = std::pow(params.beta, params.dist.alpha());
  const double inv = -1.0 / params.dist.alpha();
  const bool ok = params.assumption_holds();
  if (c_hat == 0.0) return {DebiasInterval::none(), (1.0 - p) * (1.0 - b), ok};

  if (c_hat >= mm_regime_threshold(params)) {
    const double denom = 1.0 / b - p;
    const double z1 = std::pow(((1.0 - p) + (1.0 / b - 1.0) * c_hat) / denom, inv);
    const double z2 = std::pow((1.0 - p) * (1.0 - c_hat) / denom, inv);
    const double mm = (1.0 - p) * (1.0 - b) * (1.0 - c_hat) / (1.0 - p * b);
    return {{z1, z2}, mm, ok};
  }
  const double lower_tail = (1.0 - p - c_hat) * b / (1.0 - p);
  const double z1 = std::pow(lower_tail + c_hat, inv);
  const double z2 = std::pow(lower_tail, inv);
  const double mm = (1.0 - p - c_hat) * (1.0 - b) + p * c_hat;
  return {{z1, z2}, mm, ok};
}

OptimalInterval optimal_interval_pauc(const MarketParams& params, double c_hat) {
  require_pareto(params, "optimal_interval_pauc");
  VoucherBudget{c_hat}.validate();
  const double p = params.p;
  const double b = std::pow(params.beta, params.dist.alpha());
  const double inv = -1.0 / params.dist.alpha();
  const bool ok = params.assumption_holds() && p < 0.5;
  if (c_hat == 0.0) return {DebiasInterval::none(), 0.5 * (1.0 - p) * (1.0 - b), ok};

  if (c_hat >= pauc_regime_threshold(params)) {
    const double denom = p * b + 1.0 / b - 2.0 * p;
    const double x = (1.0 - p) * (1.0 - c_hat) / denom;
    const double sigma = 0.5 * (1.0 - p) * (1.0 - b) * (1.0 / b - p) *
                         (1.0 - c_hat) * (1.0 - c_hat) / denom;
    return {{std::pow(x + c_hat, inv), std::pow(x, inv)}, sigma, ok};
  }
  const double lead = (p * b - 1.0) * c_hat + (1.0 - p);
  const double x = lead / ((1.0 - p) / b);
  const double sigma = 0.5 * (1.0 - p) * (1.0 - c_hat) * (1.0 - c_hat) -
                       0.5 * b * (lead * lead / (1.0 - p) + p * c_hat * c_hat);
  return {{std::pow(x + c_hat, inv), std::pow(x, inv)}, sigma, ok};
}

OptimalInterval optimal_interval_numeric(const MarketParams& params,
                                         double c_hat, Measure measure,
                                         int grid_size) {
  VoucherBudget{c_hat}.validate();
  if (grid_size < 1) throw DomainError("intervention", "grid", "must be positive");
  const auto score = [&](const DebiasInterval& interval) {
    return measure == Measure::kMm ? mistreatment_max_numeric(params, interval)
                                   : pauc_quadrature(params, interval);
  };
  if (c_hat == 0.0) return {DebiasInterval::none(), score(DebiasInterval::none()), true};

  constexpr double kEdge = 1e-4;
  const double top = 1.0 - kEdge;
  const double bottom = std::min(c_hat + kEdge, top);
  const int n = bottom < top ? grid_size : 1;
  std::vector<DebiasInterval> windows(static_cast<std::size_t>(n));
  std::vector<double> values(static_cast<std::size_t>(n));
  parallel_for(windows.size(), [&](std::size_t i) {
    const double u = n == 1 ? std::max(top, c_hat)
                            : top - (top - bottom) * static_cast<double>(i) / (n - 1);
    const double upper = std::max(u - c_hat, 0.0);
    windows[i] = {params.dist.inv_ccdf(std::min(u, 1.0)), params.dist.inv_ccdf(upper)};
    values[i] = score(windows[i]);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return {windows[best], values[best], true};
}

}  // namespace feederlab
