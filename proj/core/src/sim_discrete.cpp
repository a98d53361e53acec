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


#include "feederlab/sim_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "feederlab/error.hpp"
#include "feederlab/parallel.hpp"
#include "random.hpp"

namespace feederlab {
namespace {

void fail(const char* parameter, const std::string& message) {
  throw DomainError("sim_discrete", parameter, message);
}

SimSummary summarize(std::vector<double> pauc, std::vector<double> mm) {
  const auto mean_sem = [](const std::vector<double>& v, double& mean, double& sem) {
    const double n = static_cast<double>(v.size());
    mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    sem = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  };
  SimSummary s;
  mean_sem(pauc, s.pauc_mean, s.pauc_sem);
  mean_sem(mm, s.mm_mean, s.mm_sem);
  s.pauc = std::move(pauc);
  s.mm = std::move(mm);
  return s;
}

double score(const DiscreteMetrics& m, Measure measure) {
  return measure == Measure::kMm ? m.mm : m.pauc;
}

}  // namespace

void SimConfig::validate() const {
  market.validate();
  if (n_schools < 1) fail("n_schools", "must be positive");
  if (capacity < 1) fail("capacity", "must be positive");
  if (n_students != static_cast<std::int64_t>(n_schools) * capacity) {
    fail("n_students", "must equal n_schools * capacity");
  }
  if (!(epsilon >= 0.0)) fail("epsilon", "must be nonnegative");
  if (!(market.beta - epsilon > 0.0)) fail("epsilon", "beta - epsilon must be positive");
  if (!(take_up >= 0.0 && take_up <= 1.0)) fail("take_up", "must lie in [0, 1]");
  if (replications < 1) fail("replications", "must be positive");
}

std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate) {
  return base_seed + static_cast<std::uint64_t>(replicate);
}

std::uint64_t voucher_seed(std::uint64_t seed) {
  return seed ^ 0x9E3779B97F4A7C15ULL;
}

DiscreteMarket build_market(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  detail::Engine rng(seed);
  DiscreteMarket market;
  market.n_schools = config.n_schools;
  market.capacity = config.capacity;
  market.students.reserve(static_cast<std::size_t>(config.n_students));
  const MarketParams& params = config.market;
  for (std::int64_t i = 0; i < config.n_students; ++i) {
    DiscreteStudent s{};
    s.z = detail::draw(params.dist, rng);
    s.group = detail::uniform01(rng) < params.p ? Group::kG2 : Group::kG1;
    s.beta = 1.0;
    if (s.group == Group::kG2) {
      s.beta = params.beta;
      if (config.epsilon > 0.0) {
        const double u = detail::uniform01(rng);
        s.beta = std::min(1.0, params.beta - config.epsilon + 2.0 * config.epsilon * u);
      }
    }
    s.z_hat = s.beta * s.z;
    market.students.push_back(s);
  }
  market.assignment_unbiased = assign(market, false);
  market.assignment_biased = assign(market, true);
  return market;
}

std::vector<int> assign(const DiscreteMarket& market, bool use_perceived) {
  const auto& st = market.students;
  std::vector<std::size_t> order(st.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ka = use_perceived ? st[a].z_hat : st[a].z;
    const double kb = use_perceived ? st[b].z_hat : st[b].z;
    if (ka != kb) return ka > kb;
    if (st[a].z != st[b].z) return st[a].z > st[b].z;
    return a < b;
  });
  std::vector<int> school(st.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    school[order[k]] = static_cast<int>(k / static_cast<std::size_t>(market.capacity));
  }
  return school;
}

DiscreteMarket apply_vouchers(const DiscreteMarket& market,
                              const DebiasInterval& interval, double take_up,
                              std::uint64_t seed) {
  if (!(take_up >= 0.0 && take_up <= 1.0)) fail("take_up", "must lie in [0, 1]");
  DiscreteMarket out = market;
  if (interval.empty() || take_up == 0.0) return out;
  detail::Engine rng(seed);
  bool changed = false;
  for (auto& s : out.students) {
    if (s.group != Group::kG2 || s.z < interval.z1 || s.z > interval.z2) continue;
    if (detail::uniform01(rng) < take_up && s.z_hat != s.z) {
      s.z_hat = s.z;
      changed = true;
    }
  }
  if (changed) out.assignment_biased = assign(out, true);
  return out;
}

DiscreteMetrics metrics(const DiscreteMarket& market) {
  const double n_schools = static_cast<double>(market.n_schools);
  double positive = 0.0;
  double worst = 0.0;
  std::size_t g2 = 0;
  for (std::size_t i = 0; i < market.students.size(); ++i) {
    const double d =
        (market.assignment_biased[i] - market.assignment_unbiased[i]) / n_schools;
    worst = std::max(worst, d);
    if (market.students[i].group == Group::kG2) {
      ++g2;
      positive += std::max(d, 0.0);
    }
  }
  return {g2 > 0 ? positive / static_cast<double>(g2) : 0.0, worst};
}

SimResult run_experiment(const SimConfig& config, const DebiasInterval& interval) {
  config.validate();
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<double> base_pauc(reps), base_mm(reps), post_pauc(reps), post_mm(reps);
  parallel_for(reps, [&](std::size_t r) {
    const std::uint64_t seed = replicate_seed(config.base_seed, static_cast<int>(r));
    const DiscreteMarket market = build_market(config, seed);
    const DiscreteMetrics before = metrics(market);
    base_pauc[r] = before.pauc;
    base_mm[r] = before.mm;
    if (interval.empty()) {
      post_pauc[r] = before.pauc;
      post_mm[r] = before.mm;
      return;
    }
    const DiscreteMetrics after = metrics(
        apply_vouchers(market, interval, config.take_up, voucher_seed(seed)));
    post_pauc[r] = after.pauc;
    post_mm[r] = after.mm;
  });
  return {interval, summarize(std::move(base_pauc), std::move(base_mm)),
          summarize(std::move(post_pauc), std::move(post_mm))};
}

EmpiricalBest empirical_best_interval(const SimConfig& config, double c_hat,
                                      Measure measure, int n_windows) {
  config.validate();
  VoucherBudget{c_hat}.validate();
  if (n_windows < 1) fail("n_windows", "must be positive");
  const auto reps = static_cast<std::size_t>(config.replications);
  const auto k = static_cast<std::int64_t>(
      std::floor(c_hat * static_cast<double>(config.n_students)));
  if (k == 0) {
    std::vector<double> values(reps);
    parallel_for(reps, [&](std::size_t r) {
      values[r] = score(metrics(build_market(
                            config, replicate_seed(config.base_seed, static_cast<int>(r)))),
                        measure);
    });
    return {DebiasInterval::none(),
            std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(reps), 0};
  }

  std::vector<DiscreteMarket> markets(reps);
  parallel_for(reps, [&](std::size_t r) {
    markets[r] = build_market(config, replicate_seed(config.base_seed, static_cast<int>(r)));
  });
  std::vector<double> sorted;
  sorted.reserve(markets[0].students.size());
  for (const auto& s : markets[0].students) sorted.push_back(s.z);
  std::sort(sorted.begin(), sorted.end());

  const std::int64_t last_start = config.n_students - k;
  const int windows = static_cast<int>(std::min<std::int64_t>(n_windows, last_start + 1));
  std::vector<DebiasInterval> candidates(static_cast<std::size_t>(windows));
  for (int w = 0; w < windows; ++w) {
    const std::int64_t start =
        windows == 1 ? 0 : (last_start * w + (windows - 1) / 2) / (windows - 1);
    candidates[static_cast<std::size_t>(w)] = {
        sorted[static_cast<std::size_t>(start)],
        sorted[static_cast<std::size_t>(start + k - 1)]};
  }

  std::vector<double> totals(candidates.size() * reps);
  parallel_for(totals.size(), [&](std::size_t job) {
    const std::size_t w = job / reps;
    const std::size_t r = job % reps;
    const std::uint64_t seed = replicate_seed(config.base_seed, static_cast<int>(r));
    totals[job] = score(metrics(apply_vouchers(markets[r], candidates[w],
                                               config.take_up, voucher_seed(seed))),
                        measure);
  });
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t w = 0; w < candidates.size(); ++w) {
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) sum += totals[w * reps + r];
    const double mean = sum / static_cast<double>(reps);
    if (w == 0 || mean < best_value) {
      best = w;
      best_value = mean;
    }
  }
  return {candidates[best], best_value, windows};
}

}  // namespace feederlab
