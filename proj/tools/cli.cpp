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


#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "feederlab/distribution.hpp"
#include "feederlab/error.hpp"
#include "feederlab/ingest.hpp"
#include "feederlab/intervention.hpp"
#include "feederlab/interviewing.hpp"
#include "feederlab/market.hpp"
#include "feederlab/school_metrics.hpp"
#include "feederlab/sim_discrete.hpp"
#include "table.hpp"

namespace feederlab::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ModelOptions {
  std::string preset;
  std::string dist;
  std::optional<double> alpha, beta, p, mean, sd, lower, upper, c_hat;
};

struct OutputOptions {
  std::string format = "csv";
  std::string out;
};

struct Model {
  MarketParams params;
  double c_hat;
};

void add_model_options(CLI::App* app, ModelOptions& m) {
  app->add_option("--preset", m.preset, "pareto or sat")
      ->check(CLI::IsMember({"pareto", "sat"}));
  app->add_option("--dist", m.dist, "pareto, normal or truncnormal")
      ->check(CLI::IsMember({"pareto", "normal", "truncnormal"}));
  app->add_option("--alpha", m.alpha, "Pareto shape");
  app->add_option("--beta", m.beta, "bias factor in (0, 1]");
  app->add_option("--p", m.p, "fraction of G2 students");
  app->add_option("--mean", m.mean, "Normal mean");
  app->add_option("--sd", m.sd, "Normal standard deviation");
  app->add_option("--lower", m.lower, "truncation lower bound (truncnormal)");
  app->add_option("--upper", m.upper, "truncation upper bound (truncnormal)");
}

void add_budget_option(CLI::App* app, ModelOptions& m) {
  app->add_option("--c-hat", m.c_hat, "voucher budget (mass of the potential law)");
}

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", o.out, "output file (default stdout)");
}

// Preset first, then explicit flags on top.
Model resolve(const ModelOptions& m, const std::string& default_preset) {
  std::string preset = m.preset;
  if (preset.empty()) {
    preset = (m.dist == "normal" || m.dist == "truncnormal") ? "sat" : default_preset;
  }
  std::string kind = preset == "sat" ? "normal" : "pareto";
  double alpha = 3.0, beta = 0.8, p = 0.25, mean = 1550.0, sd = 310.0;
  double lower = kMinSat, upper = kMaxSat, c_hat = 0.1;
  if (preset == "sat") {
    p = 0.5;
    c_hat = 0.3;
  }
  if (!m.dist.empty()) kind = m.dist;
  alpha = m.alpha.value_or(alpha);
  beta = m.beta.value_or(beta);
  p = m.p.value_or(p);
  mean = m.mean.value_or(mean);
  sd = m.sd.value_or(sd);
  lower = m.lower.value_or(lower);
  upper = m.upper.value_or(upper);
  c_hat = m.c_hat.value_or(c_hat);

  Distribution dist = kind == "pareto" ? Distribution::pareto(alpha)
                      : kind == "normal"
                          ? Distribution::normal(mean, sd)
                          : Distribution::truncated_normal(mean, sd, lower, upper);
  VoucherBudget{c_hat}.validate();
  return {MarketParams::make(p, beta, std::move(dist)), c_hat};
}

std::vector<double> school_grid(int n) {
  if (n < 2) throw DomainError("cli", "grid", "must be at least 2");
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = 0.001 + 0.999 * i / (n - 1);
  return s;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DataError(path + ": cannot open for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit(const Table& table, const OutputOptions& o, std::ostream& out,
          bool single_object = false) {
  Sink sink(o.out, out);
  if (o.format == "json") {
    write_json(table, sink.stream(), single_object);
  } else {
    write_csv(table, sink.stream());
  }
}

// ---- analyze -------------------------------------------------------------

Table displacement_table(const MarketParams& params, int grid) {
  if (grid < 2) throw DomainError("cli", "grid", "must be at least 2");
  const Distribution& d = params.dist;
  const double top = std::isfinite(d.support_min()) ? 1.0 : 0.9999;
  std::vector<double> zs;
  for (int i = 0; i < grid; ++i) {
    zs.push_back(d.inv_ccdf(top - (top - 0.0001) * i / (grid - 1)));
  }
  zs.push_back(max_displacement(params).at_z);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  Table t{{"z", "group", "displacement"}, {}};
  for (double z : zs) {
    for (Group g : {Group::kG1, Group::kG2}) {
      t.add_row({z, std::string(group_name(g)), displacement(params, z, g)});
    }
  }
  return t;
}

Table utility_table(const MarketParams& params, int grid) {
  Table t{{"s", "model", "utility"}, {}};
  for (double s : school_grid(grid)) {
    t.add_row({s, std::string("unbiased"), utility_unbiased(params, s)});
    t.add_row({s, std::string("biased"), utility_biased(params, s)});
  }
  return t;
}

Table diversity_table(const MarketParams& params, int grid) {
  Table t{{"s", "model", "diversity"}, {}};
  for (double s : school_grid(grid)) {
    t.add_row({s, std::string("unbiased"), diversity(params, s, false)});
    t.add_row({s, std::string("biased"), diversity(params, s, true)});
  }
  return t;
}

Table interview_table(const MarketParams& params, double iv, int grid) {
  Table t{{"s", "scenario", "utility"}, {}};
  for (double s : school_grid(grid)) {
    t.add_row({s, std::string("unbiased"), utility_unbiased(params, s)});
    t.add_row({s, std::string("biased"), utility_biased(params, s)});
    t.add_row({s, std::string("all_interview"), utility_all_interview(params, s, iv)});
    t.add_row({s, std::string("solo_interview"), utility_solo_interview(params, s)});
    t.add_row({s, std::string("solo_abstain"), utility_solo_abstain(params, s, iv)});
  }
  return t;
}

// ---- intervene -------------------------------------------------------------

struct Choice {
  OptimalInterval result;
  std::string method;
};

Choice choose_interval(const MarketParams& params, double c_hat, Measure measure,
                       bool numeric, int grid) {
  if (numeric || !params.dist.is_pareto()) {
    return {optimal_interval_numeric(params, c_hat, measure, grid), "grid_search"};
  }
  if (measure == Measure::kMm) return {optimal_interval_mm(params, c_hat), "closed_form"};
  return {optimal_interval_pauc(params, c_hat), "closed_form"};
}

Table intervene_table(const MarketParams& params, double c_hat, Measure measure,
                      bool numeric, int grid, std::ostream& err) {
  const Choice c = choose_interval(params, c_hat, measure, numeric, grid);
  if (!c.result.precondition_ok) {
    err << "warning: closed-form precondition fails for these parameters; "
           "the interval carries no optimality guarantee\n";
  }
  const DebiasInterval none = DebiasInterval::none();
  const double baseline = measure == Measure::kMm ? mistreatment_max(params, none)
                                                   : pauc(params, none);
  std::string pcase = "n/a", verdict = "n/a";
  if (params.dist.is_pareto() && !c.result.interval.empty()) {
    pcase = pareto_case_name(classify_case(params, c.result.interval));
    verdict = verdict_name(improvement_condition(params, c.result.interval));
  }
  Table t{{"measure", "method", "c_hat", "z1", "z2", "budget", "value", "baseline",
           "precondition_ok", "case", "verdict"},
          {}};
  t.add_row({std::string(measure_name(measure)), c.method, c_hat, c.result.interval.z1,
             c.result.interval.z2, budget_of_interval(params, c.result.interval),
             c.result.value, baseline,
             std::string(c.result.precondition_ok ? "true" : "false"), pcase, verdict});
  return t;
}

// ---- simulate --------------------------------------------------------------

struct SimOptions {
  std::vector<int> n_schools{100};
  int capacity = 100;
  std::vector<double> epsilon{0.0};
  std::vector<double> take_up{1.0};
  int replications = 100;
  std::uint64_t seed = 1;
  std::string measure = "pauc";
  std::optional<double> z1, z2;
  int windows = 0;
  int grid = 400;
};

nlohmann::json summary_json(const SimSummary& s) {
  return {{"pauc_mean", s.pauc_mean}, {"pauc_sem", s.pauc_sem},
          {"mm_mean", s.mm_mean},     {"mm_sem", s.mm_sem},
          {"per_replicate", {{"pauc", s.pauc}, {"mm", s.mm}}}};
}

nlohmann::json bound_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

int run_simulate(const Model& model, const SimOptions& so, const OutputOptions& o,
                 std::ostream& out) {
  const Measure measure = parse_measure(so.measure);
  DebiasInterval interval;
  if (so.z1 || so.z2) {
    if (!so.z1 || !so.z2) throw DomainError("cli", "z1", "--z1 and --z2 go together");
    interval = {*so.z1, *so.z2};
  } else {
    interval = choose_interval(model.params, model.c_hat, measure, false, so.grid)
                   .result.interval;
  }
  Table t{{"n_schools", "capacity", "epsilon", "take_up", "replications", "z1", "z2",
           "baseline_pauc_mean", "baseline_pauc_sem", "baseline_mm_mean",
           "baseline_mm_sem", "pauc_mean", "pauc_sem", "mm_mean", "mm_sem",
           "empirical_z1", "empirical_z2", "empirical_value"},
          {}};
  nlohmann::json records = nlohmann::json::array();
  for (int n : so.n_schools) {
    for (double eps : so.epsilon) {
      for (double take : so.take_up) {
        SimConfig config;
        config.n_schools = n;
        config.capacity = so.capacity;
        config.n_students = static_cast<std::int64_t>(n) * so.capacity;
        config.market = model.params;
        config.epsilon = eps;
        config.take_up = take;
        config.replications = so.replications;
        config.base_seed = so.seed;
        const SimResult r = run_experiment(config, interval);
        double ez1 = std::nan(""), ez2 = std::nan(""), ev = std::nan("");
        if (so.windows > 0) {
          const EmpiricalBest e =
              empirical_best_interval(config, model.c_hat, measure, so.windows);
          ez1 = e.interval.z1;
          ez2 = e.interval.z2;
          ev = e.value;
        }
        t.add_row({static_cast<double>(n), static_cast<double>(so.capacity), eps, take,
                   static_cast<double>(so.replications), interval.z1, interval.z2,
                   r.baseline.pauc_mean, r.baseline.pauc_sem, r.baseline.mm_mean,
                   r.baseline.mm_sem, r.intervened.pauc_mean, r.intervened.pauc_sem,
                   r.intervened.mm_mean, r.intervened.mm_sem, ez1, ez2, ev});
        nlohmann::json rec = {
            {"config",
             {{"n_students", config.n_students}, {"n_schools", n},
              {"capacity", so.capacity}, {"p", model.params.p},
              {"beta", model.params.beta}, {"dist", model.params.dist.describe()},
              {"epsilon", eps}, {"take_up", take},
              {"replications", so.replications}, {"base_seed", so.seed}}},
            {"interval", {{"z1", bound_json(interval.z1)}, {"z2", bound_json(interval.z2)}}},
            {"baseline", summary_json(r.baseline)},
            {"intervened", summary_json(r.intervened)}};
        if (so.windows > 0) {
          rec["empirical_best"] = {{"z1", bound_json(ez1)}, {"z2", bound_json(ez2)},
                                   {"value", ev}, {"measure", so.measure}};
        }
        records.push_back(std::move(rec));
      }
    }
  }
  Sink sink(o.out, out);
  if (o.format == "json") {
    sink.stream() << records.dump(2) << '\n';
  } else {
    write_csv(t, sink.stream());
  }
  return kExitOk;
}

// ---- ingest ----------------------------------------------------------------

struct IngestOptions {
  std::string input;
  int synthetic = 0;
  double synthetic_mean = 1550.0;
  double synthetic_sd = 310.0;
  double synthetic_within_sd = 100.0;
  double synthetic_beta = 0.8;
  std::int64_t takers = 100;
  double sd = 310.0;
  std::uint64_t seed = 1;
  std::string estimator = "mean";
  std::string cohort_out;
  std::string schools_out;
};

Table ingest_table(const IngestOptions& io) {
  std::vector<SchoolRecord> records;
  if (!io.input.empty()) {
    records = load_schools(io.input);
  } else {
    SyntheticSpec spec;
    spec.n_schools = io.synthetic;
    spec.takers_per_school = io.takers;
    spec.mean = io.synthetic_mean;
    spec.sd = io.synthetic_sd;
    spec.within_sd = io.synthetic_within_sd;
    spec.beta = io.synthetic_beta;
    records = synthetic_schools(spec, io.seed);
  }
  if (!io.schools_out.empty()) {
    std::ofstream f(io.schools_out);
    if (!f) throw DataError(io.schools_out + ": cannot open for writing");
    write_schools_csv(records, f);
  }
  const EniSplit split = split_by_eni(records);
  const SimulatedCohort cohort = simulate_students(records, io.sd, io.seed);
  if (!io.cohort_out.empty()) {
    std::ofstream f(io.cohort_out);
    if (!f) throw DataError(io.cohort_out + ": cannot open for writing");
    write_cohort_csv(cohort, f);
  }
  std::vector<double> g1, g2;
  for (std::size_t i = 0; i < cohort.scores.size(); ++i) {
    (cohort.groups[i] == Group::kG2 ? g2 : g1).push_back(cohort.scores[i]);
  }
  const double beta = estimate_beta(
      g1, g2, io.estimator == "median" ? BetaEstimator::kMedianRatio : BetaEstimator::kMeanRatio);
  const Distribution fit = fit_potential_dist(cohort, beta);
  Table t{{"n_schools", "n_students", "median_eni", "p", "beta", "mean", "sd"}, {}};
  t.add_row({static_cast<double>(records.size()), static_cast<double>(cohort.scores.size()),
             split.median_eni, split.p, beta, fit.mean(), fit.stddev()});
  return t;
}

// ---- tables ----------------------------------------------------------------

Table table2(const MarketParams& params) {
  Table t{{"c_hat", "mm_z1", "mm_z2", "mm_after", "pauc_z1", "pauc_z2", "pauc_after"}, {}};
  for (int k = 1; k <= 8; ++k) {
    const double c = k / 10.0;
    const OptimalInterval mm = optimal_interval_mm(params, c);
    const OptimalInterval pa = optimal_interval_pauc(params, c);
    t.add_row({c, mm.interval.z1, mm.interval.z2, mm.value, pa.interval.z1,
               pa.interval.z2, pa.value});
  }
  return t;
}

Table table3(const MarketParams& params, double c_hat, int grid) {
  struct Row {
    std::string label;
    DebiasInterval interval;
  };
  std::vector<Row> rows{{"empty", DebiasInterval::none()},
                        {"bottom", {-kInf, 1387.0}},
                        {"window_1229_1511", {1229.0, 1511.0}},
                        {"window_1387_1629", {1387.0, 1629.0}},
                        {"window_1511_1759", {1511.0, 1759.0}},
                        {"window_1695_2187", {1695.0, 2187.0}},
                        {"window_1700_2231", {1700.0, 2231.0}},
                        {"top", {1713.0, kInf}}};
  rows.push_back({"grid_opt_pauc",
                  optimal_interval_numeric(params, c_hat, Measure::kPauc, grid).interval});
  rows.push_back({"grid_opt_mm",
                  optimal_interval_numeric(params, c_hat, Measure::kMm, grid).interval});
  Table t{{"label", "z1", "z2", "budget", "pauc", "mm"}, {}};
  for (const auto& r : rows) {
    t.add_row({r.label, r.interval.z1, r.interval.z2, budget_of_interval(params, r.interval),
               pauc_quadrature(params, r.interval),
               mistreatment_max_numeric(params, r.interval)});
  }
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"feederlab: biased matching markets and voucher interventions"};
  app.require_subcommand(1);

  ModelOptions model_opts;
  OutputOptions output;
  int grid = 1000;
  double iv = 0.05;
  std::string measure = "mm";
  bool numeric = false;
  int search_grid = 2000;
  SimOptions sim;
  IngestOptions ing;
  int table_grid = 400;

  CLI::App* analyze = app.add_subcommand("analyze", "displacement, utility or diversity curves");
  analyze->require_subcommand(1);
  std::vector<CLI::App*> analyze_subs{
      analyze->add_subcommand("displacement", "rank displacement by true potential"),
      analyze->add_subcommand("utility", "school utility by school rank"),
      analyze->add_subcommand("diversity", "share of G2 students by school rank")};
  for (CLI::App* sub : analyze_subs) {
    add_model_options(sub, model_opts);
    add_output_options(sub, output);
    sub->add_option("--grid", grid, "number of grid points");
  }

  CLI::App* interview = app.add_subcommand("interview", "school utilities under interviewing");
  add_model_options(interview, model_opts);
  add_output_options(interview, output);
  interview->add_option("--iv", iv, "interview capacity (rank window)");
  interview->add_option("--grid", grid, "number of school ranks");

  CLI::App* intervene = app.add_subcommand("intervene", "optimal voucher interval");
  add_model_options(intervene, model_opts);
  add_budget_option(intervene, model_opts);
  add_output_options(intervene, output);
  intervene->add_option("--measure", measure, "mm or pauc")
      ->check(CLI::IsMember({"mm", "pauc"}));
  intervene->add_flag("--numeric", numeric, "grid search instead of the closed form");
  intervene->add_option("--grid", search_grid, "sliding-window grid size");

  CLI::App* simulate = app.add_subcommand("simulate", "discrete Monte Carlo sweeps");
  add_model_options(simulate, model_opts);
  add_budget_option(simulate, model_opts);
  add_output_options(simulate, output);
  simulate->add_option("--n-schools", sim.n_schools, "comma-separated school counts")
      ->delimiter(',');
  simulate->add_option("--capacity", sim.capacity, "seats per school");
  simulate->add_option("--epsilon", sim.epsilon, "comma-separated bias spreads")
      ->delimiter(',');
  simulate->add_option("--take-up", sim.take_up, "comma-separated take-up probabilities")
      ->delimiter(',');
  simulate->add_option("--replications", sim.replications, "replications per setting");
  simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--measure", sim.measure, "measure for the interval")
      ->check(CLI::IsMember({"mm", "pauc"}));
  simulate->add_option("--z1", sim.z1, "explicit interval lower end");
  simulate->add_option("--z2", sim.z2, "explicit interval upper end");
  simulate->add_option("--windows", sim.windows,
                       "sliding windows for the empirical best interval (0 skips)");
  simulate->add_option("--grid", sim.grid, "grid size for non-Pareto interval search");

  CLI::App* ingest = app.add_subcommand("ingest", "SAT case-study pipeline");
  add_output_options(ingest, output);
  auto* input_opt = ingest->add_option("--input", ing.input, "school CSV")
                        ->check(CLI::ExistingFile);
  auto* synth_opt =
      ingest->add_option("--synthetic", ing.synthetic, "generate this many synthetic schools");
  input_opt->excludes(synth_opt);
  ingest->add_option("--synthetic-mean", ing.synthetic_mean, "synthetic potential mean");
  ingest->add_option("--synthetic-sd", ing.synthetic_sd, "synthetic potential sd");
  ingest->add_option("--synthetic-within-sd", ing.synthetic_within_sd,
                     "synthetic within-school sd");
  ingest->add_option("--synthetic-beta", ing.synthetic_beta, "synthetic bias factor");
  ingest->add_option("--takers", ing.takers, "synthetic takers per school");
  ingest->add_option("--sd", ing.sd, "per-student score sd");
  ingest->add_option("--seed", ing.seed, "seed");
  ingest->add_option("--beta-estimator", ing.estimator, "mean or median")
      ->check(CLI::IsMember({"mean", "median"}));
  ingest->add_option("--cohort-out", ing.cohort_out, "write simulated cohort CSV");
  ingest->add_option("--schools-out", ing.schools_out, "write the school table CSV");

  CLI::App* t2 = app.add_subcommand("table2", "closed-form optimal intervals, 8 budgets");
  add_model_options(t2, model_opts);
  add_output_options(t2, output);

  CLI::App* t3 = app.add_subcommand("table3", "Normal case study windows");
  add_model_options(t3, model_opts);
  add_budget_option(t3, model_opts);
  add_output_options(t3, output);
  t3->add_option("--grid", table_grid, "sliding-window grid size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      const Model m = resolve(model_opts, "pareto");
      if (analyze_subs[0]->parsed()) emit(displacement_table(m.params, grid), output, out);
      if (analyze_subs[1]->parsed()) emit(utility_table(m.params, grid), output, out);
      if (analyze_subs[2]->parsed()) emit(diversity_table(m.params, grid), output, out);
    } else if (interview->parsed()) {
      if (!(iv >= 0.0 && iv <= 1.0)) throw DomainError("cli", "iv", "must lie in [0, 1]");
      emit(interview_table(resolve(model_opts, "pareto").params, iv, grid), output, out);
    } else if (intervene->parsed()) {
      const Model m = resolve(model_opts, "pareto");
      emit(intervene_table(m.params, m.c_hat, parse_measure(measure), numeric, search_grid, err),
           output, out, true);
    } else if (simulate->parsed()) {
      return run_simulate(resolve(model_opts, "pareto"), sim, output, out);
    } else if (ingest->parsed()) {
      if (ing.input.empty() && ing.synthetic == 0) {
        throw DomainError("cli", "input", "pass --input or --synthetic");
      }
      emit(ingest_table(ing), output, out, true);
    } else if (t2->parsed()) {
      emit(table2(resolve(model_opts, "pareto").params), output, out);
    } else if (t3->parsed()) {
      const Model m = resolve(model_opts, "sat");
      emit(table3(m.params, m.c_hat, table_grid), output, out);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace feederlab::cli
