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


#include "feederlab/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "feederlab/error.hpp"
#include "random.hpp"

namespace feederlab {
namespace {

constexpr const char* kHeader = "school_id,avg_sat,num_takers,eni";

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.pop_back();
  }
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(strip(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void row_error(const std::string& source, int row,
                            const char* field, const std::string& message) {
  throw DataError(source + ": row " + std::to_string(row) + ": field " + field +
                  ": " + message);
}

template <typename T>
T parse_number(const std::string& text, const std::string& source, int row,
               const char* field) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    row_error(source, row, field, "not a number: '" + text + "'");
  }
  return value;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<SchoolRecord> load_schools(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  return parse_schools(in, path);
}

std::vector<SchoolRecord> parse_schools(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": missing header");
  if (strip(line) != kHeader) {
    throw DataError(source + ": expected header '" + std::string(kHeader) + "'");
  }
  std::vector<SchoolRecord> records;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (strip(line).empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) {
      row_error(source, row, "*", "expected 4 fields, got " + std::to_string(f.size()));
    }
    SchoolRecord r;
    r.school_id = f[0];
    if (r.school_id.empty()) row_error(source, row, "school_id", "empty");
    r.avg_sat = parse_number<double>(f[1], source, row, "avg_sat");
    r.num_takers = parse_number<std::int64_t>(f[2], source, row, "num_takers");
    r.eni = parse_number<double>(f[3], source, row, "eni");
    if (!(r.avg_sat >= kMinSat && r.avg_sat <= kMaxSat)) {
      row_error(source, row, "avg_sat", "outside [600, 2400]");
    }
    if (r.num_takers < 0) row_error(source, row, "num_takers", "negative");
    if (!(r.eni >= 0.0 && r.eni <= 1.0)) row_error(source, row, "eni", "outside [0, 1]");
    records.push_back(std::move(r));
  }
  return records;
}

void write_schools_csv(const std::vector<SchoolRecord>& records, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << r.school_id << ',' << format_double(r.avg_sat) << ',' << r.num_takers
        << ',' << format_double(r.eni) << '\n';
  }
}

EniSplit split_by_eni(const std::vector<SchoolRecord>& records) {
  EniSplit split{{}, 0.0, 0.0};
  if (records.empty()) return split;
  std::vector<double> eni;
  eni.reserve(records.size());
  for (const auto& r : records) eni.push_back(r.eni);
  split.median_eni = median(eni);
  double g2 = 0.0, total = 0.0;
  for (const auto& r : records) {
    const Group g = r.eni > split.median_eni ? Group::kG2 : Group::kG1;
    split.groups.push_back(g);
    total += static_cast<double>(r.num_takers);
    if (g == Group::kG2) g2 += static_cast<double>(r.num_takers);
  }
  split.p = total > 0.0 ? g2 / total : 0.0;
  return split;
}

SimulatedCohort simulate_students(const std::vector<SchoolRecord>& records,
                                  double sd, std::uint64_t seed) {
  if (!(sd >= 0.0)) throw DomainError("ingest", "sd", "must be nonnegative");
  const EniSplit split = split_by_eni(records);
  SimulatedCohort cohort;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SchoolRecord& r = records[i];
    detail::Engine rng(seed + i);
    for (std::int64_t k = 0; k < r.num_takers; ++k) {
      const double score = r.avg_sat + sd * detail::standard_normal(rng);
      cohort.scores.push_back(std::clamp(score, kMinSat, kMaxSat));
      cohort.groups.push_back(split.groups[i]);
      cohort.school_ids.push_back(r.school_id);
    }
  }
  return cohort;
}

void write_cohort_csv(const SimulatedCohort& cohort, std::ostream& out) {
  out << "score,group,school_id\n";
  for (std::size_t i = 0; i < cohort.scores.size(); ++i) {
    out << format_double(cohort.scores[i]) << ',' << group_name(cohort.groups[i])
        << ',' << cohort.school_ids[i] << '\n';
  }
}

double estimate_beta(const std::vector<double>& g1_scores,
                     const std::vector<double>& g2_scores,
                     BetaEstimator estimator) {
  if (g1_scores.empty()) throw DomainError("ingest", "g1_scores", "empty group");
  if (g2_scores.empty()) throw DomainError("ingest", "g2_scores", "empty group");
  double ratio = 0.0;
  if (estimator == BetaEstimator::kMeanRatio) {
    const auto mean = [](const std::vector<double>& v) {
      return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    };
    ratio = mean(g2_scores) / mean(g1_scores);
  } else {
    ratio = median(g2_scores) / median(g1_scores);
  }
  if (!(ratio > 0.0)) throw DomainError("ingest", "beta", "nonpositive location ratio");
  return std::min(ratio, 1.0);
}

Distribution fit_potential_dist(const SimulatedCohort& cohort, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("ingest", "beta", "must lie in (0, 1]");
  const std::size_t n = cohort.scores.size();
  if (n < 2) throw DomainError("ingest", "cohort", "needs at least two scores");
  std::vector<double> pooled(n);
  for (std::size_t i = 0; i < n; ++i) {
    pooled[i] = cohort.groups[i] == Group::kG2 ? cohort.scores[i] / beta : cohort.scores[i];
  }
  const double mean = std::accumulate(pooled.begin(), pooled.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : pooled) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw DomainError("ingest", "sd", "degenerate variance");
  return Distribution::normal(mean, sd);
}

std::vector<SchoolRecord> synthetic_schools(const SyntheticSpec& spec,
                                            std::uint64_t seed) {
  if (spec.n_schools < 2) throw DomainError("ingest", "n_schools", "must be at least 2");
  if (!(spec.within_sd >= 0.0 && spec.within_sd < spec.sd)) {
    throw DomainError("ingest", "within_sd", "must lie in [0, sd)");
  }
  if (!(spec.beta > 0.0 && spec.beta <= 1.0)) {
    throw DomainError("ingest", "beta", "must lie in (0, 1]");
  }
  // On the debiased scale a G2 school's within-school spread is within_sd /
  // beta, so its between-school spread is reduced to keep the pooled sd.
  const double within_g2 = spec.within_sd / spec.beta;
  if (!(within_g2 < spec.sd)) {
    throw DomainError("ingest", "within_sd", "within_sd / beta must stay below sd");
  }
  const double between_g1 = std::sqrt(spec.sd * spec.sd - spec.within_sd * spec.within_sd);
  const double between_g2 = std::sqrt(spec.sd * spec.sd - within_g2 * within_g2);
  detail::Engine rng(seed);
  std::vector<SchoolRecord> records;
  records.reserve(static_cast<std::size_t>(spec.n_schools));
  for (int i = 0; i < spec.n_schools; ++i) {
    const bool disadvantaged = i % 2 == 1;
    const double true_mean =
        spec.mean + (disadvantaged ? between_g2 : between_g1) * detail::standard_normal(rng);
    const double eni_low = disadvantaged ? 0.55 : 0.05;
    const double eni = eni_low + 0.4 * detail::uniform01(rng);
    const double reported = disadvantaged ? spec.beta * true_mean : true_mean;
    char id[16];
    std::snprintf(id, sizeof id, "S%04d", i);
    records.push_back({id, std::clamp(reported, kMinSat, kMaxSat),
                       spec.takers_per_school, eni});
  }
  return records;
}

}  // namespace feederlab
