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


#include "feederlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "feederlab/error.hpp"
#include "feederlab/numerics.hpp"

namespace feederlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper tail of the standard normal.
double std_normal_ccdf(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

void require(bool ok, const char* parameter, const std::string& message) {
  if (!ok) throw DomainError("distribution", parameter, message);
}

}  // namespace

Distribution Distribution::pareto(double alpha) {
  require(std::isfinite(alpha) && alpha > 0, "alpha", "must be positive");
  Distribution d;
  d.kind_ = Kind::kPareto;
  d.alpha_ = alpha;
  return d;
}

Distribution Distribution::normal(double mean, double stddev) {
  require(std::isfinite(mean), "mean", "must be finite");
  require(std::isfinite(stddev) && stddev > 0, "sd", "must be positive");
  Distribution d;
  d.kind_ = Kind::kNormal;
  d.mean_ = mean;
  d.stddev_ = stddev;
  return d;
}

Distribution Distribution::truncated_normal(double mean, double stddev,
                                            double lower, double upper) {
  Distribution d = normal(mean, stddev);
  require(lower < upper, "lower", "must be below upper");
  d.kind_ = Kind::kTruncatedNormal;
  d.lower_ = lower;
  d.upper_ = upper;
  d.tail_lower_ = std_normal_ccdf((lower - mean) / stddev);
  d.tail_upper_ = std_normal_ccdf((upper - mean) / stddev);
  require(d.tail_lower_ - d.tail_upper_ > 0, "lower",
          "truncation window carries no mass");
  return d;
}

Distribution Distribution::empirical(std::vector<double> sample) {
  require(!sample.empty(), "sample", "must not be empty");
  for (double x : sample) require(std::isfinite(x), "sample", "non-finite value");
  std::sort(sample.begin(), sample.end());
  Distribution d;
  d.kind_ = Kind::kEmpirical;
  d.sample_ = std::move(sample);
  return d;
}

double Distribution::support_min() const {
  switch (kind_) {
    case Kind::kPareto: return 1.0;
    case Kind::kNormal: return -kInf;
    case Kind::kTruncatedNormal: return lower_;
    case Kind::kEmpirical: return sample_.front();
  }
  return -kInf;
}

double Distribution::support_max() const {
  switch (kind_) {
    case Kind::kPareto: return kInf;
    case Kind::kNormal: return kInf;
    case Kind::kTruncatedNormal: return upper_;
    case Kind::kEmpirical: return sample_.back();
  }
  return kInf;
}

double Distribution::normal_ccdf(double x) const {
  return std_normal_ccdf((x - mean_) / stddev_);
}

double Distribution::pdf(double x) const {
  switch (kind_) {
    case Kind::kPareto:
      return x < 1.0 ? 0.0 : alpha_ * std::pow(x, -alpha_ - 1.0);
    case Kind::kNormal:
    case Kind::kTruncatedNormal: {
      if (kind_ == Kind::kTruncatedNormal && (x < lower_ || x > upper_)) return 0.0;
      const double t = (x - mean_) / stddev_;
      const double density = std::exp(-0.5 * t * t) /
                             (stddev_ * std::sqrt(2.0 * std::numbers::pi));
      return kind_ == Kind::kNormal ? density
                                    : density / (tail_lower_ - tail_upper_);
    }
    case Kind::kEmpirical: {
      if (x < sample_.front() || x >= sample_.back()) return 0.0;
      const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
      const double width = *it - *(it - 1);
      return width > 0 ? 1.0 / (static_cast<double>(sample_.size()) * width) : 0.0;
    }
  }
  return 0.0;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case Kind::kPareto:
      return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha_);
    case Kind::kNormal:
      return std_normal_ccdf(-(x - mean_) / stddev_);
    case Kind::kTruncatedNormal:
    case Kind::kEmpirical:
      return 1.0 - ccdf(x);
  }
  return 0.0;
}

double Distribution::ccdf(double x) const {
  switch (kind_) {
    case Kind::kPareto:
      return x <= 1.0 ? 1.0 : std::pow(x, -alpha_);
    case Kind::kNormal:
      return normal_ccdf(x);
    case Kind::kTruncatedNormal: {
      if (x <= lower_) return 1.0;
      if (x >= upper_) return 0.0;
      return (normal_ccdf(x) - tail_upper_) / (tail_lower_ - tail_upper_);
    }
    case Kind::kEmpirical: {
      const auto above = sample_.end() -
                         std::upper_bound(sample_.begin(), sample_.end(), x);
      return static_cast<double>(above) / static_cast<double>(sample_.size());
    }
  }
  return 0.0;
}

double Distribution::inv_ccdf(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("distribution", "q", "must lie in [0, 1]");
  }
  switch (kind_) {
    case Kind::kPareto:
      return q == 0.0 ? kInf : std::pow(q, -1.0 / alpha_);
    case Kind::kNormal:
    case Kind::kTruncatedNormal: {
      if (q == 1.0) return support_min();
      if (q == 0.0) return support_max();
      return numerics::solve_monotone([this](double x) { return ccdf(x); }, q,
                                      numerics::Monotone::kDecreasing,
                                      mean_ - stddev_, mean_ + stddev_,
                                      support_min(), support_max());
    }
    case Kind::kEmpirical: {
      const double n = static_cast<double>(sample_.size());
      const double pos = (1.0 - q) * n - 0.5;
      if (pos <= 0.0) return sample_.front();
      if (pos >= n - 1.0) return sample_.back();
      const auto i = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(i);
      return sample_[i] + frac * (sample_[i + 1] - sample_[i]);
    }
  }
  return 0.0;
}

std::string Distribution::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::kPareto: out << "pareto(alpha=" << alpha_ << ")"; break;
    case Kind::kNormal:
      out << "normal(mean=" << mean_ << ", sd=" << stddev_ << ")";
      break;
    case Kind::kTruncatedNormal:
      out << "truncated_normal(mean=" << mean_ << ", sd=" << stddev_
          << ", lower=" << lower_ << ", upper=" << upper_ << ")";
      break;
    case Kind::kEmpirical: out << "empirical(n=" << sample_.size() << ")"; break;
  }
  return out.str();
}

}  // namespace feederlab
