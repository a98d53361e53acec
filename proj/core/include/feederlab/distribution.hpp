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


// Laws of student potentials behind a single pdf/cdf/ccdf/inverse contract.

#ifndef FEEDERLAB_DISTRIBUTION_HPP_
#define FEEDERLAB_DISTRIBUTION_HPP_

#include <string>
#include <vector>

namespace feederlab {

class Distribution {
 public:
  enum class Kind { kPareto, kNormal, kTruncatedNormal, kEmpirical };

  // Pareto with scale 1 and shape `alpha`; support [1, inf).
  static Distribution pareto(double alpha);
  static Distribution normal(double mean, double stddev);
  // Normal(mean, stddev) conditioned on [lower, upper].
  static Distribution truncated_normal(double mean, double stddev,
                                       double lower, double upper);
  // Step cdf over the sample; inversion interpolates linearly between the
  // midpoints (i + 0.5) / n of the sorted sample.
  static Distribution empirical(std::vector<double> sample);

  Kind kind() const { return kind_; }
  bool is_pareto() const { return kind_ == Kind::kPareto; }
  double alpha() const { return alpha_; }
  double mean() const { return mean_; }
  double stddev() const { return stddev_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const std::vector<double>& sample() const { return sample_; }

  double support_min() const;
  double support_max() const;

  double pdf(double x) const;
  double cdf(double x) const;
  double ccdf(double x) const;
  // Smallest x with ccdf(x) <= q. Throws DomainError outside [0, 1].
  double inv_ccdf(double q) const;

  std::string describe() const;

 private:
  Distribution() = default;

  double normal_ccdf(double x) const;

  Kind kind_ = Kind::kPareto;
  double alpha_ = 0.0;
  double mean_ = 0.0;
  double stddev_ = 1.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  // Truncated normal: untruncated tail mass at the two bounds.
  double tail_lower_ = 1.0;
  double tail_upper_ = 0.0;
  std::vector<double> sample_;
};

}  // namespace feederlab

#endif  // FEEDERLAB_DISTRIBUTION_HPP_
