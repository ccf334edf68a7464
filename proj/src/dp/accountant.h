// Copyright 2026 The gnndp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GNNDP_DP_ACCOUNTANT_H_
#define GNNDP_DP_ACCOUNTANT_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace gnndp {

// Probability that a uniformly drawn size-m batch (without replacement) out
// of N subgraphs contains exactly rho of the T subgraphs that hold a given
// node. Evaluated as a sum of logs of at most 2T factors, so it stays exact to
// rounding for small T. Returns 0 outside the support.
double HypergeomPmf(size_t N, size_t T, size_t m, size_t rho);
double LogHypergeomPmf(size_t N, size_t T, size_t m, size_t rho);

// Renyi cost of one noisy batch step at order alpha:
//   (1/(alpha-1)) * ln sum_rho pmf(rho) * exp(alpha (alpha-1) rho^2 / (2 sigma^2))
// Conditioned on rho affected subgraphs the clipped sum moves by at most
// rho * C, and the Gaussian mechanism with std sigma * C at that sensitivity
// has RDP alpha rho^2 / (2 sigma^2). Evaluated with log-sum-exp.
double PerStepRdp(double alpha, double sigma, size_t N, size_t T, size_t m);

// {1.25, 1.5, ..., 64} followed by the integers 65..512.
std::vector<double> DefaultRdpOrders();

struct EpsilonResult {
  double epsilon = 0.0;
  // Unset for zero steps, where no mechanism has run.
  std::optional<double> order;
};

// Per-order RDP of a single step, cached for repeated composition.
class AccountantState {
 public:
  AccountantState(double sigma, size_t N, size_t T, size_t m,
                  std::vector<double> orders = DefaultRdpOrders());

  const std::vector<double>& orders() const { return orders_; }
  const std::vector<double>& per_step_rdp() const { return per_step_; }

  // eps = min_alpha [steps * rdp(alpha) + ln(1/delta) / (alpha - 1)].
  // Zero steps reports eps = 0.
  EpsilonResult EpsilonAfter(size_t steps, double delta) const;

 private:
  std::vector<double> orders_;
  std::vector<double> per_step_;
};

struct CalibrationProblem {
  double epsilon_target = 0.0;
  double delta = 0.0;
  size_t steps = 0;
  size_t N = 0;
  size_t T = 1;
  size_t m = 1;
};

struct CalibrationResult {
  double sigma = 0.0;
  EpsilonResult spent;
};

inline constexpr double kSigmaSearchMin = 0.3;
inline constexpr double kSigmaSearchMax = 1000.0;

// Smallest sigma in [0.3, 1000] (to relative width 1e-3 or finer) whose
// composed epsilon does not exceed the target. Throws kCalibration when even
// sigma = 1000 overshoots.
CalibrationResult CalibrateSigma(const CalibrationProblem& problem);

}  // namespace gnndp

#endif  // GNNDP_DP_ACCOUNTANT_H_
