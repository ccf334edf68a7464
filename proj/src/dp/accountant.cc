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

#include "dp/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "common/error.h"

namespace gnndp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogBinomial(size_t n, size_t k) {
  k = std::min(k, n - k);
  double s = 0.0;
  for (size_t i = 0; i < k; ++i) {
    s += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
  }
  return s;
}

void CheckAccountingArgs(size_t N, size_t T, size_t m) {
  Require(N >= 1, "N must be >= 1");
  Require(T <= N, "T must not exceed N");
  Require(m >= 1 && m <= N, "batch size must satisfy 1 <= m <= N");
}

}  // namespace

double LogHypergeomPmf(size_t N, size_t T, size_t m, size_t rho) {
  CheckAccountingArgs(N, T, m);
  if (rho > T || rho > m || m - rho > N - T) return kNegInf;
  // C(T,rho) * [m!/(m-rho)!] * [(N-m)!/(N-m-(T-rho))!] / [N!/(N-T)!]
  double s = LogBinomial(T, rho);
  for (size_t i = 0; i < rho; ++i) s += std::log(static_cast<double>(m - i));
  for (size_t i = 0; i < T - rho; ++i) s += std::log(static_cast<double>(N - m - i));
  for (size_t i = 0; i < T; ++i) s -= std::log(static_cast<double>(N - i));
  return s;
}

double HypergeomPmf(size_t N, size_t T, size_t m, size_t rho) {
  return std::exp(LogHypergeomPmf(N, T, m, rho));
}

double PerStepRdp(double alpha, double sigma, size_t N, size_t T, size_t m) {
  Require(alpha > 1.0, "RDP order must exceed 1");
  Require(sigma > 0.0, "noise multiplier must be positive");
  CheckAccountingArgs(N, T, m);
  std::vector<double> terms;
  terms.reserve(T + 1);
  const double scale = alpha * (alpha - 1.0) / (2.0 * sigma * sigma);
  for (size_t rho = 0; rho <= T; ++rho) {
    const double lp = LogHypergeomPmf(N, T, m, rho);
    if (lp == kNegInf) continue;
    terms.push_back(lp + scale * static_cast<double>(rho * rho));
  }
  const double peak = *std::max_element(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return std::max(0.0, (peak + std::log(sum)) / (alpha - 1.0));
}

std::vector<double> DefaultRdpOrders() {
  std::vector<double> orders;
  for (int q = 5; q <= 256; ++q) orders.push_back(q * 0.25);
  for (int a = 65; a <= 512; ++a) orders.push_back(a);
  return orders;
}

AccountantState::AccountantState(double sigma, size_t N, size_t T, size_t m,
                                 std::vector<double> orders)
    : orders_(std::move(orders)) {
  if (orders_.empty()) Fail(ErrorCode::kInvalidArgument, "RDP order grid is empty");
  per_step_.reserve(orders_.size());
  for (double a : orders_) per_step_.push_back(PerStepRdp(a, sigma, N, T, m));
}

EpsilonResult AccountantState::EpsilonAfter(size_t steps, double delta) const {
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  if (steps == 0) return {};
  EpsilonResult best{std::numeric_limits<double>::infinity(), std::nullopt};
  const double log_inv_delta = std::log(1.0 / delta);
  for (size_t i = 0; i < orders_.size(); ++i) {
    const double eps = static_cast<double>(steps) * per_step_[i] +
                       log_inv_delta / (orders_[i] - 1.0);
    if (eps < best.epsilon) best = {eps, orders_[i]};
  }
  return best;
}

CalibrationResult CalibrateSigma(const CalibrationProblem& p) {
  Require(p.epsilon_target > 0.0, "epsilon target must be positive");
  Require(p.delta > 0.0 && p.delta < 1.0, "delta must lie in (0, 1)");
  auto spent = [&](double sigma) {
    return AccountantState(sigma, p.N, p.T, p.m).EpsilonAfter(p.steps, p.delta);
  };
  const EpsilonResult at_min = spent(kSigmaSearchMin);
  if (at_min.epsilon <= p.epsilon_target) return {kSigmaSearchMin, at_min};
  const EpsilonResult at_max = spent(kSigmaSearchMax);
  if (at_max.epsilon > p.epsilon_target) {
    std::ostringstream msg;
    msg << "epsilon target " << p.epsilon_target << " unreachable: sigma="
        << kSigmaSearchMax << " still spends " << at_max.epsilon << " (N=" << p.N
        << ", T=" << p.T << ", m=" << p.m << ", steps=" << p.steps
        << ", delta=" << p.delta << ")";
    Fail(ErrorCode::kCalibration, msg.str());
  }
  // Bisect in log-sigma; invariant: lo infeasible, hi feasible.
  double lo = kSigmaSearchMin;
  double hi = kSigmaSearchMax;
  EpsilonResult hi_spent = at_max;
  while (hi / lo > 1.0 + 1e-6) {
    const double mid = std::sqrt(lo * hi);
    const EpsilonResult r = spent(mid);
    if (r.epsilon <= p.epsilon_target) {
      hi = mid;
      hi_spent = r;
    } else {
      lo = mid;
    }
  }
  return {hi, hi_spent};
}

}  // namespace gnndp
