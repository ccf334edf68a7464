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

#ifndef GNNDP_EXPERIMENTS_STATS_H_
#define GNNDP_EXPERIMENTS_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gnndp {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

MeanStd ComputeMeanStd(std::span<const double> values);

// Ranks starting at 1; tied values share their average rank.
std::vector<double> AverageRanks(std::span<const double> values);

// Spearman rank correlation. Empty when either side has no spread.
std::optional<double> Spearman(std::span<const double> x, std::span<const double> y);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace gnndp

#endif  // GNNDP_EXPERIMENTS_STATS_H_
