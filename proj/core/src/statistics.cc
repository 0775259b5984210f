// Copyright 2026 The ScratchLM Authors.
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

#include "scratchlm/statistics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scratchlm/error.h"

namespace scratchlm {
namespace {

void RequireSamples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kDegenerateSample, "both samples must be nonempty");
  }
}

// Upper tail of the standard normal distribution.
double NormalSf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

MannWhitneyResult MannWhitneyU(std::span<const double> a, std::span<const double> b,
                               const MannWhitneyOptions& options) {
  RequireSamples(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<std::pair<double, bool>> pooled;  // (value, from a)
  for (double x : a) pooled.emplace_back(x, true);
  for (double x : b) pooled.emplace_back(x, false);
  std::sort(pooled.begin(), pooled.end());

  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double midrank = (static_cast<double>(i + j) + 1.0) / 2.0;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) rank_sum_a += midrank;
    }
    i = j;
  }

  MannWhitneyResult result;
  result.u = rank_sum_a - na * (na + 1.0) / 2.0;
  const double mean = na * nb / 2.0;
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) return result;  // every value tied
  const double sd = std::sqrt(variance);
  const double cc = options.continuity_correction ? 0.5 : 0.0;
  const double diff = result.u - mean;

  switch (options.alternative) {
    case Alternative::kGreater:
      result.z = (diff - cc) / sd;
      result.p = NormalSf(result.z);
      break;
    case Alternative::kLess:
      result.z = (diff + cc) / sd;
      result.p = NormalSf(-result.z);
      break;
    case Alternative::kTwoSided:
      result.z = std::copysign(std::max(std::abs(diff) - cc, 0.0) / sd, diff);
      result.p = std::min(1.0, 2.0 * NormalSf(std::abs(result.z)));
      break;
  }
  return result;
}

double VarghaDelaneyA(std::span<const double> a, std::span<const double> b) {
  RequireSamples(a, b);
  // Equivalent to the pairwise count (wins + ties / 2) / (|a| |b|).
  const MannWhitneyResult r = MannWhitneyU(a, b);
  return r.u / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace scratchlm
