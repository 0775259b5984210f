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

#ifndef SCRATCHLM_STATISTICS_H_
#define SCRATCHLM_STATISTICS_H_

#include <span>

namespace scratchlm {

enum class Alternative {
  kTwoSided,
  kGreater,  // a tends to be larger than b
  kLess,
};

struct MannWhitneyOptions {
  Alternative alternative = Alternative::kTwoSided;
  bool continuity_correction = false;
};

struct MannWhitneyResult {
  // U statistic of the first sample: pairs with a > b plus half the ties.
  double u = 0.0;
  double z = 0.0;
  double p = 1.0;
};

// Mann-Whitney U test with midranks and the tie-corrected normal
// approximation. Throws Error(kDegenerateSample) if either sample is empty.
MannWhitneyResult MannWhitneyU(std::span<const double> a, std::span<const double> b,
                               const MannWhitneyOptions& options = {});

// Vargha-Delaney A: probability that a value from `a` exceeds one from `b`,
// counting ties as one half. Throws Error(kDegenerateSample) on empty input.
double VarghaDelaneyA(std::span<const double> a, std::span<const double> b);

}  // namespace scratchlm

#endif  // SCRATCHLM_STATISTICS_H_
