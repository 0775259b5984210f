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

#include "scratchlm/ngram_model.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "support/test_util.h"

namespace scratchlm {
namespace {

using ::scratchlm::testing::BruteForceKneserNey;
using ::scratchlm::testing::RandomCorpus;
using ::scratchlm::testing::T1Corpus;
using ::scratchlm::testing::Tokens;
using ::scratchlm::testing::Unit;

constexpr std::size_t kV = 142;
constexpr double kTol = 1e-9;

NgramModel T1Model(int order) {
  return NgramModel::Fit(CountNgrams(T1Corpus(), order, kV));
}

// Expected values below come from tests/oracles/kn_oracle.py, which evaluates
// the same definitions in exact rational arithmetic.

TEST(FitDiscountsTest, T1Order3) {
  const Discounts d = FitDiscounts(CountNgrams(T1Corpus(), 3, kV));
  ASSERT_EQ(d.levels.size(), 3u);
  EXPECT_TRUE(d.level(1).fallback);  // n2 = n3, so D2 = 0
  EXPECT_DOUBLE_EQ(d.level(1).d1, 0.5);
  EXPECT_FALSE(d.level(2).fallback);
  EXPECT_NEAR(d.level(2).d1, 0.69230769230769229, kTol);
  EXPECT_NEAR(d.level(2).d2, 0.96153846153846156, kTol);
  EXPECT_NEAR(d.level(2).d3plus, 0.23076923076923078, kTol);
  EXPECT_NEAR(d.level(3).d1, 0.57894736842105265, kTol);
  EXPECT_NEAR(d.level(3).d2, 1.5657894736842106, kTol);
  EXPECT_NEAR(d.level(3).d3plus, 0.68421052631578949, kTol);
}

TEST(FitDiscountsTest, T1Order2) {
  const Discounts d = FitDiscounts(CountNgrams(T1Corpus(), 2, kV));
  EXPECT_TRUE(d.level(1).fallback);
  EXPECT_NEAR(d.level(2).d1, 0.23076923076923078, kTol);
  EXPECT_NEAR(d.level(2).d2, 1.7230769230769232, kTol);
  EXPECT_NEAR(d.level(2).d3plus, 2.5384615384615383, kTol);
}

TEST(FitDiscountsTest, SingletonsFallBack) {
  const Discounts d = FitDiscounts(CountNgrams(std::vector<Unit>{{0, 5, 6, 7, 1}}, 3, kV));
  for (const auto& level : d.levels) {
    EXPECT_TRUE(level.fallback);
    EXPECT_EQ(level.d1, kFallbackDiscount);
    EXPECT_EQ(level.d2, kFallbackDiscount);
    EXPECT_EQ(level.d3plus, kFallbackDiscount);
  }
}

TEST(FitDiscountsTest, NonNegativeOnZipfCorpus) {
  const Discounts d = FitDiscounts(CountNgrams(RandomCorpus(20000, 137, 11), 4, kV));
  for (const auto& level : d.levels) {
    EXPECT_GE(level.d1, 0);
    EXPECT_GE(level.d2, 0);
    EXPECT_GE(level.d3plus, 0);
    EXPECT_TRUE(std::isfinite(level.d3plus));
  }
}

TEST(NgramModelTest, T1Probabilities) {
  const NgramModel m3 = T1Model(3);
  EXPECT_NEAR(m3.Probability(Tokens("event_whenflagclicked control_forever"),
                             Tokens("motion_movesteps")[0]),
              0.67252873146127412, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("control_forever motion_movesteps"),
                             Tokens("motion_ifonedgebounce")[0]),
              0.44766524418118192, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("control_forever motion_movesteps"),
                             Tokens("looks_nextcostume")[0]),
              0.37051043018426266, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("motion_movesteps motion_ifonedgebounce"), kEndScript),
              0.91615001010849784, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("BEGIN_SCRIPT"), Tokens("event_whenflagclicked")[0]),
              0.72473191421254801, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("BEGIN_SCRIPT"), Tokens("event_whenkeypressed")[0]),
              0.13338576036639416, kTol);
  EXPECT_NEAR(m3.Probability({}, Tokens("motion_movesteps")[0]), 0.20582586427656852, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("looks_say looks_say"), Tokens("motion_movesteps")[0]),
              0.20582586427656852, kTol);
  EXPECT_NEAR(m3.Probability(Tokens("motion_movesteps"), Tokens("sound_play")[0]),
              0.00026264814997209365, 1e-12);

  const NgramModel m2 = T1Model(2);
  EXPECT_NEAR(m2.Probability(Tokens("motion_movesteps"), Tokens("motion_ifonedgebounce")[0]),
              0.25945040874618341, kTol);
  EXPECT_NEAR(m2.Probability(Tokens("BEGIN_SCRIPT"), Tokens("event_whenflagclicked")[0]),
              0.44548101546340985, kTol);

  const NgramModel m1 = T1Model(1);
  EXPECT_NEAR(m1.Probability({}, Tokens("motion_movesteps")[0]), 0.20272700029967036, kTol);
  EXPECT_NEAR(m1.Probability({}, Tokens("sound_play")[0]), 0.00059934072520227753, 1e-12);
}

TEST(NgramModelTest, T1SequenceLogProb) {
  const Unit seq = Tokens("BEGIN_SCRIPT event_whenflagclicked control_forever motion_movesteps");
  EXPECT_NEAR(T1Model(2).SequenceLogProb(seq), -4.5808642589850805, kTol);
  EXPECT_NEAR(T1Model(3).SequenceLogProb(seq), -2.274659581325186, kTol);
}

TEST(NgramModelTest, SequenceLogProbIsChainOfProbabilities) {
  const NgramModel m = T1Model(3);
  const Unit seq = Tokens("BEGIN_SCRIPT event_whenkeypressed motion_movesteps looks_nextcostume");
  EXPECT_NEAR(m.SequenceLogProb({seq.data(), 1}), std::log(m.Probability({}, seq[0])), 1e-12);
  double expected = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    expected += std::log(m.Probability(Unit(seq.begin(), seq.begin() + i), seq[i]));
  }
  EXPECT_NEAR(m.SequenceLogProb(seq), expected, 1e-12);
}

TEST(NgramModelTest, ContextIsTruncatedToOrderMinusOne) {
  const NgramModel m = T1Model(2);
  const TokenId bo = Tokens("motion_ifonedgebounce")[0];
  EXPECT_DOUBLE_EQ(m.Probability(Tokens("BEGIN_SCRIPT event_whenflagclicked motion_movesteps"), bo),
                   m.Probability(Tokens("motion_movesteps"), bo));
}

TEST(NgramModelTest, MatchesBruteForceOracle) {
  for (int order = 1; order <= 4; ++order) {
    for (std::uint32_t seed = 0; seed < 3; ++seed) {
      const auto corpus = RandomCorpus(40, 6, seed);
      const NgramModel model = NgramModel::Fit(CountNgrams(corpus, order, kV));
      const BruteForceKneserNey oracle(corpus, order, kV);
      for (int k = 1; k <= order; ++k) {
        const auto d = oracle.Discounts(k);
        EXPECT_NEAR(model.discounts().level(k).d1, d[0], kTol);
        EXPECT_NEAR(model.discounts().level(k).d2, d[1], kTol);
        EXPECT_NEAR(model.discounts().level(k).d3plus, d[2], kTol);
      }
      for (const Unit& u : corpus) {
        for (std::size_t i = 0; i < u.size(); ++i) {
          const Unit context(u.begin(), u.begin() + i);
          for (TokenId w : {u[i], TokenId{kEndScript}, TokenId{100}}) {
            EXPECT_NEAR(model.Probability(context, w), oracle.Probability(context, w), kTol)
                << "order " << order << " seed " << seed;
          }
        }
      }
    }
  }
}

TEST(NgramModelTest, DistributionsNormalizeAndArePositive) {
  const auto corpus = RandomCorpus(3000, 40, 5);
  std::mt19937 rng(17);
  for (int order = 1; order <= 4; ++order) {
    const NgramModel m = NgramModel::Fit(CountNgrams(corpus, order, kV));
    for (int trial = 0; trial < 100; ++trial) {
      const Unit& u = corpus[rng() % corpus.size()];
      const std::size_t end = rng() % u.size();
      Unit context(u.begin() + (end >= 3 ? end - 3 : 0), u.begin() + end);
      if (trial % 5 == 0) context = {static_cast<TokenId>(5 + rng() % 137)};
      double sum = 0;
      for (TokenId w = 0; w < kV; ++w) {
        const double p = m.Probability(context, w);
        EXPECT_GT(p, 0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, kTol);
      const auto dist = m.Distribution(context);
      EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, kTol);
      for (TokenId w = 0; w < kV; w += 7) {
        EXPECT_NEAR(dist[w], m.Probability(context, w), 1e-15);
      }
    }
  }
}

TEST(NgramModelTest, DeterministicContinuationIsLikelyButNotCertain) {
  std::vector<Unit> corpus(5, Unit{0, 10, 11, 12, 1});
  corpus.push_back({0, 13, 14, 1});
  const NgramModel m = NgramModel::Fit(CountNgrams(corpus, 3, kV));
  const double p = m.Probability(Unit{10, 11}, 12);
  EXPECT_GT(p, 0.5);
  EXPECT_LT(p, 1.0);
  for (TokenId w = 0; w < kV; ++w) {
    if (w != 12) EXPECT_LT(m.Probability(Unit{10, 11}, w), p);
  }
}

TEST(NgramModelTest, UnknownToken) {
  const NgramModel m = T1Model(3);
  EXPECT_SCRATCHLM_ERROR(m.Probability({}, 142), ErrorCode::kUnknownToken);
  EXPECT_SCRATCHLM_ERROR(m.Probability(Unit{999}, 5), ErrorCode::kUnknownToken);
  EXPECT_SCRATCHLM_ERROR(m.SequenceLogProb(Unit{5, 1000}), ErrorCode::kUnknownToken);
}

}  // namespace
}  // namespace scratchlm
