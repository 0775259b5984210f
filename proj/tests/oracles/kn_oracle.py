#!/usr/bin/env python3
# Copyright 2026 The ScratchLM Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Brute-force interpolated modified Kneser-Ney oracle in exact arithmetic.

Every quantity is recomputed by scanning the raw training units, with no
precomputed tables, so it shares no code path with the C++ model. Used to
freeze the expected values in tests/ngram_model_test.cc and the acceptance
suite. Run: python3 tests/oracles/kn_oracle.py
"""

from fractions import Fraction
import math

VOCAB_SIZE = 142  # 5 reserved entries + 137 concrete blocks

# Fixture T1: eight scripts, 47 tokens. Short names expand via NAMES.
NAMES = {
    "B": "BEGIN_SCRIPT", "E": "END_SCRIPT", "F": "event_whenflagclicked",
    "K": "event_whenkeypressed", "fo": "control_forever",
    "mv": "motion_movesteps", "bo": "motion_ifonedgebounce",
    "nc": "looks_nextcostume",
}
T1 = [[NAMES[t] for t in s.split()] for s in (
    "B F fo mv bo E",
    "B F fo mv nc mv E",
    "B K mv bo E",
    "B F fo mv bo E",
    "B F mv nc E",
    "B K mv nc mv bo E",
    "B F fo nc E",
    "B F mv mv bo E",
)]


def occurrences(units, gram):
  k = len(gram)
  return sum(1 for u in units for i in range(len(u) - k + 1)
             if tuple(u[i:i + k]) == gram)


def starts(units, gram):
  return sum(1 for u in units if tuple(u[:len(gram)]) == gram)


def left_extensions(units, gram):
  k = len(gram)
  seen = set()
  for u in units:
    for i in range(1, len(u) - k + 1):
      if tuple(u[i:i + k]) == gram:
        seen.add(u[i - 1])
  return len(seen)


def adjusted(units, order, gram):
  if len(gram) == order:
    return occurrences(units, gram)
  return left_extensions(units, gram) + starts(units, gram)


def all_grams(units, k):
  return sorted({tuple(u[i:i + k]) for u in units
                 for i in range(len(u) - k + 1)})


def discounts(units, order, k):
  counts = [adjusted(units, order, g) for g in all_grams(units, k)]
  n = [sum(1 for c in counts if c == r) for r in range(5)]
  if n[1] == 0 or n[2] == 0 or n[3] == 0:
    return (Fraction(1, 2),) * 3
  y = Fraction(n[1], n[1] + 2 * n[2])
  d = (1 - 2 * y * n[2] / n[1], 2 - 3 * y * n[3] / n[2],
       3 - 4 * y * n[4] / n[3])
  if any(x <= 0 for x in d):
    return (Fraction(1, 2),) * 3
  return d


def discount_for(d, c):
  if c == 0:
    return Fraction(0)
  return d[min(c, 3) - 1]


def prob(units, order, context, word, vocab_words):
  context = tuple(context[-(order - 1):]) if order > 1 else ()
  return _prob(units, order, context, word, vocab_words)


def _prob(units, order, context, word, vocab_words):
  k = len(context) + 1
  d = discounts(units, order, k)
  if not context:
    followers = {w: adjusted(units, order, (w,)) for w in vocab_words}
    total = sum(followers.values())
    gamma = sum(discount_for(d, c) for c in followers.values()) / total
    c = followers.get(word, 0)
    return (max(c - discount_for(d, c), 0) / total +
            gamma * Fraction(1, VOCAB_SIZE))
  followers = {w: adjusted(units, order, context + (w,)) for w in vocab_words}
  total = sum(followers.values())
  if total == 0:
    return _prob(units, order, context[1:], word, vocab_words)
  gamma = sum(discount_for(d, c) for c in followers.values()) / total
  c = followers.get(word, 0)
  return (max(c - discount_for(d, c), 0) / total +
          gamma * _prob(units, order, context[1:], word, vocab_words))


def main():
  words = sorted({w for u in T1 for w in u})
  for order in (1, 2, 3):
    for k in range(1, order + 1):
      d = discounts(T1, order, k)
      print(f"order={order} k={k} D=" + ", ".join(f"{float(x):.17g}" for x in d))
  queries = [
      (3, ("event_whenflagclicked", "control_forever"), "motion_movesteps"),
      (3, ("control_forever", "motion_movesteps"), "motion_ifonedgebounce"),
      (3, ("control_forever", "motion_movesteps"), "looks_nextcostume"),
      (3, ("motion_movesteps", "motion_ifonedgebounce"), "END_SCRIPT"),
      (3, ("BEGIN_SCRIPT",), "event_whenflagclicked"),
      (3, ("BEGIN_SCRIPT",), "event_whenkeypressed"),
      (3, (), "motion_movesteps"),
      (3, ("looks_say", "looks_say"), "motion_movesteps"),
      (3, ("motion_movesteps",), "sound_play"),
      (2, ("motion_movesteps",), "motion_ifonedgebounce"),
      (2, ("BEGIN_SCRIPT",), "event_whenflagclicked"),
      (1, (), "motion_movesteps"),
      (1, (), "sound_play"),
  ]
  for order, ctx, w in queries:
    p = prob(T1, order, ctx, w, words)
    print(f"P{order}({w} | {' '.join(ctx)}) = {float(p):.17g}")
  seq = T1[0][:4]
  for order in (2, 3):
    lp = sum(math.log(prob(T1, order, seq[:i], seq[i], words))
             for i in range(len(seq)))
    print(f"logprob{order}({' '.join(seq)}) = {lp:.17g}")


if __name__ == "__main__":
  main()
