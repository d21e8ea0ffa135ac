"""Lower bounds on branching and the cup-length certificates behind them.

The bound for degree-d solving is (log2 d)^(2/3) - 1.  Its combinatorial
backbone is a family of ring generators indexed by pairs (m, k) with m >= 1,
k >= 0; a product of n distinct generators survives only while the total
index weight sum(m_i) + sum(k_i) stays within log2(d), so the certified cup
length is a weight-budgeted subset-selection problem solved here greedily.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


def _cbrt(x: float) -> float:
    """Real cube root with exact integer cubes snapped (pow alone drifts)."""
    if x == 0.0:
        return 0.0
    mag = abs(x)
    c = mag ** (1.0 / 3.0)
    # two Newton polish steps keep the result within an ulp
    c = (2.0 * c + mag / (c * c)) / 3.0
    c = (2.0 * c + mag / (c * c)) / 3.0
    n = round(c)
    if n * n * n == mag:
        c = float(n)
    return c if x > 0 else -c


def smale_bound(degree: int) -> float:
    """The branching lower bound (log2 degree)^(2/3) - 1.

    Exact in floating point when log2(degree) is exact and its square is a
    perfect cube (e.g. degree 256 -> 3.0).
    """
    if degree < 2:
        raise ValueError("bound undefined below degree 2")
    lg = math.log2(degree)
    return _cbrt(lg * lg) - 1.0


@dataclass(frozen=True)
class GeneratorPair:
    """An index pair (m, k), m >= 1, k >= 0; weight m + k, ring degree 2**(m+k-1)."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.k < 0:
            raise ValueError("need m >= 1 and k >= 0")

    @property
    def weight(self) -> int:
        return self.m + self.k

    @property
    def ring_degree(self) -> int:
        # documentation only; selection depends on the weight alone
        return 2 ** (self.m + self.k - 1)


def pairs_within_weight(max_weight: int) -> int:
    """Count the pairs (m, k), m >= 1, k >= 0, with m + k <= max_weight.

    Counted weight class by weight class (the class of weight w holds w
    pairs); the closed form N(N+1)/2 is checked against this in the tests.
    """
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    total = 0
    for w in range(1, max_weight + 1):
        total += w  # pairs (m, w - m) for m = 1..w
    return total


@dataclass(frozen=True)
class CupLengthCertificate:
    """A weight-feasible family of distinct generator pairs for degree d."""

    d: int
    budget: float
    pairs: tuple[GeneratorPair, ...]
    total_weight: int
    cardinality: int
    smale_bound: float

    def __post_init__(self) -> None:
        if len(set(self.pairs)) != len(self.pairs):
            raise ValueError("pairs must be pairwise distinct")
        if sum(p.weight for p in self.pairs) != self.total_weight:
            raise ValueError("total_weight inconsistent with pairs")
        if len(self.pairs) != self.cardinality:
            raise ValueError("cardinality inconsistent with pairs")

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "budget": self.budget,
            "pairs": [[p.m, p.k] for p in self.pairs],
            "total_weight": self.total_weight,
            "cardinality": self.cardinality,
            "smale_bound": self.smale_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _integer_budget(d: int) -> int:
    """Largest integer s with 2**s <= d (exact, no float log)."""
    return d.bit_length() - 1


def max_cup_length(d: int) -> CupLengthCertificate:
    """Greedy maximum-cardinality family with total weight <= log2(d).

    Takes pairs in ascending weight, ties broken by ascending m; since every
    pair of weight w costs w, no larger family exists (any n pairs weigh at
    least as much as the n cheapest).  The weight cap is the largest integer
    below log2(d), which equals log2(d) itself for powers of two.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    budget = _integer_budget(d)
    chosen: list[GeneratorPair] = []
    total = 0
    w = 1
    while total + w <= budget:
        for m in range(1, w + 1):
            if total + w > budget:
                break
            chosen.append(GeneratorPair(m, w - m))
            total += w
        w += 1
    return CupLengthCertificate(
        d=d,
        budget=math.log2(d),
        pairs=tuple(chosen),
        total_weight=total,
        cardinality=len(chosen),
        smale_bound=smale_bound(d),
    )


def verify_lemma_claim(d: int) -> bool:
    """Whether the certified family is as large as (log2 d)^(2/3).

    This is the claimed inequality behind the lower bound; it is checked, not
    assumed, and genuinely fails for some degrees (see the tests).
    """
    cert = max_cup_length(d)
    lg = math.log2(d)
    target = _cbrt(lg * lg)
    return cert.cardinality >= target
