"""Linear inequality systems describing IRV-winner/weak-loser coincidences.

Coordinates are the six ranking counts (a1, a2, b1, b2, c1, c2) in the
canonical column order of `weakirv.core.RANKINGS`.  Every system assumes the
canonical plurality order  a1+a2 > b1+b2 > c1+c2  (candidate A leads, C
trails); event probabilities over unlabeled candidates are obtained by
summing the canonical region over all six relabelings.

A constraint vector w encodes the strict inequality w . x > 0.  All
constraints except the two majority clauses are count differences with
coefficients summing to zero; the majority clauses (A holds / does not hold
more than half the first places) compare one count sum against the rest and
cannot be written in zero-sum form.  They are kept in a separate field:
under the equiprobable-ranking model their limiting probability is 0 or 1,
so the Gaussian route drops them, while the uniform-profile routes
(enumeration, simplex sampling) must enforce them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

Vec6 = tuple[int, int, int, int, int, int]

# plurality totals and the runoff comparisons after C is eliminated
A_LEADS_B: Vec6 = (1, 1, -1, -1, 0, 0)          # a1+a2 > b1+b2
B_LEADS_C: Vec6 = (0, 0, 1, 1, -1, -1)          # b1+b2 > c1+c2
A_BEATS_B_FINAL: Vec6 = (1, 1, -1, -1, 1, -1)   # a1+a2+c1 > b1+b2+c2
B_BEATS_A_FINAL: Vec6 = (-1, -1, 1, 1, -1, 1)

# doubled Borda-score differences (scores 2/1/0; doubling keeps integers)
BORDA_A_MINUS_B: Vec6 = (1, 2, -1, -2, 1, -1)
BORDA_B_MINUS_C: Vec6 = (1, -1, 2, 1, -2, -1)
BORDA_A_MINUS_C: Vec6 = (2, 1, 1, -1, -1, -2)

# last-place count differences (lasts: A=b2+c2, B=a2+c1, C=a1+b1)
LASTS_A_MINUS_B: Vec6 = (0, -1, 0, 1, -1, 1)
LASTS_A_MINUS_C: Vec6 = (-1, 0, -1, 1, 0, 1)
LASTS_B_MINUS_C: Vec6 = (-1, 1, -1, 0, 1, 0)

A_HAS_MAJORITY: Vec6 = (1, 1, -1, -1, -1, -1)   # a1+a2 > b1+b2+c1+c2


def neg(w: Vec6) -> Vec6:
    return tuple(-x for x in w)


@dataclass(frozen=True)
class InequalitySystem:
    """One conjunction of strict constraints over the canonical-order region."""

    label: str
    constraints: tuple[Vec6, ...]
    majority_constraints: tuple[Vec6, ...] = ()

    def __post_init__(self):
        for w in self.constraints:
            if len(w) != 6:
                raise ValueError("constraint vectors have six coefficients")
            if sum(w) != 0:
                raise ValueError(
                    f"{self.label}: constraint {w} does not sum to zero; "
                    "majority clauses belong in majority_constraints"
                )
        for w in self.majority_constraints:
            if len(w) != 6 or sum(w) == 0:
                raise ValueError(f"{self.label}: bad majority clause {w}")

    def all_constraints(self) -> tuple[Vec6, ...]:
        return self.constraints + self.majority_constraints


PLURALITY_ORDER = (A_LEADS_B, B_LEADS_C)

#: (1) A wins the runoff and has the lowest Borda score.  (A cannot hold a
#: majority here: summing the two Borda constraints forces a1+a2 < b2+c2.)
A_WINS_BORDA = InequalitySystem(
    "A_WINS_BORDA",
    PLURALITY_ORDER + (A_BEATS_B_FINAL, neg(BORDA_A_MINUS_B), neg(BORDA_A_MINUS_C)),
)

#: (2) B wins the runoff and has the lowest Borda score.
B_WINS_BORDA = InequalitySystem(
    "B_WINS_BORDA",
    PLURALITY_ORDER + (B_BEATS_A_FINAL, BORDA_A_MINUS_B, neg(BORDA_B_MINUS_C)),
)

#: (3) A wins by first-round majority yet has the most last places.
A_MAJORITY_MLP = InequalitySystem(
    "A_MAJORITY_MLP",
    PLURALITY_ORDER + (LASTS_A_MINUS_B, LASTS_A_MINUS_C),
    majority_constraints=(A_HAS_MAJORITY,),
)

#: (4) no majority, A wins the runoff, A has the most last places.
A_ROUND2_MLP = InequalitySystem(
    "A_ROUND2_MLP",
    PLURALITY_ORDER + (A_BEATS_B_FINAL, LASTS_A_MINUS_B, LASTS_A_MINUS_C),
    majority_constraints=(neg(A_HAS_MAJORITY),),
)

#: (5) B wins the runoff and has the most last places.
B_WINS_MLP = InequalitySystem(
    "B_WINS_MLP",
    PLURALITY_ORDER + (B_BEATS_A_FINAL, neg(LASTS_A_MINUS_B), LASTS_B_MINUS_C),
)

BORDA_SYSTEMS = (A_WINS_BORDA, B_WINS_BORDA)
BUCKLIN_SYSTEMS = (A_ROUND2_MLP, B_WINS_MLP)
MLP_SYSTEMS = (A_MAJORITY_MLP, A_ROUND2_MLP, B_WINS_MLP)

SYSTEM_SETS = {
    "borda": BORDA_SYSTEMS,
    "bucklin": BUCKLIN_SYSTEMS,
    "most_last_place": MLP_SYSTEMS,
}
