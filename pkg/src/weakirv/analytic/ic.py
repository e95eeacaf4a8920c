"""Equiprobable-ranking limiting probabilities assembled geometrically.

Both headline events split over the canonical plurality order A > B > C
into a branch where the leader A wins the runoff and one where the
runner-up B wins; the overall probability is six times the branch sum.
Each branch probability is the volume of a five-constraint spherical cone,
reached from a three-constraint base by two Schlaefli extensions (and, for
the A branches of the Borda event, inclusion-exclusion over the two
score comparisons, which keeps every deformation anchored at a constraint
implied by its base cone).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .schlafli import SphericalCone, ic_spherical_triangle, schlafli_probability
from .systems import (
    A_BEATS_B_FINAL,
    A_LEADS_B,
    B_BEATS_A_FINAL,
    B_LEADS_C,
    BORDA_A_MINUS_B,
    BORDA_A_MINUS_C,
    BORDA_B_MINUS_C,
    LASTS_A_MINUS_B,
    LASTS_A_MINUS_C,
    LASTS_B_MINUS_C,
    neg,
)

_AB_SUM = tuple(a + b for a, b in zip(A_LEADS_B, B_LEADS_C))  # a1+a2 > c1+c2


@dataclass(frozen=True)
class BranchValues:
    """Branch and assembly constants for one weakness event."""

    a_branch: float
    b_branch: float
    error: float

    @property
    def total(self) -> float:
        return 6.0 * (self.a_branch + self.b_branch)


@dataclass(frozen=True)
class IcProbabilities:
    borda: BranchValues
    bucklin: BranchValues
    #: the two intermediate cone volumes of the runner-up Borda chain
    runner_up_step2: float
    runner_up_step3: float
    base_triangle: float


def _extend(base, base_prob, target, anchor, tol):
    cone = SphericalCone(base, target, anchor)
    return schlafli_probability(cone, tol, base_prob)


def borda_branch_probabilities(tol: float = 1e-10):
    """(A-branch, B-branch, error, step2, step3) for the Borda-loser event."""
    err = 0.0

    # runner-up branch: base = {A leads B, B leads C, B beats A in the runoff}
    base_b = (A_LEADS_B, B_LEADS_C, B_BEATS_A_FINAL)
    p3_b = ic_spherical_triangle(base_b)
    step2, e = _extend(base_b, p3_b, BORDA_A_MINUS_B, A_LEADS_B, tol)
    err += e
    step3, e = _extend(
        base_b + (BORDA_A_MINUS_B,), step2, BORDA_B_MINUS_C, B_LEADS_C, tol
    )
    err += e
    b_branch = step2 - step3  # BSc(A) > BSc(B) and BSc(C) > BSc(B)

    # leader branch: base = {A leads B, B leads C, A beats B in the runoff};
    # P(BSc(A) smallest) by inclusion-exclusion over the two comparisons so
    # every deformation starts from an implied constraint.
    base_a = (A_LEADS_B, B_LEADS_C, A_BEATS_B_FINAL)
    p3_a = ic_spherical_triangle(base_a)
    t1, e = _extend(base_a, p3_a, BORDA_A_MINUS_B, A_LEADS_B, tol)
    err += e
    t2, e = _extend(base_a, p3_a, BORDA_A_MINUS_C, _AB_SUM, tol)
    err += e
    t12, e = _extend(
        base_a + (BORDA_A_MINUS_B,), t1, BORDA_A_MINUS_C, _AB_SUM, tol
    )
    err += e
    a_branch = p3_a - t1 - t2 + t12

    return a_branch, b_branch, err, step2, step3


def bucklin_branch_probabilities(tol: float = 1e-10):
    """(A-branch, B-branch, error) for the Bucklin/most-last-place event.

    In the equiprobable-ranking limit no candidate reaches a first-place
    majority, so the Bucklin loser is the candidate with the most last
    places and the majority clauses of the count-level systems drop out.
    """
    err = 0.0

    base_a = (A_LEADS_B, B_LEADS_C, A_BEATS_B_FINAL)
    p3_a = ic_spherical_triangle(base_a)
    t1, e = _extend(base_a, p3_a, neg(LASTS_A_MINUS_B), A_LEADS_B, tol)
    err += e
    t2, e = _extend(base_a, p3_a, neg(LASTS_A_MINUS_C), _AB_SUM, tol)
    err += e
    t12, e = _extend(
        base_a + (neg(LASTS_A_MINUS_B),), t1, neg(LASTS_A_MINUS_C), _AB_SUM, tol
    )
    err += e
    a_branch = p3_a - t1 - t2 + t12

    base_b = (A_LEADS_B, B_LEADS_C, B_BEATS_A_FINAL)
    p3_b = ic_spherical_triangle(base_b)
    u1, e = _extend(base_b, p3_b, LASTS_A_MINUS_B, A_LEADS_B, tol)
    err += e
    u2, e = _extend(base_b, p3_b, neg(LASTS_B_MINUS_C), B_LEADS_C, tol)
    err += e
    u12, e = _extend(
        base_b + (LASTS_A_MINUS_B,), u1, neg(LASTS_B_MINUS_C), B_LEADS_C, tol
    )
    err += e
    b_branch = p3_b - u1 - u2 + u12

    return a_branch, b_branch, err


def ic_probabilities(quadrature_tol: float = 1e-10) -> IcProbabilities:
    """Both weakness probabilities with quadrature error bounds."""
    a_bo, b_bo, err_bo, step2, step3 = borda_branch_probabilities(quadrature_tol)
    a_bu, b_bu, err_bu = bucklin_branch_probabilities(quadrature_tol)
    base = ic_spherical_triangle((A_LEADS_B, B_LEADS_C, B_BEATS_A_FINAL))
    return IcProbabilities(
        borda=BranchValues(a_bo, b_bo, 6.0 * err_bo),
        bucklin=BranchValues(a_bu, b_bu, 6.0 * err_bu),
        runner_up_step2=step2,
        runner_up_step3=step3,
        base_triangle=base,
    )
