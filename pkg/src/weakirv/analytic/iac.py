"""Uniform-profile (count-simplex) probabilities: closed forms, sampling,
and exact small-electorate enumeration.

The uniform-profile model draws the six ranking counts uniformly from all
non-negative integer 6-tuples summing to V.  As V grows this converges to
the uniform distribution on the standard 5-simplex, where each event region
is a union of polyhedral pieces whose volumes have known closed forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ..core import RANKINGS, RANKING_INDEX
from .systems import InequalitySystem, SYSTEM_SETS

#: canonical-order region volumes of the five systems (before the factor 6),
#: from the lattice-point computation the closed forms derive from
CLOSED_FORM_PARTS = {
    "A_WINS_BORDA": Fraction(59, 103680),
    "B_WINS_BORDA": Fraction(695, 290304),
    "A_MAJORITY_MLP": Fraction(1, 432),
    "A_ROUND2_MLP": Fraction(55, 10368),
    "B_WINS_MLP": Fraction(125, 41472),
}

_CLOSED_FORMS = {
    "borda": Fraction(4301, 241920),
    "bucklin": Fraction(115, 2304),
    "most_last_place": Fraction(49, 768),
}

#: canonical-region size cap for the exact enumerator (~1e8 integer points)
ENUMERATION_GUARD = 10**8


@dataclass(frozen=True)
class IacResult:
    measure: str
    estimate: float
    stderr: float
    method: str
    n_samples: int


def iac_closed_form() -> dict[str, Fraction]:
    """Exact limiting probabilities that the IRV winner is each weak loser."""
    return dict(_CLOSED_FORMS)


def iac_closed_form_parts() -> dict[str, Fraction]:
    """Per-system canonical-region volumes; 6 * (their sums) give the totals."""
    return dict(CLOSED_FORM_PARTS)


def _role_column_permutations() -> np.ndarray:
    """Column index maps sending role-labeled counts to candidate counts.

    Row p of the result lists, for each canonical column (role ranking), the
    data column holding the matching candidate ranking under the p-th
    assignment of candidates to roles (A, B, C).
    """
    perms = []
    for assign in itertools.permutations(range(3)):
        cols = []
        for role_ranking in RANKINGS:
            cand_ranking = tuple(assign[r] for r in role_ranking)
            cols.append(RANKING_INDEX[cand_ranking])
        perms.append(cols)
    return np.array(perms)


_ROLE_PERMS = _role_column_permutations()


def _event_hits(x: np.ndarray, systems: Sequence[InequalitySystem]) -> np.ndarray:
    """For each sample row, whether any candidate relabeling lands in any system.

    All constraints are homogeneous, so samples need no normalization.  At
    most one relabeling can satisfy a system set (the plurality order inside
    each system is strict), so this equals the union over relabelings.
    """
    n = x.shape[0]
    hit = np.zeros(n, dtype=bool)
    mats = [np.array(s.all_constraints(), dtype=float).T for s in systems]
    for cols in _ROLE_PERMS:
        xr = x[:, cols]
        for mat in mats:
            hit |= (xr @ mat > 0.0).all(axis=1)
    return hit


def iac_simplex_sample(
    systems: Sequence[InequalitySystem],
    n_samples: int,
    rng_seed,
    block: int = 1_000_000,
    measure: str = "",
) -> IacResult:
    """Uniform samples on the 5-simplex via normalized unit exponentials.

    Counts the fraction of samples whose profile (under the matching
    relabeling) satisfies one of the systems; strict inequalities only, so
    boundary sets are ignored (they have measure zero).
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(rng_seed)
    count = 0
    done = 0
    while done < n_samples:
        n = min(block, n_samples - done)
        x = rng.standard_exponential((n, 6))
        count += int(np.count_nonzero(_event_hits(x, systems)))
        done += n
    p = count / n_samples
    se = math.sqrt(p * (1.0 - p) / n_samples)
    return IacResult(measure, p, se, f"SIMPLEX_SAMPLING({n_samples})", n_samples)


def _compositions_total(v: int) -> int:
    return math.comb(v + 5, 5)


def iac_enumerate(systems: Sequence[InequalitySystem], v: int) -> Fraction:
    """Exact probability at electorate size v by counting integer profiles.

    Enumerates the canonical-order region (strict plurality order) and
    multiplies by 6; the canonical region holds about C(v+5,5)/6 points and
    is capped at ENUMERATION_GUARD points.
    """
    if v < 0:
        raise ValueError("v must be non-negative")
    if _compositions_total(v) // 6 > ENUMERATION_GUARD:
        raise ValueError(
            f"C({v}+5,5)/6 canonical profiles exceed the enumeration guard "
            f"({ENUMERATION_GUARD:.0e}); use iac_simplex_sample instead"
        )
    if any(not s.all_constraints() for s in systems):
        # a constraint-free system admits every profile under any relabeling
        return Fraction(1)
    count = 0
    for s_a in range(v + 1):
        for s_b in range(min(s_a, v - s_a) + 1):
            s_c = v - s_a - s_b
            if not s_a > s_b > s_c:
                continue
            count += _count_region(systems, s_a, s_b, s_c)
    return Fraction(6 * count, _compositions_total(v))


def _count_region(systems, s_a, s_b, s_c) -> int:
    """Profiles with the given plurality totals landing in any system."""
    a1 = np.arange(s_a + 1, dtype=np.int32)[:, None, None]
    b1 = np.arange(s_b + 1, dtype=np.int32)[None, :, None]
    c1 = np.arange(s_c + 1, dtype=np.int32)[None, None, :]
    any_hit = None
    for system in systems:
        ok = None
        for w in system.all_constraints():
            # w . x with x = (a1, s_a-a1, b1, s_b-b1, c1, s_c-c1)
            expr = (
                (w[0] - w[1]) * a1
                + (w[2] - w[3]) * b1
                + (w[4] - w[5]) * c1
                + (w[1] * s_a + w[3] * s_b + w[5] * s_c)
            )
            cond = expr > 0
            ok = cond if ok is None else (ok & cond)
            if not ok.any():
                break
        if ok is not None:
            any_hit = ok if any_hit is None else (any_hit | ok)
    if any_hit is None:
        return 0
    return int(np.count_nonzero(any_hit))
