"""Equiprobable-ranking limits by Gaussian cone sampling.

With every voter independently uniform over the six rankings, the count
vector is multinomial; centered and scaled by sqrt(V) it converges to a
normal with covariance (I - J/6)/6 (J the all-ones matrix).  For a
constraint vector w with zero coefficient sum, w . J = 0, so the limiting
law of the constraint margins is identical to that of w . z for z a
standard 6-dimensional Gaussian.  Limiting event probabilities therefore
equal standard-Gaussian cone probabilities; docs/gaussian-cone-note.md
carries the derivation, and ic_multinomial_cov_sample checks it by sampling
the exact limiting covariance instead.

Majority clauses have a nonzero coefficient sum, so their margins drift at
rate V and the clauses hold (or fail) with limiting probability 1; they are
dropped here, mirroring how the geometric route treats them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .iac import _event_hits
from .systems import InequalitySystem


@dataclass(frozen=True)
class IcResult:
    measure: str
    estimate: float
    stderr: float
    method: str
    n_samples: int


def _zero_sum_only(systems: Sequence[InequalitySystem]) -> list[InequalitySystem]:
    return [
        InequalitySystem(s.label, s.constraints) if s.majority_constraints else s
        for s in systems
    ]


def _sample_frequency(systems, n_samples, rng_seed, transform, method, measure, block):
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(rng_seed)
    reduced = _zero_sum_only(systems)
    count = 0
    done = 0
    while done < n_samples:
        n = min(block, n_samples - done)
        z = rng.standard_normal((n, 6))
        count += int(np.count_nonzero(_event_hits(transform(z), reduced)))
        done += n
    p = count / n_samples
    se = math.sqrt(p * (1.0 - p) / n_samples)
    return IcResult(measure, p, se, method, n_samples)


def ic_gaussian_cone(
    systems: Sequence[InequalitySystem],
    n_samples: int,
    rng_seed,
    block: int = 1_000_000,
    measure: str = "",
) -> IcResult:
    """Frequency with which standard-Gaussian vectors satisfy the systems,
    summed over candidate relabelings."""
    return _sample_frequency(
        systems, n_samples, rng_seed, lambda z: z,
        f"GAUSSIAN_CONE({n_samples})", measure, block,
    )


def ic_multinomial_cov_sample(
    systems: Sequence[InequalitySystem],
    n_samples: int,
    rng_seed,
    block: int = 1_000_000,
    measure: str = "",
) -> IcResult:
    """Same frequency under the exact multinomial limit covariance.

    Samples y = (z - mean(z)) / sqrt(6), which has covariance (I - J/6)/6;
    agreement with ic_gaussian_cone validates the identity-covariance
    reduction numerically.
    """
    def transform(z):
        return (z - z.mean(axis=1, keepdims=True)) / math.sqrt(6.0)

    return _sample_frequency(
        systems, n_samples, rng_seed, transform,
        f"MULTINOMIAL_COV({n_samples})", measure, block,
    )
