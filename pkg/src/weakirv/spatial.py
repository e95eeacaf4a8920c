"""Euclidean voter models: placement sampling, ballot derivation, utilities.

Three axis distributions are supported.  UNI is the standard normal.  BIM(s)
is an equal mixture of normals centered at -1 and +1 with standard deviation
s; WBI(s) is the same mixture weighted 60/40 toward the left component.
A model is one axis (positions on the line) or two (independent axes).

Sampling scheme (chosen to reproduce the reference tabulations, see README):

* voter component counts are stratified: exactly round(w*n) of the n voters
  come from the left component of each mixture axis, the rest from the right,
  assigned contiguously so both axes of a 2D model agree on the component;
* the 3 candidates each draw one uniform component variable, shared across
  axes (a candidate is left or right as a whole), with normal noise per axis.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .core import Profile3

AXIS_KINDS = ("UNI", "BIM", "WBI")

#: probability that a point's component is the left one
_LEFT_WEIGHT = {"BIM": 0.5, "WBI": 0.6}

#: candidates closer than this are flagged as coincident
COINCIDENCE_TOL = 1e-12


@dataclass(frozen=True)
class AxisDistribution:
    kind: str
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.kind not in AXIS_KINDS:
            raise ValueError(f"unknown axis distribution {self.kind!r}")
        if self.kind == "UNI":
            if self.sigma is not None:
                raise ValueError("UNI takes no sigma parameter")
        else:
            if self.sigma is None or not self.sigma > 0:
                raise ValueError(f"{self.kind} requires sigma > 0, got {self.sigma!r}")

    def __str__(self):
        return "UNI" if self.kind == "UNI" else f"{self.kind}({self.sigma:g})"


@dataclass(frozen=True)
class SpatialModel:
    axes: tuple[AxisDistribution, ...]

    def __post_init__(self):
        if len(self.axes) not in (1, 2):
            raise ValueError("a spatial model has 1 or 2 axes")
        object.__setattr__(self, "axes", tuple(self.axes))

    @property
    def dimension(self) -> int:
        return len(self.axes)

    def with_sigma(self, sigma: float) -> "SpatialModel":
        """Copy of the model with every mixture axis set to the given sigma."""
        return SpatialModel(tuple(
            a if a.kind == "UNI" else AxisDistribution(a.kind, sigma) for a in self.axes
        ))

    @property
    def has_sigma_axis(self) -> bool:
        return any(a.kind != "UNI" for a in self.axes)

    def __str__(self):
        return "x".join(str(a) for a in self.axes)


def parse_model(spec: str) -> SpatialModel:
    """Parse model strings like ``UNI``, ``BIM(0.5)`` or ``UNIxBIM(0.5)``."""
    axes = []
    for part in spec.replace(" ", "").split("x"):
        if part.upper() == "UNI":
            axes.append(AxisDistribution("UNI"))
            continue
        kind, sep, rest = part.partition("(")
        kind = kind.upper()
        if kind not in AXIS_KINDS or not sep or not rest.endswith(")"):
            raise ValueError(f"cannot parse axis distribution {part!r}")
        axes.append(AxisDistribution(kind, float(rest[:-1])))
    return SpatialModel(tuple(axes))


@dataclass(frozen=True)
class SpatialElection:
    voter_positions: np.ndarray     # (V, d)
    candidate_positions: np.ndarray  # (3, d)

    @property
    def dimension(self) -> int:
        return self.voter_positions.shape[1]

    @property
    def v_count(self) -> int:
        return self.voter_positions.shape[0]

    def coincident_candidates(self) -> bool:
        """True when two candidates sit within COINCIDENCE_TOL of each other."""
        c = self.candidate_positions
        for i in range(3):
            for j in range(i + 1, 3):
                if np.linalg.norm(c[i] - c[j]) < COINCIDENCE_TOL:
                    return True
        return False


def _sample_voters(model: SpatialModel, n: int, rng: np.random.Generator) -> np.ndarray:
    pts = np.empty((n, model.dimension))
    for k, axis in enumerate(model.axes):
        if axis.kind == "UNI":
            pts[:, k] = rng.standard_normal(n)
            continue
        n_left = round(_LEFT_WEIGHT[axis.kind] * n)
        noise = rng.standard_normal(n) * axis.sigma
        pts[:n_left, k] = noise[:n_left] - 1.0
        pts[n_left:, k] = noise[n_left:] + 1.0
    return pts


def _sample_candidates(model: SpatialModel, rng: np.random.Generator) -> np.ndarray:
    pts = np.empty((3, model.dimension))
    shared = rng.random(3)
    for k, axis in enumerate(model.axes):
        if axis.kind == "UNI":
            pts[:, k] = rng.standard_normal(3)
            continue
        noise = rng.standard_normal(3) * axis.sigma
        left = shared < _LEFT_WEIGHT[axis.kind]
        pts[:, k] = noise + np.where(left, -1.0, 1.0)
    return pts


def sample_election(model: SpatialModel, v_count: int, rng_seed) -> SpatialElection:
    """Place voters and candidates; deterministic for a given seed.

    Draw order is fixed: voter coordinates axis by axis, then the candidates'
    shared component variables, then candidate coordinates axis by axis.
    """
    if v_count < 1:
        raise ValueError("v_count must be at least 1")
    rng = np.random.default_rng(rng_seed)
    voters = _sample_voters(model, v_count, rng)
    cands = _sample_candidates(model, rng)
    return SpatialElection(voters, cands)


def _ranking_arrays(election: SpatialElection, rng: np.random.Generator):
    """Per-voter (first, second, third) choices, distance ties broken uniformly."""
    v = election.voter_positions
    c = election.candidate_positions
    d2 = ((v[:, None, :] - c[None, :, :]) ** 2).sum(-1)
    pr = rng.random((election.v_count, 3))
    d0, d1, d2c = d2[:, 0], d2[:, 1], d2[:, 2]
    b01 = (d0 < d1) | ((d0 == d1) & (pr[:, 0] < pr[:, 1]))
    b02 = (d0 < d2c) | ((d0 == d2c) & (pr[:, 0] < pr[:, 2]))
    b12 = (d1 < d2c) | ((d1 == d2c) & (pr[:, 1] < pr[:, 2]))
    r0 = (~b01).astype(np.int8) + (~b02)
    r1 = b01 + (~b12).astype(np.int8)
    first = np.select([r0 == 0, r1 == 0], [0, 1], 2)
    second = np.select([r0 == 1, r1 == 1], [0, 1], 2)
    third = 3 - first - second
    return first, second, third


def derive_profile(election: SpatialElection, bullet_prob: float, rng_seed) -> Profile3:
    """Rank candidates by increasing Euclidean distance for every voter.

    Each voter independently truncates to a bullet vote with probability
    ``bullet_prob``.  Random draws come in fixed order: tie-break priorities,
    then the truncation mask.
    """
    if not 0.0 <= bullet_prob <= 1.0:
        raise ValueError("bullet_prob must lie in [0, 1]")
    rng = np.random.default_rng(rng_seed)
    first, second, third = _ranking_arrays(election, rng)
    idx = 2 * first + (second > third)
    if bullet_prob > 0:
        bullet = rng.random(election.v_count) < bullet_prob
        full = np.bincount(idx[~bullet], minlength=6)
        bullets = np.bincount(first[bullet], minlength=3)
    else:
        full = np.bincount(idx, minlength=6)
        bullets = np.zeros(3, dtype=int)
    return Profile3(tuple(int(x) for x in full), tuple(int(x) for x in bullets))


def social_utilities(election: SpatialElection) -> tuple[float, float, float]:
    """Utility of each candidate: minus the summed Euclidean distance to all voters."""
    v = election.voter_positions
    c = election.candidate_positions
    d = np.sqrt(((v[:, None, :] - c[None, :, :]) ** 2).sum(-1))
    return tuple(float(x) for x in -d.sum(axis=0))


def min_utility_candidate(election: SpatialElection) -> Optional[int]:
    """Index of the strictly unique minimum-utility candidate, else None."""
    u = social_utilities(election)
    i = min(range(3), key=lambda c: u[c])
    if sum(1 for c in range(3) if u[c] == u[i]) > 1:
        return None
    return i


def positions_to_csv(election: SpatialElection, out: Union[str, IO[str]]) -> None:
    """Dump positions, one row per point with a role column, for plotting."""
    own = isinstance(out, str)
    fh = open(out, "w", newline="") if own else out
    try:
        w = csv.writer(fh)
        dim = election.dimension
        w.writerow(["role"] + [f"x{k}" for k in range(dim)])
        for row in election.voter_positions:
            w.writerow(["voter"] + [repr(float(x)) for x in row])
        for row in election.candidate_positions:
            w.writerow(["candidate"] + [repr(float(x)) for x in row])
    finally:
        if own:
            fh.close()


def mixture_cdf_below(axis: AxisDistribution, x: float) -> float:
    """Exact CDF at x for one axis distribution (normal-CDF mixture)."""
    if axis.kind == "UNI":
        return 0.5 * (1.0 + math.erf(x / math.sqrt(2)))
    w = _LEFT_WEIGHT[axis.kind]
    phi = lambda z: 0.5 * (1.0 + math.erf(z / math.sqrt(2)))
    return w * phi((x + 1.0) / axis.sigma) + (1.0 - w) * phi((x - 1.0) / axis.sigma)
