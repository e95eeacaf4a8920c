"""Spherical cone probabilities via Gauss-Bonnet and the Schlaefli differential.

A system of m constraint vectors spanning an m-dimensional subspace cuts a
spherical (m-1)-simplex out of the unit sphere of that span; for a
rotation-invariant Gaussian the event probability is the simplex volume
divided by the sphere volume.  Three constraints are handled in closed form (angle
excess).  Larger systems are built one constraint at a time: the new
constraint is deformed along

    w(t) = (1 - t) * anchor + t * target,      t in [0, 1],

where the anchor is implied by the existing constraints (so the cone at
t = 0 is the base cone), and the volume change is integrated with the
Schlaefli differential

    dVol_{n} = 1/(n-1) * sum_j Vol_{n-2}(S_j cap S_new) d(alpha_j,new).

Only angles to the moving facet vary, so the sum runs over the fixed
facets.  Vertices of the faces are solved exactly in rational arithmetic at
every quadrature node, preventing cancellation in the angle formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from scipy.integrate import quad

Vec = tuple[Fraction, ...]

_SPHERE_AREA = {2: 4.0 * math.pi, 3: 2.0 * math.pi**2, 4: 8.0 * math.pi**2 / 3.0}

ONES = (1, 1, 1, 1, 1, 1)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class DegenerateConeError(ValueError):
    """Constraint normals lost rank or a facet collapsed mid-deformation."""


def _frac_vec(v: Sequence) -> Vec:
    return tuple(Fraction(x) for x in v)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _kernel_basis(rows: Sequence[Vec], ncols: int = 6) -> list[Vec]:
    """Basis of {x : r . x = 0 for every row r}, by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def _angle(u: Vec, v: Vec) -> float:
    """Angle between two exact vectors, computed from exact dot products."""
    uu, vv, uv = _dot(u, u), _dot(v, v), _dot(u, v)
    c = float(uv) / math.sqrt(float(uu) * float(vv))
    return math.acos(max(-1.0, min(1.0, c)))


def _dihedral_angle(vi: Vec, vj: Vec) -> float:
    """Interior dihedral angle between the facets whose inward normals are given."""
    uu, vv, uv = _dot(vi, vi), _dot(vj, vj), _dot(vi, vj)
    c = -float(uv) / math.sqrt(float(uu) * float(vv))
    return math.acos(max(-1.0, min(1.0, c)))


def ic_spherical_triangle(normals: Sequence[Sequence]) -> float:
    """Probability of a three-constraint cone: spherical-triangle area / 4 pi.

    The angle excess (Gauss-Bonnet) gives the area from the dihedral angles
    alpha_ij = arccos(-v_i . v_j / (|v_i| |v_j|)).  Raises on fewer than
    three independent normals.
    """
    vs = [_frac_vec(v) for v in normals]
    if len(vs) != 3:
        raise ValueError("ic_spherical_triangle expects exactly three normals")
    if len(_kernel_basis(vs)) != 3:
        raise DegenerateConeError("normals are linearly dependent")
    a12 = _dihedral_angle(vs[0], vs[1])
    a13 = _dihedral_angle(vs[0], vs[2])
    a23 = _dihedral_angle(vs[1], vs[2])
    return (a12 + a13 + a23 - math.pi) / (4.0 * math.pi)


def _spherical_triangle_area(p1: Vec, p2: Vec, p3: Vec) -> float:
    """Area of the spherical triangle with the given (unnormalized) vertices."""
    a = _angle(p2, p3)
    b = _angle(p1, p3)
    c = _angle(p1, p2)
    if min(a, b, c) < 1e-14:
        return 0.0

    def corner(opp, adj1, adj2):
        num = math.cos(opp) - math.cos(adj1) * math.cos(adj2)
        den = math.sin(adj1) * math.sin(adj2)
        return math.acos(max(-1.0, min(1.0, num / den)))

    return corner(a, b, c) + corner(b, a, c) + corner(c, a, b) - math.pi


@dataclass(frozen=True)
class SphericalCone:
    """A solved base cone plus one deformed constraint.

    ``anchor_normal`` must be implied by the base constraints (a nonnegative
    combination of them), so that at t = 0 the added constraint is redundant
    and the cone volume equals the base volume.  At t = 1 the added
    constraint equals ``target_normal``.
    """

    base_normals: tuple[Vec, ...]
    target_normal: Vec
    anchor_normal: Vec

    def __init__(self, base_normals, target_normal, anchor_normal):
        object.__setattr__(self, "base_normals", tuple(_frac_vec(v) for v in base_normals))
        object.__setattr__(self, "target_normal", _frac_vec(target_normal))
        object.__setattr__(self, "anchor_normal", _frac_vec(anchor_normal))
        for v in self.base_normals + (self.target_normal, self.anchor_normal):
            if len(v) != 6:
                raise ValueError("normals live in six coordinates")
            if _dot(v, _frac_vec(ONES)) != 0:
                raise ValueError("normals must be orthogonal to the all-ones vector")
        if len(self.base_normals) not in (3, 4):
            raise ValueError("base cone must have three or four constraints")

    def deformed_normal(self, t: Fraction) -> Vec:
        s = Fraction(1) - t
        return tuple(s * a + t * g for a, g in zip(self.anchor_normal, self.target_normal))

    def normals_at(self, t: Fraction) -> list[Vec]:
        return list(self.base_normals) + [self.deformed_normal(t)]

    def pairwise_angles(self, t: float) -> dict[tuple[int, int], float]:
        vs = self.normals_at(Fraction(t))
        return {
            (i, j): _dihedral_angle(vs[i], vs[j])
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        }


def _vertex(tight: Sequence[Vec], complement: Sequence[Vec],
            orient: Sequence[Vec]) -> Optional[Vec]:
    """Unit ray orthogonal to the tight normals inside the constraint span.

    Returns the (unnormalized) solution oriented so every remaining
    constraint is non-negative, or None when no orientation satisfies them
    (the candidate is not a vertex of the cone).
    """
    ker = _kernel_basis(list(tight) + list(complement))
    if len(ker) != 1:
        raise DegenerateConeError("vertex solve did not yield a unique ray")
    x = ker[0]
    dots = [_dot(v, x) for v in orient]
    if all(d >= 0 for d in dots) and any(d > 0 for d in dots):
        return x
    if all(d <= 0 for d in dots) and any(d < 0 for d in dots):
        return tuple(-c for c in x)
    return None


def _dalpha_dt(vj: Vec, cone: SphericalCone, t: Fraction) -> float:
    """d/dt of the dihedral angle between fixed facet j and the moving facet."""
    w = cone.deformed_normal(t)
    a, g = cone.anchor_normal, cone.target_normal
    p0, p1 = _dot(vj, a), _dot(vj, g)
    p = p0 + (p1 - p0) * t
    dp = p1 - p0
    qj = _dot(vj, vj)
    q = _dot(w, w)
    # q(t) is quadratic; differentiate exactly
    aa, ag, gg = _dot(a, a), _dot(a, g), _dot(g, g)
    dq = 2 * (ag - aa) + 2 * t * (aa - 2 * ag + gg)
    Q = qj * q
    dQ = qj * dq
    disc = Q - p * p
    if disc <= 0:
        raise DegenerateConeError("moving facet became parallel to a fixed facet")
    num = 2 * dp * Q - p * dQ
    return float(num) / (2.0 * float(Q) * math.sqrt(float(disc)))


def _face_volume(normals: list[Vec], j: int, complement: list[Vec]) -> float:
    """Volume of the face where facet j meets the moving facet (the last one).

    For four constraints the face is an arc (two candidate endpoints); for
    five it is a spherical triangle (three candidate vertices).  Candidates
    that violate a remaining constraint are not vertices; a face with too
    few vertices is empty and contributes nothing.
    """
    m = len(normals)
    moving = m - 1
    rest = [k for k in range(m) if k not in (j, moving)]
    verts = []
    if m == 4:
        for r in rest:
            other = [k for k in rest if k != r]
            v = _vertex(
                [normals[j], normals[moving], normals[r]], complement,
                [normals[k] for k in other],
            )
            if v is not None:
                verts.append(v)
        if len(verts) < 2:
            return 0.0
        return _angle(verts[0], verts[1])
    if m == 5:
        for idx in range(3):
            pair = [rest[k] for k in range(3) if k != idx]
            v = _vertex(
                [normals[j], normals[moving]] + [normals[k] for k in pair],
                complement, [normals[rest[idx]]],
            )
            if v is not None:
                verts.append(v)
        if len(verts) < 3:
            return 0.0
        return _spherical_triangle_area(*verts)
    raise ValueError("faces implemented for four- and five-constraint cones")


def _integrand(cone: SphericalCone, t_float: float) -> float:
    t = Fraction(t_float)
    normals = cone.normals_at(t)
    m = len(normals)
    complement = _kernel_basis(normals)
    if len(complement) != 6 - m:
        raise DegenerateConeError(f"constraint rank dropped at t = {t_float!r}")
    total = 0.0
    for j in range(m - 1):
        vol = _face_volume(normals, j, complement)
        if vol != 0.0:
            total += vol * _dalpha_dt(normals[j], cone, t)
    return total


def ic_schlafli_volume(
    cone: SphericalCone,
    quadrature_tol: float = 1e-10,
    base_probability: Optional[float] = None,
) -> float:
    """Probability of the cone at t = 1, integrating the Schlaefli form.

    ``base_probability`` is the probability of the base cone (the t = 0
    cone, where the deformed constraint is redundant); when the base has
    exactly three constraints it is computed directly.
    """
    value, _ = schlafli_probability(cone, quadrature_tol, base_probability)
    return value


def schlafli_probability(
    cone: SphericalCone,
    quadrature_tol: float = 1e-10,
    base_probability: Optional[float] = None,
) -> tuple[float, float]:
    """Like ic_schlafli_volume but also returns the quadrature error bound."""
    if base_probability is None:
        if len(cone.base_normals) != 3:
            raise ValueError(
                "base_probability is required when the base cone has more "
                "than three constraints"
            )
        base_probability = ic_spherical_triangle(cone.base_normals)
    m = len(cone.base_normals) + 1
    simplex_dim = m - 1
    integral, abserr = quad(
        lambda t: _integrand(cone, t), 0.0, 1.0,
        epsabs=quadrature_tol, epsrel=1e-12, limit=200,
    )
    if abserr > max(50 * quadrature_tol, 1e-12):
        raise QuadratureError(
            f"quadrature error {abserr:.2e} exceeds tolerance {quadrature_tol:.2e}"
        )
    delta = integral / (simplex_dim - 1) / _SPHERE_AREA[simplex_dim]
    return base_probability + delta, abserr / (simplex_dim - 1) / _SPHERE_AREA[simplex_dim]
