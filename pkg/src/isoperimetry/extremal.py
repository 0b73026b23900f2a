"""Extremal sets for the vertex and edge problems, and excess reporting.

``ball(B, n)`` is the lattice part of the smallest integer dilate of the
conical hull C(B) holding at least n points; ``edge_ball`` does the same for
the subset sums [B], whose conical hull is the zonotope Z(B).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .cayley import boundary, subset_sums
from .errors import DegenerateError, IsoperimetryError, NotGeneratingError
from .exactgeom import conical_hull, dilate, format_rational, is_generating, lattice_points
from .lattice import PointSet, _same_dimension, box


@dataclass(frozen=True)
class ExtremalBall:
    base: PointSet
    kappa: int
    points: PointSet
    target_n: int


@dataclass(frozen=True)
class IsoperimetricConstants:
    dimension: int
    volume_C: Fraction
    volume_Z: Fraction
    beta_vertex: float
    beta_edge: float
    # beta ** d, kept exact
    beta_vertex_pow: Fraction
    beta_edge_pow: Fraction

    def to_dict(self) -> dict:
        return {
            "d": self.dimension,
            "volume_C": format_rational(self.volume_C),
            "volume_Z": format_rational(self.volume_Z),
            "beta_vertex": self.beta_vertex,
            "beta_edge": self.beta_edge,
            "beta_vertex_pow": format_rational(self.beta_vertex_pow),
            "beta_edge_pow": format_rational(self.beta_edge_pow),
        }


@dataclass
class IsoperimetricReport:
    n: int
    boundary_value: int
    beta: float
    epsilon: float
    # sign of epsilon decided in exact arithmetic
    epsilon_sign: int
    best_v: tuple | None = None
    symdiff: int | None = None
    normalized_symdiff: float | None = None

    @property
    def excluded(self) -> bool:
        """Rows with non-positive excess cannot be normalized by sqrt(eps)."""
        return self.epsilon_sign <= 0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["best_v"] = list(self.best_v) if self.best_v is not None else None
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def csv_row(self) -> list:
        v = list(self.best_v) if self.best_v is not None else []
        return [self.n, self.boundary_value, repr(self.beta), repr(self.epsilon), *v,
                "" if self.symdiff is None else self.symdiff,
                "" if self.normalized_symdiff is None else repr(self.normalized_symdiff)]


def report_csv(reports: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = max((len(r.best_v) for r in reports if r.best_v is not None), default=0)
    w.writerow(["n", "boundary", "beta", "epsilon", *[f"v{i}" for i in range(d)],
                "symdiff", "normalized"])
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _count(C, k):
    return len(lattice_points(dilate(C, k)))


def kappa(B: PointSet, n: int) -> int:
    """Least k >= 1 with at least n lattice points in k * C(B)."""
    if n < 1:
        raise IsoperimetryError("n must be positive")
    C = conical_hull(B)
    if not C.full_dimensional:
        raise DegenerateError("conical hull of B is not full-dimensional")
    hi = 1
    while _count(C, hi) < n:
        hi *= 2
    lo = hi // 2  # count(lo) < n, or lo == 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _count(C, mid) >= n:
            hi = mid
        else:
            lo = mid
    return hi


def ball(B: PointSet, n: int) -> ExtremalBall:
    k = kappa(B, n)
    pts = lattice_points(dilate(conical_hull(B), k))
    return ExtremalBall(B, k, pts, n)


def edge_ball(B: PointSet, n: int) -> ExtremalBall:
    sums = subset_sums(B)
    ext = ball(sums, n)
    return ExtremalBall(sums, ext.kappa, ext.points, n)


def _beta(vol: Fraction, d: int) -> tuple[float, Fraction]:
    return d * float(vol) ** (1.0 / d), Fraction(d) ** d * vol


def constants(B: PointSet) -> IsoperimetricConstants:
    if not is_generating(B):
        raise NotGeneratingError("B does not generate Z^d")
    d = B.dimension
    vol_c = conical_hull(B).volume
    vol_z = conical_hull(subset_sums(B)).volume
    bv, bvp = _beta(vol_c, d)
    be, bep = _beta(vol_z, d)
    return IsoperimetricConstants(d, vol_c, vol_z, bv, be, bvp, bep)


def excess_sign(value: int, beta_pow: Fraction, n: int, d: int) -> int:
    """Sign of ``value - beta * n ** (1 - 1/d)`` in exact arithmetic."""
    lhs = Fraction(value) ** d
    rhs = beta_pow * Fraction(n) ** (d - 1)
    return (lhs > rhs) - (lhs < rhs)


def _excess(A: PointSet, B: PointSet, objective: str) -> IsoperimetricReport:
    if not len(A):
        raise IsoperimetryError("A must be nonempty")
    _same_dimension(A, B)
    consts = constants(B)
    d = A.dimension
    n = len(A)
    if objective == "vertex":
        beta, beta_pow = consts.beta_vertex, consts.beta_vertex_pow
    else:
        beta, beta_pow = consts.beta_edge, consts.beta_edge_pow
    value = boundary(A, B, objective)
    sign = excess_sign(value, beta_pow, n, d)
    eps = 0.0 if sign == 0 else value / (beta * n ** (1 - 1 / d)) - 1
    return IsoperimetricReport(n, value, beta, eps, sign)


def vertex_excess(A: PointSet, B: PointSet) -> IsoperimetricReport:
    """Excess of the vertex boundary over ``beta_v * n^(1-1/d)`` (may be negative)."""
    return _excess(A, B, "vertex")


def edge_excess(A: PointSet, B: PointSet) -> IsoperimetricReport:
    return _excess(A, B, "edge")


def best_translate_symdiff(A: PointSet, S: PointSet) -> tuple[tuple, int]:
    """Integer v minimizing ``|A symdiff (v + S)|``; ties go to the smallest v.

    Overlaps are tallied over the differences a - s, so only translates that
    meet A are ever inspected; every other v has the maximal value |A|+|S|.
    """
    if not len(A) or not len(S):
        raise IsoperimetryError("both sets must be nonempty")
    _same_dimension(A, S)
    overlap = {}
    for a in A.points:
        for s in S.points:
            v = tuple(x - y for x, y in zip(a, s))
            overlap[v] = overlap.get(v, 0) + 1
    best_v = min(overlap, key=lambda v: (-overlap[v], v))
    return best_v, len(A) + len(S) - 2 * overlap[best_v]


def full_report(A: PointSet, B: PointSet, objective: str = "vertex") -> IsoperimetricReport:
    """Excess plus distance to the nearest translate of the extremal ball."""
    rep = _excess(A, B, objective)
    target = ball(B, len(A)) if objective == "vertex" else edge_ball(B, len(A))
    v, sd = best_translate_symdiff(A, target.points)
    rep.best_v = v
    rep.symdiff = sd
    if not rep.excluded:
        rep.normalized_symdiff = sd / (rep.n * math.sqrt(rep.epsilon))
    return rep


def tight_example(d: int, sides) -> tuple[PointSet, PointSet]:
    """Cube-corner generators ``{0,1}^d`` and the cuboid ``prod [0, a_i)``."""
    sides = tuple(int(a) for a in sides)
    if len(sides) != d:
        raise IsoperimetryError("need one side length per dimension")
    if any(a < 1 for a in sides):
        raise IsoperimetryError("side lengths must be at least 1")
    return box((2,) * d), box(sides)
