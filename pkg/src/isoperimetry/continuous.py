"""Cube-union bodies ``A + [-1/2, 1/2]^d`` and anisotropic isoperimetry.

For a closed convex polytope K the anisotropic perimeter of a cube union is
the first-order growth rate of ``mu(E + tK)`` at t = 0.  Each exposed unit
facet with outward normal u moves out by the support value h_K(u); the
overlaps at corners are O(t^2), so the perimeter is the facet count weighted
by support values and no limit needs to be taken numerically.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateError, IsoperimetryError
from .exactgeom import (
    RationalPolytope,
    as_vector,
    convex_hull,
    cube_clip_volume,
    dilate,
    format_rational,
    support_function,
    translate,
)
from .lattice import PointSet


@dataclass(frozen=True)
class CubeUnionBody:
    """Union of the closed unit cubes centred at ``cells``."""

    cells: PointSet

    @property
    def dimension(self) -> int:
        return self.cells.dimension

    @property
    def measure(self) -> int:
        return len(self.cells)

    def exposed_facets(self) -> dict:
        """Count of exposed facets per outward direction ``(axis, sign)``."""
        pts = self.cells.points
        counts = {}
        for i in range(self.dimension):
            for s in (1, -1):
                n = 0
                for c in pts:
                    nb = c[:i] + (c[i] + s,) + c[i + 1:]
                    if nb not in pts:
                        n += 1
                counts[(i, s)] = n
        return counts

    def contains(self, x) -> bool:
        """Closed-set membership for a rational point."""
        x = as_vector(x)
        half = Fraction(1, 2)
        ranges = []
        for xi in x:
            lo, hi = math.ceil(xi - half), math.floor(xi + half)
            ranges.append(range(lo, hi + 1))
        return any(c in self.cells.points for c in itertools.product(*ranges))


def cube_union(A: PointSet) -> CubeUnionBody:
    if not len(A):
        raise IsoperimetryError("A must be nonempty")
    return CubeUnionBody(A)


def _require_body(K: RationalPolytope):
    if not K.full_dimensional:
        raise DegenerateError("K must be full-dimensional")


def _axis(i, s, d):
    e = [0] * d
    e[i] = s
    return tuple(e)


def perimeter(E: CubeUnionBody, K: RationalPolytope) -> Fraction:
    """Anisotropic perimeter of E with respect to K, exactly."""
    _require_body(K)
    if K.dimension != E.dimension:
        raise IsoperimetryError("E and K differ in dimension")
    d = E.dimension
    return sum(
        (count * support_function(K, _axis(i, s, d)) for (i, s), count in E.exposed_facets().items()),
        Fraction(0),
    )


def wulff_sign(E: CubeUnionBody, K: RationalPolytope) -> int:
    """Sign of ``Per_K(E)^d - d^d mu(K) mu(E)^(d-1)``."""
    d = E.dimension
    lhs = perimeter(E, K) ** d
    rhs = Fraction(d) ** d * K.volume * Fraction(E.measure) ** (d - 1)
    return (lhs > rhs) - (lhs < rhs)


def deficit(E: CubeUnionBody, K: RationalPolytope) -> float:
    """Relative excess of Per_K(E) over the Wulff bound; exactly 0.0 at equality."""
    _require_body(K)
    if wulff_sign(E, K) == 0:
        return 0.0
    d = E.dimension
    bound = d * float(K.volume) ** (1 / d) * E.measure ** (1 - 1 / d)
    return float(perimeter(E, K)) / bound - 1


def _iroot_floor(num: int, den: int, d: int) -> int:
    """Largest integer m with m**d <= num/den (num, den > 0)."""
    m = int((num / den) ** (1 / d))
    while m ** d * den > num:
        m -= 1
    while (m + 1) ** d * den <= num:
        m += 1
    return m


def _exact_root(q: Fraction, d: int):
    a = _iroot_floor(q.numerator, 1, d)
    b = _iroot_floor(q.denominator, 1, d)
    if a ** d == q.numerator and b ** d == q.denominator:
        return Fraction(a, b)
    return None


RADIUS_RESOLUTION = 10**9


@dataclass(frozen=True)
class Asymmetry:
    """Grid upper bound on the Fraenkel asymmetry.

    The compared body is ``center + r * (K - c)`` with c the vertex centroid
    of K; ``center`` equals x0 whenever c = 0.  ``radius`` is r itself when r
    is rational and otherwise a lower rational bound within 1e-9, which makes
    ``value`` a certified upper end.
    """

    value: float
    center: tuple
    overlap: Fraction
    radius: Fraction
    radius_exact: bool

    @property
    def x0(self) -> tuple:
        return self.center

    def __iter__(self):
        return iter((self.value, self.center))

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "x0": [format_rational(x) for x in self.center],
            "overlap": format_rational(self.overlap),
            "radius": format_rational(self.radius),
            "radius_exact": self.radius_exact,
        }


def asymmetric_index(E: CubeUnionBody, K: RationalPolytope, grid_step=Fraction(1, 4)) -> Asymmetry:
    """Minimize ``mu(E symdiff (y + rK))/mu(E)`` over y on a grid of the given step.

    The overlap ``mu(E n (y + P))`` is a sum over cells c of
    ``g(y - c) = mu(cube_0 n (y - c + P))``; g is tabulated once on the grid
    of differences and then accumulated cell by cell.
    """
    _require_body(K)
    if K.dimension != E.dimension:
        raise IsoperimetryError("E and K differ in dimension")
    step = Fraction(grid_step)
    if step <= 0:
        raise IsoperimetryError("grid step must be positive")
    d = E.dimension
    mu_e = E.measure
    q = Fraction(mu_e) / K.volume
    r = _exact_root(q, d)
    exact = r is not None
    if r is None:
        N = RADIUS_RESOLUTION
        r = Fraction(_iroot_floor(q.numerator * N ** d, q.denominator, d), N)
    centroid = tuple(sum(v[i] for v in K.vertices) / len(K.vertices) for i in range(d))
    P = dilate(translate(K, tuple(-x for x in centroid)), r)
    pmin = [min(v[i] for v in P.vertices) for i in range(d)]
    pmax = [max(v[i] for v in P.vertices) for i in range(d)]

    # g on the grid (1/den) Z^d, den = denominator of the step
    half = Fraction(1, 2)
    den = step.denominator
    zranges = [range(math.floor((-half - pmax[i]) * den), math.ceil((half - pmin[i]) * den) + 1)
               for i in range(d)]
    origin = (0,) * d
    g = {}
    for idx in itertools.product(*zranges):
        z = tuple(Fraction(j, den) for j in idx)
        val = cube_clip_volume(translate(P, z), origin)
        if val:
            g[idx] = val
    common = math.lcm(*(v.denominator for v in g.values())) if g else 1
    gint = {k: int(v * common) for k, v in g.items()}

    # accumulate overlaps for centers y = z + c, kept when y lies on the step grid
    stride = step.numerator
    acc = {}
    for c in E.cells.points:
        shift = tuple(x * den for x in c)
        for idx, val in gint.items():
            y = tuple(a + b for a, b in zip(idx, shift))
            acc[y] = acc.get(y, 0) + val
    best_y, best = None, -1
    for y, val in acc.items():
        if any(t % stride for t in y):
            continue
        if val > best or (val == best and y < best_y):
            best_y, best = y, val
    if best_y is None:
        # no grid centre touches E; any window point attains the maximum 2
        lo_e = E.cells.bbox[0]
        best_y = tuple(math.ceil(Fraction(x) * den / stride) * stride for x in lo_e)
        best = 0
    overlap = Fraction(best, common)
    value = float(2 - 2 * overlap / mu_e)
    center = tuple(Fraction(t, den) for t in best_y)
    return Asymmetry(value, center, overlap, r, exact)


def fmp_ratio(E: CubeUnionBody, K: RationalPolytope, grid_step=Fraction(1, 4)) -> float:
    """Asymmetry divided by the square root of the deficit."""
    delta = deficit(E, K)
    if delta <= 0:
        raise IsoperimetryError("deficit is zero; the ratio is undefined")
    return asymmetric_index(E, K, grid_step).value / math.sqrt(delta)


@dataclass
class ScatterRow:
    instance_id: str
    mu_E: int
    per: Fraction
    delta: float
    asym: float
    ratio: float | None

    def to_dict(self) -> dict:
        return {"instance_id": self.instance_id, "mu_E": self.mu_E,
                "per": format_rational(self.per), "delta": self.delta,
                "asym": self.asym, "ratio": self.ratio}


def fmp_scatter(bodies: dict, K: RationalPolytope, grid_step=Fraction(1, 4)) -> list:
    """One scatter row per named body; ratio is None where the deficit is 0."""
    rows = []
    for name, E in bodies.items():
        delta = deficit(E, K)
        asym = asymmetric_index(E, K, grid_step).value
        ratio = asym / math.sqrt(delta) if delta > 0 else None
        rows.append(ScatterRow(name, E.measure, perimeter(E, K), delta, asym, ratio))
    return rows


def scatter_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance_id", "mu_E", "per", "delta", "asym", "ratio"])
    for r in rows:
        w.writerow([r.instance_id, r.mu_E, format_rational(r.per), repr(r.delta),
                    repr(r.asym), "" if r.ratio is None else repr(r.ratio)])
    return buf.getvalue()


def scatter_json(rows: list) -> str:
    return json.dumps([r.to_dict() for r in rows])


def minkowski_content_estimate(E: CubeUnionBody, K: RationalPolytope, eps=Fraction(1, 1000),
                               samples: int = 10**6, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo estimate of ``(mu(E + eps K) - mu(E)) / eps`` and its standard error.

    Samples are drawn uniformly from boxes around the exposed facets (thick
    enough to cover both ``(E + eps K) minus E`` and ``E minus (E + eps K)``)
    and weighted by the inverse of their multiplicity so overlapping boxes
    are not double counted.
    """
    _require_body(K)
    d = E.dimension
    eps = Fraction(eps)
    reach = eps * max(abs(x) for v in K.vertices for x in v)
    if not 0 < reach < Fraction(1, 2):
        raise IsoperimetryError("eps * K must fit inside half a cell")
    # H-representation of the unit cube plus eps K, shared by every cell
    half = Fraction(1, 2)
    corners = [tuple(half * s for s in signs) for signs in itertools.product((-1, 1), repeat=d)]
    M = convex_hull(tuple(a + eps * b for a, b in zip(c, v)) for c in corners for v in K.vertices)
    Ma = np.array([[float(x) for x in a] for a, _ in M.halfspaces])
    Mb = np.array([float(b) for _, b in M.halfspaces])

    cells = np.array(E.cells.sorted(), dtype=np.int64)
    lo = cells.min(axis=0) - 2
    shape = tuple(cells.max(axis=0) - lo + 3)
    occ = np.zeros(shape, dtype=bool)
    occ[tuple((cells - lo).T)] = True

    facets = []
    for c in E.cells.sorted():
        for i in range(d):
            for s in (1, -1):
                nb = c[:i] + (c[i] + s,) + c[i + 1:]
                if nb not in E.cells.points:
                    facets.append((c, i, s))
    F = len(facets)
    fc = np.array([f[0] for f in facets], dtype=np.float64)
    fi = np.array([f[1] for f in facets])
    fs = np.array([f[2] for f in facets], dtype=np.float64)
    exposed = {}
    for i in range(d):
        for s in (1, -1):
            arr = np.zeros(shape, dtype=bool)
            for c, fi_, fs_ in facets:
                if fi_ == i and fs_ == s:
                    arr[tuple(np.array(c) - lo)] = True
            exposed[(i, s)] = arr

    R = float(reach)
    side_t = 1 + 2 * R
    side_n = 2 * R
    region_vol = side_t ** (d - 1) * side_n
    rng = np.random.default_rng(seed)
    offsets = np.array(list(itertools.product((-1, 0, 1), repeat=d)), dtype=np.int64)

    total = 0.0
    total_sq = 0.0
    done = 0
    chunk = 100_000
    while done < samples:
        m = min(chunk, samples - done)
        pick = rng.integers(0, F, size=m)
        u = rng.random((m, d))
        p = fc[pick] + (u - 0.5) * side_t
        axis = fi[pick]
        rows = np.arange(m)
        p[rows, axis] = fc[pick, axis] + fs[pick] * 0.5 + (u[rows, axis] - 0.5) * side_n

        base = np.rint(p).astype(np.int64)
        in_e = occ[tuple((base - lo).T)]
        in_sum = np.zeros(m, dtype=bool)
        mult = np.zeros(m, dtype=np.int64)
        for off in offsets:
            c = base + off
            idx = tuple((c - lo).T)
            rel = p - c
            inside_m = np.all(rel @ Ma.T <= Mb, axis=1)
            in_sum |= occ[idx] & inside_m
            for (i, s), arr in exposed.items():
                has = arr[idx]
                along = np.abs(rel[:, i] - 0.5 * s) <= R
                across = np.all(np.abs(np.delete(rel, i, axis=1)) <= 0.5 + R, axis=1)
                mult += has & along & across
        # signed: when 0 is not in K, part of E itself is uncovered by E + eps K
        sign = (in_sum & ~in_e).astype(np.float64) - (in_e & ~in_sum)
        contrib = sign / np.maximum(mult, 1)
        total += contrib.sum()
        total_sq += (contrib ** 2).sum()
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean ** 2, 0.0)
    scale = F * region_vol / float(eps)
    return mean * scale, math.sqrt(var / samples) * scale
