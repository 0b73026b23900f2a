"""Exact rational convex geometry for small dimension (d <= 4 in practice).

Every predicate runs on ``Fraction``/``int`` values; no floating point is
involved.  The convex hull is built by incremental beneath-beyond insertion
over an integer-scaled copy of the input, which keeps orientation tests in
plain integer arithmetic.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .cayley import SUBSET_SUM_CAP, subset_sums, with_zero
from .errors import DimensionMismatchError, IsoperimetryError
from .lattice import PointSet


def as_vector(p) -> tuple:
    return tuple(Fraction(x) for x in p)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# exact linear algebra


def _bareiss_det(m: list) -> int:
    """Determinant of a square integer matrix (fraction-free elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows = [as_vector(r) for r in m]
    scale = 1
    int_rows = []
    for r in rows:
        den = reduce(math.lcm, (x.denominator for x in r), 1)
        scale *= den
        int_rows.append([int(x * den) for x in r])
    return Fraction(_bareiss_det(int_rows), scale)


def _rref(rows: list) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(_rref(list(rows))[1])


def _nullspace_int(rows: list, ncols: int) -> list:
    """Integer basis of ``{x : row . x = 0 for every row}``."""
    red, pivots = _rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        iv = [int(x * den) for x in v]
        g = reduce(math.gcd, iv, 0)
        basis.append(tuple(x // g for x in iv))
    return basis


def _normalize(normal, offset):
    g = reduce(math.gcd, normal, 0)
    return tuple(x // g for x in normal), offset // g


def _normal_through(points: list) -> tuple:
    """Integer normal of the hyperplane through d affinely independent points."""
    p0 = points[0]
    m = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    d = len(p0)
    normal = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in m]
        normal.append((-1) ** j * _bareiss_det(minor))
    return tuple(normal)


# ---------------------------------------------------------------------------
# convex hull


@dataclass(frozen=True)
class RationalPolytope:
    """Convex polytope with exact vertex and half-space descriptions.

    ``halfspaces`` holds pairs ``(a, b)`` meaning ``a . x <= b``; ``a`` is a
    primitive integer vector and ``b`` a Fraction.  Lower-dimensional
    polytopes carry their affine hull as pairs of opposite half-spaces.
    """

    dimension: int
    vertices: tuple
    halfspaces: tuple
    full_dimensional: bool
    # boundary triangulation (d-tuples of points), full-dimensional case only
    simplices: tuple = field(default=(), repr=False, compare=False)

    @cached_property
    def volume(self) -> Fraction:
        return volume(self)

    def contains(self, x) -> bool:
        x = as_vector(x)
        return all(dot(a, x) <= b for a, b in self.halfspaces)

    def to_dict(self) -> dict:
        return {
            "d": self.dimension,
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "RationalPolytope":
        try:
            d = int(data["d"])
            verts = [[parse_rational(x) for x in v] for v in data["vertices"]]
        except (KeyError, TypeError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed polytope: {exc}") from None
        if not verts:
            raise ValueError("polytope needs at least one vertex")
        if any(len(v) != d for v in verts):
            raise ValueError("vertex dimension does not match 'd'")
        return convex_hull(verts)

    @classmethod
    def from_json(cls, text: str) -> "RationalPolytope":
        return cls.from_dict(json.loads(text))


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"rational must be an int or a 'num/den' string, got {s!r}")


def _int_hull_full(pts: list, d: int, simplex: list):
    """Beneath-beyond hull of full-dimensional integer points.

    Returns (simplicial facets as index tuples, {(normal, offset)}).
    """
    if d == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i][0])
        hi = max(range(len(pts)), key=lambda i: pts[i][0])
        return [(lo,), (hi,)], {((-1,), -pts[lo][0]), ((1,), pts[hi][0])}

    center = [sum(pts[i][k] for i in simplex) for k in range(d)]
    weight = d + 1
    facets = {}
    ridges = {}
    counter = itertools.count()

    def make_facet(verts):
        verts = tuple(sorted(verts))
        normal = _normal_through([pts[i] for i in verts])
        offset = dot(normal, pts[verts[0]])
        if dot(normal, center) - weight * offset > 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        fid = next(counter)
        facets[fid] = (verts, normal, offset)
        for r in itertools.combinations(verts, d - 1):
            ridges.setdefault(r, set()).add(fid)

    for j in range(d + 1):
        make_facet(simplex[:j] + simplex[j + 1:])

    in_simplex = set(simplex)
    for i, p in enumerate(pts):
        if i in in_simplex:
            continue
        visible = {fid for fid, (_, n, b) in facets.items() if dot(n, p) > b}
        if not visible:
            continue
        horizon = []
        for fid in visible:
            for r in itertools.combinations(facets[fid][0], d - 1):
                if not ridges[r] <= visible:
                    horizon.append(r)
        for fid in visible:
            verts = facets.pop(fid)[0]
            for r in itertools.combinations(verts, d - 1):
                ridges[r].discard(fid)
                if not ridges[r]:
                    del ridges[r]
        for r in horizon:
            make_facet(r + (i,))

    planes = {_normalize(n, b) for _, n, b in facets.values()}
    return [v for v, _, _ in facets.values()], planes


def _int_hull(pts: list, d: int):
    """Hull of distinct integer points: (vertex indices, planes, facets, full)."""
    p0 = pts[0]
    chosen = [0]
    basis = []
    for i in range(1, len(pts)):
        diff = [a - b for a, b in zip(pts[i], p0)]
        if rank(basis + [diff]) > len(basis):
            basis.append(diff)
            chosen.append(i)
            if len(basis) == d:
                break
    r = len(basis)

    if r == d:
        facets, planes = _int_hull_full(pts, d, chosen)
        candidates = sorted({i for f in facets for i in f})
        verts = []
        for i in candidates:
            tight = [n for n, b in planes if dot(n, pts[i]) == b]
            if rank(tight) == d:
                verts.append(i)
        return verts, planes, facets, True

    # lower-dimensional: hull in r coordinates on which the affine hull
    # projects injectively, then lift and add the affine equalities
    planes = set()
    for n in _nullspace_int(basis, d):
        off = dot(n, p0)
        planes.add((n, off))
        planes.add((tuple(-x for x in n), -off))
    if r == 0:
        return [0], planes, [], False
    coords = _rref(basis)[1]
    proj = [tuple(p[c] for c in coords) for p in pts]
    verts, sub_planes, _, _ = _int_hull(proj, r)
    for n, b in sub_planes:
        lifted = [0] * d
        for c, x in zip(coords, n):
            lifted[c] = x
        planes.add((tuple(lifted), b))
    return verts, planes, [], False


def convex_hull(points: Iterable[Sequence]) -> RationalPolytope:
    """Exact convex hull of finitely many rational points."""
    pts = [as_vector(p) for p in points]
    if not pts:
        raise IsoperimetryError("convex hull of an empty point list")
    d = len(pts[0])
    if d < 1:
        raise IsoperimetryError("points must have positive dimension")
    if any(len(p) != d for p in pts):
        raise DimensionMismatchError("points of different dimensions")
    pts = sorted(set(pts))
    scale = reduce(math.lcm, (x.denominator for p in pts for x in p), 1)
    ipts = [tuple(int(x * scale) for x in p) for p in pts]
    vidx, planes, facets, full = _int_hull(ipts, d)
    halfspaces = tuple(sorted((n, Fraction(b, scale)) for n, b in planes))
    vertices = tuple(sorted(pts[i] for i in vidx))
    simplices = tuple(tuple(pts[i] for i in f) for f in facets) if full else ()
    return RationalPolytope(d, vertices, halfspaces, full, simplices)


def conical_hull(B: PointSet) -> RationalPolytope:
    """Convex hull of ``B u {0}``."""
    if not len(B):
        raise IsoperimetryError("B must be nonempty")
    return convex_hull(with_zero(B).sorted())


def volume(P: RationalPolytope) -> Fraction:
    """Lebesgue measure, by coning the boundary triangulation from a vertex."""
    if not P.full_dimensional:
        return Fraction(0)
    apex = P.vertices[0]
    total = Fraction(0)
    for simplex in P.simplices:
        total += abs(det([[a - b for a, b in zip(p, apex)] for p in simplex]))
    return total / math.factorial(P.dimension)


def support_function(K: RationalPolytope, u) -> Fraction:
    u = as_vector(u)
    return max(dot(v, u) for v in K.vertices)


def dilate(K: RationalPolytope, t) -> RationalPolytope:
    t = Fraction(t)
    if t < 0:
        raise IsoperimetryError("dilation factor must be non-negative")
    if t == 0:
        return convex_hull([(0,) * K.dimension])
    scale = lambda p: tuple(t * x for x in p)  # noqa: E731
    return RationalPolytope(
        K.dimension,
        tuple(scale(v) for v in K.vertices),
        tuple((a, t * b) for a, b in K.halfspaces),
        K.full_dimensional,
        tuple(tuple(scale(p) for p in s) for s in K.simplices),
    )


def translate(K: RationalPolytope, x) -> RationalPolytope:
    x = as_vector(x)
    if len(x) != K.dimension:
        raise DimensionMismatchError("translation vector has the wrong dimension")
    shift = lambda p: tuple(a + b for a, b in zip(p, x))  # noqa: E731
    return RationalPolytope(
        K.dimension,
        tuple(shift(v) for v in K.vertices),
        tuple((a, b + dot(a, x)) for a, b in K.halfspaces),
        K.full_dimensional,
        tuple(tuple(shift(p) for p in s) for s in K.simplices),
    )


def triangulation(P: RationalPolytope) -> list:
    """Full-dimensional simplices (d+1 points each) covering P."""
    apex = P.vertices[0]
    out = []
    for s in P.simplices:
        if apex in s:
            continue
        if det([[a - b for a, b in zip(p, apex)] for p in s]) != 0:
            out.append((apex,) + tuple(s))
    return out


def _in_simplex(x, simplex) -> bool:
    # barycentric coordinates: solve sum lam_i (v_i - v_0) = x - v_0
    v0 = simplex[0]
    d = len(v0)
    cols = [[a - b for a, b in zip(v, v0)] for v in simplex[1:]]
    rhs = [a - b for a, b in zip(x, v0)]
    aug = [[cols[j][i] for j in range(d)] + [rhs[i]] for i in range(d)]
    red, pivots = _rref(aug)
    lam = [row[-1] for row in red]
    return all(l >= 0 for l in lam) and sum(lam) <= 1


def contains_vrep(P: RationalPolytope, x) -> bool:
    """Membership decided from the vertex side via a triangulation."""
    x = as_vector(x)
    if not P.full_dimensional:
        raise IsoperimetryError("vertex-side membership needs a full-dimensional polytope")
    return any(_in_simplex(x, s) for s in triangulation(P))


def lattice_points(K: RationalPolytope) -> PointSet:
    """All integer points of the closed polytope K."""
    d = K.dimension
    # a.x is an integer on Z^d, so offsets may be floored
    hs = [(a, math.floor(b)) for a, b in K.halfspaces]
    lo = [math.ceil(min(v[i] for v in K.vertices)) for i in range(d)]
    hi = [math.floor(max(v[i] for v in K.vertices)) for i in range(d)]
    out = []
    ranges = [range(lo[i], hi[i] + 1) for i in range(d - 1)]
    for prefix in itertools.product(*ranges):
        low, high = lo[-1], hi[-1]
        for a, b in hs:
            s = b - sum(x * y for x, y in zip(a, prefix))
            c = a[-1]
            if c == 0:
                if s < 0:
                    break
            elif c > 0:
                high = min(high, s // c)
            else:
                low = max(low, -((-s) // c))
        else:
            out.extend(prefix + (t,) for t in range(low, high + 1))
    return PointSet(out, d)


def zonotope(B: PointSet, cap: int = SUBSET_SUM_CAP) -> RationalPolytope:
    """Convex hull of the subset sums of B."""
    if not len(B):
        raise IsoperimetryError("B must be nonempty")
    return convex_hull(subset_sums(B, cap).sorted())


def determinant_sum(B: PointSet) -> int:
    """Sum of |det S| over d-element subsets S of B (zonotope volume)."""
    pts = B.sorted()
    d = B.dimension
    return sum(abs(_bareiss_det([list(p) for p in S])) for S in itertools.combinations(pts, d))


def _cube_constraints(c, d):
    half = Fraction(1, 2)
    cons = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        cons.append((tuple(e), c[i] + half))
        e[i] = -1
        cons.append((tuple(e), -(c[i] - half)))
    return cons


def clip_vertices(start: dict, constraints: list, halfspaces: list) -> dict:
    """Clip a polytope given by its vertices by further half-spaces.

    ``start`` maps each vertex to the frozenset of indices (into
    ``constraints``) of its tight constraints.  Returns the clipped vertex map
    (empty when the result has no interior).
    """
    d = len(next(iter(start)))
    verts = dict(start)
    cons = list(constraints)
    for a, b in halfspaces:
        k = len(cons)
        cons.append((a, b))
        vals = {v: dot(a, v) - b for v in verts}
        if all(s <= 0 for s in vals.values()):
            for v, s in vals.items():
                if s == 0:
                    verts[v] = verts[v] | {k}
            continue
        if all(s >= 0 for s in vals.values()):
            return {}
        out = {}
        for v, s in vals.items():
            if s < 0:
                out[v] = verts[v]
            elif s == 0:
                out[v] = verts[v] | {k}
        inside = [v for v, s in vals.items() if s < 0]
        outside = [v for v, s in vals.items() if s > 0]
        for u in inside:
            for w in outside:
                common = verts[u] & verts[w]
                if len(common) < d - 1 or rank([cons[j][0] for j in common]) != d - 1:
                    continue
                su, sw = vals[u], vals[w]
                lam = su / (su - sw)
                p = tuple(x + lam * (y - x) for x, y in zip(u, w))
                out[p] = out.get(p, frozenset()) | common | {k}
        verts = out
    return verts


def cube_clip_volume(P: RationalPolytope, c: Sequence[int]) -> Fraction:
    """Exact volume of ``P`` intersected with the unit cube centred at c."""
    d = P.dimension
    c = tuple(c)
    half = Fraction(1, 2)
    # fast paths: the cube lies inside P, or outside one half-space
    inside = True
    for a, b in P.halfspaces:
        center = dot(a, c)
        spread = half * sum(abs(x) for x in a)
        if center - spread >= b:
            return Fraction(0)
        if center + spread > b:
            inside = False
    if inside:
        return Fraction(1)
    cons = _cube_constraints(c, d)
    start = {}
    for signs in itertools.product((0, 1), repeat=d):
        v = tuple(Fraction(ci) + (half if s else -half) for ci, s in zip(c, signs))
        start[v] = frozenset(2 * i + (0 if s else 1) for i, s in enumerate(signs))
    verts = clip_vertices(start, cons, list(P.halfspaces))
    if len(verts) <= d:
        return Fraction(0)
    return convex_hull(verts.keys()).volume


# ---------------------------------------------------------------------------
# integer lattices


def elementary_divisors(rows: Sequence[Sequence[int]]) -> list:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Uses determinantal divisors: ``s_k = D_k / D_(k-1)`` with ``D_k`` the gcd
    of all k x k minors.  Intended for the small matrices met here.
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    nr, nc = len(m), len(m[0])
    divisors = []
    prev = 1
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in itertools.combinations(range(nr), k):
            for ci in itertools.combinations(range(nc), k):
                g = math.gcd(g, _bareiss_det([[m[i][j] for j in ci] for i in ri]))
                if g == prev:
                    break
            if g == prev:
                break
        if g == 0:
            break
        divisors.append(g // prev)
        prev = g
    return divisors


def is_generating(B: PointSet) -> bool:
    """True iff B generates Z^d as a group."""
    if not len(B):
        raise IsoperimetryError("B must be nonempty")
    divs = elementary_divisors(B.sorted())
    return len(divs) == B.dimension and all(s == 1 for s in divs)
