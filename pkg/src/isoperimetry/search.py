"""Searching for small boundaries, and empirical checks of the classical inequalities.

Exhaustive search enumerates n-subsets of a box in canonical position (every
axis minimum equal to 0), which removes the translation symmetry of both
boundary functionals.  Annealing covers sizes beyond the exhaustive cap.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .cayley import boundary, iterated_sumset, sumset, with_zero
from .errors import CapExceededError, IsoperimetryError
from .exactgeom import format_rational
from .extremal import ball, constants, edge_ball, excess_sign, full_report
from .lattice import PointSet, _same_dimension, box
from .radicals import root_combination_sign

EXHAUSTIVE_CAP = 10**7


@dataclass(frozen=True)
class SearchConfig:
    objective: str = "vertex"
    n: int = 1
    box: tuple = (5, 5)
    mode: str = "exhaustive"
    budget: int = 10**5
    seed: int = 0
    cap: int = EXHAUSTIVE_CAP
    t0: float = 2.0
    cooling: float = 0.999

    def __post_init__(self):
        if self.objective not in ("vertex", "edge"):
            raise IsoperimetryError(f"unknown objective {self.objective!r}")
        if self.mode not in ("exhaustive", "anneal"):
            raise IsoperimetryError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise IsoperimetryError("n must be positive")
        if self.budget < 0:
            raise IsoperimetryError("budget must be non-negative")


@dataclass
class SearchResult:
    min_value: int
    witnesses: list
    candidates_examined: int
    exact: bool

    def to_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "candidates_examined": self.candidates_examined,
            "exact": self.exact,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def canonical_count(sides, n: int) -> int:
    """Number of n-subsets of the box with minimum 0 on every axis.

    Inclusion-exclusion over the axes whose slice at 0 is left empty.
    """
    d = len(sides)
    total = 0
    for mask in range(1 << d):
        cells = 1
        for i, a in enumerate(sides):
            cells *= a - 1 if mask >> i & 1 else a
        total += (-1) ** bin(mask).count("1") * math.comb(cells, n)
    return total


def canonical_subsets(sides, n: int):
    """Yield canonical n-subsets of ``prod [0, a_i)`` as sorted tuples."""
    cells = box(sides).sorted()
    d = len(sides)
    for combo in itertools.combinations(cells, n):
        if all(any(p[i] == 0 for p in combo) for i in range(d)):
            yield combo


def _evaluator(B: PointSet, objective: str):
    if objective == "vertex":
        steps = with_zero(B).sorted()

        def value(pts):
            return len({tuple(a + b for a, b in zip(p, s)) for p in pts for s in steps}) - len(pts)
    else:
        steps = [b for b in B.sorted() if any(b)]

        def value(pts):
            inside = set(pts)
            return sum(1 for p in pts for s in steps
                       if tuple(a + b for a, b in zip(p, s)) not in inside)
    return value


def exact_min_boundary(B: PointSet, cfg: SearchConfig) -> SearchResult:
    """Global minimum over all n-subsets of the box, with every canonical minimizer."""
    sides = tuple(cfg.box)
    if len(sides) != B.dimension:
        raise IsoperimetryError("box dimension differs from B")
    if cfg.n > math.prod(sides):
        raise IsoperimetryError("n exceeds the number of box cells")
    count = canonical_count(sides, cfg.n)
    if count > cfg.cap:
        raise CapExceededError(
            f"{count} canonical candidates exceed the cap {cfg.cap}; use anneal mode")
    value = _evaluator(B, cfg.objective)
    best = None
    witnesses = []
    examined = 0
    for combo in canonical_subsets(sides, cfg.n):
        examined += 1
        v = value(combo)
        if best is None or v < best:
            best, witnesses = v, [combo]
        elif v == best:
            witnesses.append(combo)
    return SearchResult(best, [PointSet(w, B.dimension) for w in witnesses], examined, True)


class _AnnealState:
    """Incrementally maintained boundary value of a finite set."""

    def __init__(self, pts, B: PointSet, objective: str):
        self.objective = objective
        self.steps = [b for b in B.sorted() if any(b)]
        self.cover = [(0,) * B.dimension] + self.steps
        self.members = list(pts)
        self.index = {p: i for i, p in enumerate(self.members)}
        self.cnt = {}
        self.internal = 0
        for p in self.members:
            self._cover(p, 1)
        for p in self.members:
            self.internal += sum(1 for s in self.steps if _shift(p, s) in self.index)

    def _cover(self, p, delta):
        for s in self.cover:
            q = _shift(p, s)
            c = self.cnt.get(q, 0) + delta
            if c:
                self.cnt[q] = c
            else:
                del self.cnt[q]

    def value(self) -> int:
        n = len(self.members)
        if self.objective == "vertex":
            return len(self.cnt) - n
        return n * len(self.steps) - self.internal

    def _links(self, p):
        out = sum(1 for s in self.steps if _shift(p, s) in self.index)
        inn = sum(1 for s in self.steps if _unshift(p, s) in self.index)
        return out + inn

    def remove(self, p):
        i = self.index.pop(p)
        last = self.members.pop()
        if last != p:
            self.members[i] = last
            self.index[last] = i
        self._cover(p, -1)
        self.internal -= self._links(p)

    def add(self, p):
        self.internal += self._links(p)
        self.index[p] = len(self.members)
        self.members.append(p)
        self._cover(p, 1)

    def is_boundary_cell(self, p) -> bool:
        return any(_shift(p, s) not in self.index or _unshift(p, s) not in self.index
                   for s in self.steps)


def _shift(p, s):
    return tuple(a + b for a, b in zip(p, s))


def _unshift(p, s):
    return tuple(a - b for a, b in zip(p, s))


def _trimmed_seed(B: PointSet, objective: str, n: int) -> PointSet:
    """Extremal ball greedily trimmed down to exactly n points."""
    target = ball(B, n) if objective == "vertex" else edge_ball(B, n)
    pts = set(target.points.points)
    value = _evaluator(B, objective)
    while len(pts) > n:
        # drop the point whose removal leaves the smallest boundary
        drop = min(sorted(pts, reverse=True), key=lambda p: value(pts - {p}))
        pts.discard(drop)
    return PointSet(pts, B.dimension)


def anneal_min_boundary(B: PointSet, cfg: SearchConfig) -> SearchResult:
    """Simulated annealing over single-point moves; deterministic for a given seed.

    A move takes a boundary cell of A out and puts a point of
    ``(A + (B u -B)) minus A`` in.  Geometric cooling from ``cfg.t0``.
    """
    rng = random.Random(cfg.seed)
    seed_set = _trimmed_seed(B, cfg.objective, cfg.n)
    state = _AnnealState(seed_set.sorted(), B, cfg.objective)
    moves = state.steps + [tuple(-x for x in s) for s in state.steps]
    cur = state.value()
    best, best_set = cur, frozenset(state.members)
    T = cfg.t0
    for _ in range(cfg.budget if moves else 0):
        T *= cfg.cooling
        members = state.members
        x = members[rng.randrange(len(members))]
        if not state.is_boundary_cell(x):
            continue
        anchor = members[rng.randrange(len(members))]
        y = _shift(anchor, moves[rng.randrange(len(moves))])
        if y in state.index:
            continue
        state.remove(x)
        state.add(y)
        new = state.value()
        delta = new - cur
        if delta <= 0 or (T > 0 and rng.random() < math.exp(-delta / T)):
            cur = new
            if cur < best:
                best, best_set = cur, frozenset(state.members)
        else:
            state.remove(y)
            state.add(x)
    witness = PointSet(best_set, B.dimension).canonical()
    return SearchResult(best, [witness], cfg.budget, False)


def min_boundary(B: PointSet, cfg: SearchConfig) -> SearchResult:
    if cfg.mode == "exhaustive":
        return exact_min_boundary(B, cfg)
    return anneal_min_boundary(B, cfg)


# ---------------------------------------------------------------------------
# inequality checks


PLUNNECKE_CAP = 18


@dataclass
class PlunneckeResult:
    a_prime: PointSet
    ratio_ok: bool
    # |A' + k-fold B| / |A'| at the minimizing A', and alpha ** k
    ratio: Fraction
    bound: Fraction

    def __iter__(self):
        return iter((self.a_prime, self.ratio_ok))


def plunnecke_verify(A: PointSet, B: PointSet, k: int) -> PlunneckeResult:
    """Find the nonempty A' of A minimizing ``|A' + kB| / |A'|`` and compare with alpha^k.

    Here ``alpha = |A + B| / |A|`` and kB is the k-fold sumset.  The scan is
    exhaustive over all subsets, using one bitmask per element of A.
    """
    if not len(A) or not len(B):
        raise IsoperimetryError("A and B must be nonempty")
    if k < 1:
        raise IsoperimetryError("k must be positive")
    if len(A) > PLUNNECKE_CAP:
        raise CapExceededError(f"|A| = {len(A)} exceeds the subset-scan cap {PLUNNECKE_CAP}")
    _same_dimension(A, B)
    alpha = Fraction(len(sumset(A, B)), len(A))
    bound = alpha ** k
    elems = A.sorted()
    sig = iterated_sumset(B, k).sorted()
    index = {}
    masks = []
    for a in elems:
        m = 0
        for s in sig:
            p = _shift(a, s)
            m |= 1 << index.setdefault(p, len(index))
        masks.append(m)
    size = len(elems)
    union = [0] * (1 << size)
    best = None
    for sub in range(1, 1 << size):
        low = sub & -sub
        union[sub] = union[sub ^ low] | masks[low.bit_length() - 1]
        r = Fraction(bin(union[sub]).count("1"), bin(sub).count("1"))
        if best is None or r < best[0] or (r == best[0] and sub < best[1]):
            best = (r, sub)
    ratio, sub = best
    a_prime = PointSet([elems[i] for i in range(size) if sub >> i & 1], A.dimension)
    return PlunneckeResult(a_prime, ratio <= bound, ratio, bound)


def random_plunnecke_instances(count: int, seed: int, d: int = 2, max_a: int = 10,
                               max_b: int = 4, max_k: int = 3, spread: int = 3) -> list:
    """Reproducible random (A, B, k) triples with small coordinates."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        na = rng.randint(1, max_a)
        nb = rng.randint(1, max_b)
        A = set()
        while len(A) < na:
            A.add(tuple(rng.randint(0, spread) for _ in range(d)))
        Bs = set()
        while len(Bs) < nb:
            Bs.add(tuple(rng.randint(-1, 1) for _ in range(d)))
        out.append((PointSet(A, d), PointSet(Bs, d), rng.randint(1, max_k)))
    return out


PLUNNECKE_COLUMNS = ["instance", "size_A", "size_B", "k", "size_A_prime", "ratio", "alpha_k", "ok"]


def plunnecke_rows(instances: list) -> list:
    rows = []
    for i, (A, B, k) in enumerate(instances):
        res = plunnecke_verify(A, B, k)
        rows.append([i, len(A), len(B), k, len(res.a_prime), format_rational(res.ratio),
                     format_rational(res.bound), int(res.ratio_ok)])
    return rows


def plunnecke_csv(instances: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PLUNNECKE_COLUMNS)
    w.writerows(plunnecke_rows(instances))
    return buf.getvalue()


def brunn_minkowski_check(U, V) -> bool:
    """Exact Brunn-Minkowski test for two cube-union bodies.

    With X, Y the cell sets, ``U + V = X + Y + [-1, 1]^d`` is a union of unit
    cells indexed by ``X + Y + {0,1}^d``, so every measure is an integer and
    the comparison reduces to a sign of a sum of integer d-th roots.
    """
    X, Y = U.cells, V.cells
    _same_dimension(X, Y)
    d = X.dimension
    mu_sum = len(sumset(sumset(X, Y), box((2,) * d)))
    sign = root_combination_sign([(1, mu_sum), (-1, len(X)), (-1, len(Y))], d)
    return sign >= 0


def minkowski_measure(U, V) -> int:
    X, Y = U.cells, V.cells
    return len(sumset(sumset(X, Y), box((2,) * X.dimension)))


# ---------------------------------------------------------------------------
# experiments


def stability_experiment(B: PointSet, family: list, objective: str = "vertex") -> list:
    """Excess and distance-to-ball report for each member of the family.

    Rows with non-positive excess keep ``normalized_symdiff = None``.
    """
    return [full_report(A, B, objective) for A in family]


def rectangle_family(sides: list) -> list:
    return [box(s) for s in sides]


def normalized_band(reports: list) -> float:
    """max/min of the normalized symmetric differences over usable rows."""
    vals = [r.normalized_symdiff for r in reports if r.normalized_symdiff]
    if not vals:
        raise IsoperimetryError("no row with positive excess and positive symdiff")
    return max(vals) / min(vals)


@dataclass
class ScanRow:
    n: int
    min_value: int
    bound: float
    gap: float
    gap_sign: int
    exact: bool
    witness: PointSet
    witness_file: str = ""

    def to_dict(self) -> dict:
        return {"n": self.n, "min_value": self.min_value, "bound": self.bound,
                "gap": self.gap, "gap_sign": self.gap_sign, "exact": self.exact,
                "witness": self.witness.to_dict(), "witness_file": self.witness_file}


def conjecture_scan(B: PointSet, n_range, cfg: SearchConfig) -> list:
    """Minimum boundary per n against the conjectured lower bound ``beta * n^(1-1/d)``.

    ``gap_sign`` is exact; a negative sign is a counterexample candidate.
    """
    consts = constants(B)
    d = B.dimension
    if cfg.objective == "vertex":
        beta, beta_pow = consts.beta_vertex, consts.beta_vertex_pow
    else:
        beta, beta_pow = consts.beta_edge, consts.beta_edge_pow
    rows = []
    for n in n_range:
        res = min_boundary(B, _with_n(cfg, n))
        bound = beta * n ** (1 - 1 / d)
        sign = excess_sign(res.min_value, beta_pow, n, d)
        gap = 0.0 if sign == 0 else res.min_value - bound
        rows.append(ScanRow(n, res.min_value, bound, gap, sign, res.exact, res.witnesses[0]))
    return rows


def _with_n(cfg: SearchConfig, n: int) -> SearchConfig:
    return replace(cfg, n=n)


def scan_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "min_value", "bound", "gap_sign", "witness_file"])
    for r in rows:
        w.writerow([r.n, r.min_value, repr(r.bound), r.gap_sign, r.witness_file])
    return buf.getvalue()
