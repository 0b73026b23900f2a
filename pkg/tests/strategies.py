"""Shared hypothesis strategies and brute-force reference implementations."""
import random

from hypothesis import strategies as st

from isoperimetry import PointSet


def point_sets(d, min_size=1, max_size=12, lo=-4, hi=4):
    coords = st.tuples(*[st.integers(lo, hi)] * d)
    return st.lists(coords, min_size=min_size, max_size=max_size).map(lambda ps: PointSet(ps, d))


def random_set(rng: random.Random, d: int, size: int, span: int = 6) -> PointSet:
    size = min(size, (span + 1) ** d)
    pts = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(0, span) for _ in range(d)))
    return PointSet(pts, d)


def neighbor_scan_vertex_boundary(A, B):
    """Outside vertices hit by an edge out of A, by direct scan."""
    inside = set(A.points)
    hit = set()
    for x in inside:
        for b in B.points:
            y = tuple(p + q for p, q in zip(x, b))
            if y not in inside:
                hit.add(y)
    return len(hit)


def directed_edge_count(A, B):
    """Edges x -> x+b of G_B with tail in A and head outside, via explicit edge list."""
    inside = set(A.points)
    edges = [(x, tuple(p + q for p, q in zip(x, b))) for x in sorted(inside) for b in sorted(B.points)]
    return sum(1 for _, y in edges if y not in inside)


def brute_force_minimizers(B, sides, n, objective):
    """All n-subsets of the box in reverse lexicographic order, scored by direct scan.

    Returns the minimum and the set of minimizers reduced to canonical form.
    """
    import itertools
    import math

    cells = sorted(itertools.product(*[range(a) for a in sides]), reverse=True)
    score = neighbor_scan_vertex_boundary if objective == "vertex" else directed_edge_count
    best, found = math.inf, set()
    for combo in itertools.combinations(cells, n):
        A = PointSet(combo, len(sides))
        v = score(A, B)
        if v < best:
            best, found = v, {A.canonical()}
        elif v == best:
            found.add(A.canonical())
    return best, found
