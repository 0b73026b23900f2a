"""Sumsets and boundaries in the Cayley digraph G_B on Z^d.

G_B has an edge u -> v whenever v - u lies in B.  For finite A the vertex
boundary counts the outside vertices hit by an edge from A and the edge
boundary counts the edges leaving A.
"""
from __future__ import annotations

from .errors import CapExceededError, IsoperimetryError
from .lattice import PointSet, _check_point, _same_dimension

SUBSET_SUM_CAP = 20


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _checked(pts, d):
    for p in pts:
        _check_point(p, d)
    return PointSet._trusted(frozenset(pts), d)


def sumset(A: PointSet, B: PointSet) -> PointSet:
    """Minkowski sum ``{a + b : a in A, b in B}``."""
    _same_dimension(A, B)
    out = {_add(a, b) for a in A.points for b in B.points}
    return _checked(out, A.dimension)


def iterated_sumset(B: PointSet, k: int) -> PointSet:
    """k-fold sumset of B; the 0-fold sumset is ``{0}``."""
    if k < 0:
        raise IsoperimetryError("k must be non-negative")
    acc = PointSet([(0,) * B.dimension], B.dimension)
    for _ in range(k):
        acc = sumset(acc, B)
    return acc


def subset_sums(B: PointSet, cap: int = SUBSET_SUM_CAP) -> PointSet:
    """All sums of subsets of B (the empty subset contributes 0)."""
    if len(B) > cap:
        raise CapExceededError(f"|B| = {len(B)} exceeds the subset-sum cap {cap}")
    sums = {(0,) * B.dimension}
    for b in B.sorted():
        sums |= {_add(s, b) for s in sums}
    return _checked(sums, B.dimension)


def with_zero(B: PointSet) -> PointSet:
    return B.union(PointSet([(0,) * B.dimension], B.dimension))


def vertex_boundary(A: PointSet, B: PointSet) -> int:
    """Number of vertices outside A reached by one edge of G_B from A.

    Evaluated as ``|A + (B u {0})| - |A|``.
    """
    if not len(A):
        raise IsoperimetryError("A must be nonempty")
    return len(sumset(A, with_zero(B))) - len(A)


def edge_boundary(A: PointSet, B: PointSet) -> int:
    """Number of pairs (x, b) with x in A, b in B and x + b outside A."""
    if not len(A):
        raise IsoperimetryError("A must be nonempty")
    _same_dimension(A, B)
    inside = A.points
    return sum(1 for x in inside for b in B.points if _add(x, b) not in inside)


def boundary(A: PointSet, B: PointSet, objective: str) -> int:
    if objective == "vertex":
        return vertex_boundary(A, B)
    if objective == "edge":
        return edge_boundary(A, B)
    raise IsoperimetryError(f"unknown objective {objective!r}")
