"""Finite subsets of Z^d.

A lattice point is a plain ``tuple`` of ints.  :class:`PointSet` wraps a
frozenset of such tuples together with its dimension and iterates in sorted
(lexicographic) order so that every derived output is reproducible.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, IsoperimetryError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

Point = tuple  # tuple[int, ...]


def _check_point(p, d):
    if len(p) != d:
        raise DimensionMismatchError(f"point {p} does not have dimension {d}")
    for x in p:
        if not INT64_MIN <= x <= INT64_MAX:
            raise OverflowError(f"coordinate {x} outside the 64-bit range")


class PointSet:
    """Immutable finite set of lattice points in a fixed dimension."""

    __slots__ = ("dimension", "points", "_sorted", "_bbox")

    def __init__(self, points: Iterable[Sequence[int]] = (), dimension: int | None = None):
        pts = frozenset(tuple(int(x) for x in p) for p in points)
        if dimension is None:
            if not pts:
                raise IsoperimetryError("cannot infer the dimension of an empty point set")
            dimension = len(next(iter(pts)))
        if dimension < 1:
            raise IsoperimetryError("dimension must be positive")
        for p in pts:
            _check_point(p, dimension)
        self.dimension = dimension
        self.points = pts
        self._sorted = None
        self._bbox = None

    @classmethod
    def _trusted(cls, pts: frozenset, dimension: int) -> "PointSet":
        # Set algebra on validated sets cannot leave the valid range.
        obj = cls.__new__(cls)
        obj.dimension = dimension
        obj.points = pts
        obj._sorted = None
        obj._bbox = None
        return obj

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, p):
        return tuple(p) in self.points

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dimension == other.dimension and self.points == other.points

    def __hash__(self):
        return hash((self.dimension, self.points))

    def __repr__(self):
        pts = self.sorted()
        shown = ", ".join(map(str, pts[:6]))
        more = ", ..." if len(pts) > 6 else ""
        return f"PointSet(d={self.dimension}, n={len(pts)}, [{shown}{more}])"

    def sorted(self) -> list:
        if self._sorted is None:
            self._sorted = tuple(sorted(self.points))
        return list(self._sorted)

    @property
    def bbox(self) -> tuple[Point, Point]:
        """Tight integer bounding box ``(mins, maxs)``."""
        if self._bbox is None:
            if not self.points:
                raise IsoperimetryError("empty point set has no bounding box")
            cols = list(zip(*self.points))
            self._bbox = (tuple(min(c) for c in cols), tuple(max(c) for c in cols))
        return self._bbox

    def translate(self, v: Sequence[int]) -> "PointSet":
        v = tuple(v)
        _check_point(v, self.dimension)
        return PointSet((tuple(a + b for a, b in zip(p, v)) for p in self.points), self.dimension)

    def canonical(self) -> "PointSet":
        """The translate whose minimum coordinate on every axis is 0."""
        lo = self.bbox[0]
        return self.translate(tuple(-x for x in lo))

    def union(self, other: "PointSet") -> "PointSet":
        _same_dimension(self, other)
        return PointSet._trusted(self.points | other.points, self.dimension)

    def difference(self, other: "PointSet") -> "PointSet":
        _same_dimension(self, other)
        return PointSet._trusted(self.points - other.points, self.dimension)

    def symmetric_difference(self, other: "PointSet") -> "PointSet":
        _same_dimension(self, other)
        return PointSet._trusted(self.points ^ other.points, self.dimension)

    def to_dict(self) -> dict:
        return {"d": self.dimension, "points": [list(p) for p in self.sorted()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        return "".join(" ".join(map(str, p)) + "\n" for p in self.sorted())

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        try:
            d = int(data["d"])
            pts = data["points"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed point set: {exc}") from None
        for p in pts:
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in p):
                raise ValueError(f"non-integer coordinate in {p}")
        return cls(pts, d)

    @classmethod
    def from_json(cls, text: str) -> "PointSet":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_text(cls, text: str, dimension: int | None = None) -> "PointSet":
        pts = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                pts.append(tuple(int(tok) for tok in line.replace(",", " ").split()))
        return cls(pts, dimension)


def _same_dimension(*sets):
    dims = {s.dimension for s in sets}
    if len(dims) > 1:
        raise DimensionMismatchError(f"point sets of different dimensions {sorted(dims)}")


def unit_vectors(d: int, signed: bool = False) -> PointSet:
    """``{e_1..e_d}``, or ``{±e_1..±e_d}`` when ``signed``."""
    pts = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        pts.append(tuple(e))
        if signed:
            e[i] = -1
            pts.append(tuple(e))
    return PointSet(pts, d)


def box(sides: Sequence[int], origin: Sequence[int] | None = None) -> PointSet:
    """Integer cuboid ``prod [o_i, o_i + a_i)``."""
    origin = tuple(origin) if origin is not None else (0,) * len(sides)
    ranges = [range(o, o + a) for o, a in zip(origin, sides)]
    return PointSet(itertools.product(*ranges), len(sides))
