import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull
from shapely.geometry import Polygon, box as sbox
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from isoperimetry import PointSet
from isoperimetry.errors import DimensionMismatchError, IsoperimetryError
from isoperimetry.exactgeom import (
    RationalPolytope,
    conical_hull,
    contains_vrep,
    convex_hull,
    cube_clip_volume,
    determinant_sum,
    dilate,
    elementary_divisors,
    is_generating,
    lattice_points,
    support_function,
    translate,
    zonotope,
)
from isoperimetry.lattice import unit_vectors

F = Fraction
CROSS2 = [(1, 0), (-1, 0), (0, 1), (0, -1)]
SQUARE = [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def cross(d):
    return convex_hull(unit_vectors(d, signed=True).sorted())


# --- hull and volume ------------------------------------------------------

def test_hull_single_point():
    P = convex_hull([(0, 0)])
    assert not P.full_dimensional
    assert P.volume == 0
    assert P.vertices == ((0, 0),)


def test_hull_triangle():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert P.full_dimensional
    assert P.volume == F(1, 2)


def test_hull_cross_polytope():
    P = convex_hull(CROSS2 + [(0, 0)])
    assert P.volume == 2
    assert set(P.vertices) == set(CROSS2)


def test_hull_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        convex_hull([(0, 0), (1, 0, 0)])


def test_hull_empty():
    with pytest.raises(IsoperimetryError):
        convex_hull([])


def test_degenerate_segment_in_plane():
    P = convex_hull([(0, 0), (1, 1), (2, 2), (F(1, 2), F(1, 2))])
    assert not P.full_dimensional
    assert P.volume == 0
    assert set(P.vertices) == {(0, 0), (2, 2)}
    assert P.contains((1, 1))
    assert not P.contains((1, 0))


def test_degenerate_triangle_in_space():
    P = convex_hull([(0, 0, 0), (1, 0, 1), (0, 1, 1), (F(1, 3), F(1, 3), F(2, 3))])
    assert not P.full_dimensional
    assert len(P.vertices) == 3
    assert P.contains((F(1, 4), F(1, 4), F(1, 2)))
    assert not P.contains((F(1, 4), F(1, 4), F(1, 3)))


def test_conical_hull_examples():
    assert conical_hull(PointSet([(1, 0), (0, 1)])).volume == F(1, 2)
    assert conical_hull(PointSet(CROSS2)).volume == 2
    C = conical_hull(PointSet([(1, 0), (1, 1), (0, 1)]))
    assert C.volume == 1
    assert set(C.vertices) == {(0, 0), (1, 0), (1, 1), (0, 1)}


def test_volume_examples():
    assert convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]).volume == 1
    hexagon = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)])
    assert hexagon.volume == 3
    assert cross(3).volume == F(4, 3)
    # 2^d / d! for the 4-dimensional cross-polytope
    assert cross(4).volume == F(16, 24)


def _rand_points(rng, d, n, den=3, span=4):
    return [tuple(F(rng.randint(-span * den, span * den), den) for _ in range(d)) for _ in range(n)]


@pytest.mark.parametrize("d", [2, 3])
def test_volume_matches_float_hull(d):
    rng = random.Random(7 + d)
    for _ in range(40):
        pts = _rand_points(rng, d, rng.randint(d + 2, 14))
        P = convex_hull(pts)
        if not P.full_dimensional:
            continue
        ref = ConvexHull([[float(x) for x in p] for p in pts])
        assert float(P.volume) == pytest.approx(ref.volume, rel=1e-9)
        assert {tuple(pts[i]) for i in ref.vertices} == set(P.vertices)


def test_volume_matches_shoelace():
    rng = random.Random(3)
    for _ in range(50):
        pts = _rand_points(rng, 2, rng.randint(3, 12))
        P = convex_hull(pts)
        if not P.full_dimensional:
            continue
        ref = Polygon([(float(x), float(y)) for x, y in pts]).convex_hull
        assert float(P.volume) == pytest.approx(ref.area, rel=1e-12)


def test_json_round_trip():
    P = convex_hull([(F(1, 3), 0), (0, F(-2, 7)), (1, 1)])
    Q = RationalPolytope.from_json(P.to_json())
    assert Q.vertices == P.vertices
    assert Q.volume == P.volume


# --- support, dilation, translation --------------------------------------

def test_support_function():
    K = convex_hull(SQUARE)
    assert support_function(K, (1, 0)) == 1
    assert support_function(K, (1, 1)) == 2
    T = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert support_function(T, (-1, 0)) == 0


def test_dilate_examples():
    K = convex_hull(CROSS2)
    D = dilate(K, 2)
    assert set(D.vertices) == {(2, 0), (-2, 0), (0, 2), (0, -2)}
    assert D.volume == 8
    Z = dilate(K, 0)
    assert Z.vertices == ((0, 0),)
    assert Z.volume == 0
    with pytest.raises(IsoperimetryError):
        dilate(K, -1)


def test_translate_example():
    U = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    T = translate(U, (3, 4))
    assert T.volume == 1
    assert set(T.vertices) == {(3, 4), (4, 4), (3, 5), (4, 5)}
    assert T.contains((F(7, 2), F(9, 2)))
    assert not T.contains((F(1, 2), F(1, 2)))


def test_hrep_offsets_follow_dilation():
    K = convex_hull([(0, 0), (2, 1), (1, 3)])
    D = dilate(K, F(5, 2))
    for v in K.vertices:
        w = tuple(F(5, 2) * x for x in v)
        assert D.contains(w)
        if any(w):
            # 0 lies in K, so pushing a vertex outward leaves the dilate
            assert not D.contains(tuple(x * F(101, 100) for x in w))


# --- lattice points -------------------------------------------------------

def test_lattice_point_examples():
    K = convex_hull(CROSS2)
    assert lattice_points(K) == PointSet([(0, 0)] + CROSS2)
    for k in range(1, 6):
        assert len(lattice_points(dilate(K, k))) == 2 * k * k + 2 * k + 1
    assert len(lattice_points(convex_hull([(0, 0), (1, 0), (0, 1)]))) == 3


def test_lattice_points_match_bbox_scan():
    rng = random.Random(11)
    for _ in range(30):
        d = rng.choice((2, 3))
        P = convex_hull(_rand_points(rng, d, rng.randint(d + 1, 8), den=2, span=3))
        if not P.full_dimensional:
            continue
        grid = itertools.product(*[range(-3, 4)] * d)
        expected = {p for p in grid if contains_vrep(P, p)}
        assert lattice_points(P).points == expected


def test_lattice_points_degenerate():
    seg = convex_hull([(0, 0), (4, 2)])
    assert lattice_points(seg) == PointSet([(0, 0), (2, 1), (4, 2)])


@pytest.mark.parametrize("k,tol", [(4, 0.30), (8, 0.15), (16, 0.08)])
def test_lattice_point_asymptotics(k, tol):
    C = conical_hull(unit_vectors(2, signed=True))
    ratio = F(len(lattice_points(dilate(C, k))), k ** 2)
    assert abs(ratio / C.volume - 1) <= tol


def test_lattice_ratio_monotone_cross3():
    C = conical_hull(unit_vectors(3, signed=True))
    errs = [abs(F(len(lattice_points(dilate(C, k))), k ** 3) / C.volume - 1) for k in (4, 8, 16)]
    assert errs[0] > errs[1] > errs[2]


# --- zonotope -------------------------------------------------------------

def test_zonotope_examples():
    assert zonotope(PointSet([(1, 0), (0, 1)])).volume == 1
    Z = zonotope(unit_vectors(2, signed=True))
    assert Z.volume == 4
    assert set(Z.vertices) == set(SQUARE)
    H = zonotope(PointSet([(1, 0), (0, 1), (1, 1)]))
    assert H.volume == 3
    assert determinant_sum(PointSet([(1, 0), (0, 1), (1, 1)])) == 3


def test_zonotope_cap():
    B = PointSet([(i, 1) for i in range(5)])
    with pytest.raises(IsoperimetryError):
        zonotope(B, cap=4)


vectors2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
vectors3 = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))


@settings(max_examples=40, deadline=None)
@given(st.one_of(st.lists(vectors2, min_size=1, max_size=8),
                 st.lists(vectors3, min_size=1, max_size=6)))
def test_zonotope_identity(vecs):
    B = PointSet(vecs)
    assert zonotope(B).volume == determinant_sum(B)


# --- properties -----------------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=12))
def test_hull_idempotent_2d(pts):
    P = convex_hull(pts)
    Q = convex_hull(P.vertices)
    assert set(Q.vertices) == set(P.vertices)
    assert Q.volume == P.volume
    assert (P.volume > 0) == P.full_dimensional


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(rationals, rationals, rationals), min_size=1, max_size=10))
def test_hull_idempotent_3d(pts):
    P = convex_hull(pts)
    Q = convex_hull(P.vertices)
    assert set(Q.vertices) == set(P.vertices)
    assert Q.volume == P.volume
    assert (P.volume > 0) == P.full_dimensional
    assert all(P.contains(p) for p in pts)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(rationals, rationals, rationals), min_size=4, max_size=8),
       st.fractions(min_value=0, max_value=4, max_denominator=5))
def test_dilation_law(pts, t):
    K = convex_hull(pts)
    assert dilate(K, t).volume == t ** 3 * K.volume


def test_membership_consistency():
    rng = random.Random(2024)
    checked = 0
    polys = []
    while len(polys) < 10:
        d = 2 + len(polys) % 2
        P = convex_hull(_rand_points(rng, d, rng.randint(d + 2, 9)))
        if P.full_dimensional:
            polys.append(P)
    for i in range(1000):
        P = polys[i % len(polys)]
        x = tuple(F(rng.randint(-50, 50), rng.choice((1, 2, 3, 7, 10))) for _ in range(P.dimension))
        if i % 5 == 0:
            # bias some samples onto vertices and facet midpoints
            v, w = rng.sample(P.vertices, 2)
            x = tuple((a + b) / 2 for a, b in zip(v, w))
        assert P.contains(x) == contains_vrep(P, x)
        checked += 1
    assert checked == 1000


# --- cube clipping --------------------------------------------------------

def test_cube_clip_examples():
    big = convex_hull([(-3, -3), (3, -3), (-3, 3), (3, 3)])
    assert cube_clip_volume(big, (0, 0)) == 1
    assert cube_clip_volume(big, (10, 0)) == 0
    half = convex_hull([(-3, -3), (0, -3), (-3, 3), (0, 3)])
    assert cube_clip_volume(half, (0, 0)) == F(1, 2)


def test_cube_clip_matches_shapely():
    rng = random.Random(5)
    for _ in range(60):
        pts = _rand_points(rng, 2, rng.randint(3, 7), den=4, span=2)
        P = convex_hull(pts)
        if not P.full_dimensional:
            continue
        poly = Polygon([(float(x), float(y)) for x, y in P.vertices]).convex_hull
        for c in itertools.product(range(-2, 3), repeat=2):
            got = cube_clip_volume(P, c)
            ref = poly.intersection(sbox(c[0] - .5, c[1] - .5, c[0] + .5, c[1] + .5)).area
            assert float(got) == pytest.approx(ref, abs=1e-12)


def test_cube_clip_sums_to_volume_3d():
    rng = random.Random(9)
    for _ in range(10):
        P = convex_hull(_rand_points(rng, 3, 7, den=2, span=2))
        if not P.full_dimensional:
            continue
        total = sum(cube_clip_volume(P, c) for c in itertools.product(range(-3, 4), repeat=3))
        assert total == P.volume


# --- generating sets ------------------------------------------------------

def test_is_generating_examples():
    assert is_generating(PointSet([(1, 0), (0, 1)]))
    assert not is_generating(PointSet([(2, 0), (0, 1)]))
    B = PointSet([(1, 1), (1, -1)])
    assert not is_generating(B)
    assert elementary_divisors(B.sorted()) == [1, 2]


def test_is_generating_rank_deficient():
    assert not is_generating(PointSet([(1, 1), (2, 2), (-1, -1)]))
    assert is_generating(PointSet([(2, 0), (3, 0), (0, 1)]))


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors3, min_size=1, max_size=5))
def test_elementary_divisors_match_sympy(vecs):
    rows = [list(v) for v in vecs]
    snf = smith_normal_form(Matrix(rows))
    ref = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert elementary_divisors(rows) == ref
