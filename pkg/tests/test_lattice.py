import pytest
from hypothesis import given, settings

from isoperimetry import PointSet, box, unit_vectors
from isoperimetry.errors import DimensionMismatchError, IsoperimetryError

from strategies import point_sets


def test_construction_and_order():
    S = PointSet([(1, 0), (0, 0), (0, 1), (1, 0)])
    assert len(S) == 3
    assert list(S) == [(0, 0), (0, 1), (1, 0)]
    assert S.bbox == ((0, 0), (1, 1))


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatchError):
        PointSet([(0, 0), (0, 0, 0)])


def test_empty_needs_dimension():
    with pytest.raises(IsoperimetryError):
        PointSet([])
    assert len(PointSet([], 3)) == 0


def test_int64_range():
    PointSet([(2**63 - 1, -(2**63))])
    with pytest.raises(OverflowError):
        PointSet([(2**63, 0)])


def test_canonical():
    S = PointSet([(3, -2), (4, -1)])
    assert S.canonical() == PointSet([(0, 0), (1, 1)])


def test_unit_vectors_and_box():
    assert unit_vectors(2) == PointSet([(1, 0), (0, 1)])
    assert len(unit_vectors(3, signed=True)) == 6
    assert box((2, 3), origin=(1, 1)) == PointSet([(x, y) for x in (1, 2) for y in (1, 2, 3)])


def test_set_algebra():
    A = box((2, 2))
    B = box((2, 2), origin=(1, 0))
    assert len(A.union(B)) == 6
    assert A.difference(B) == PointSet([(0, 0), (0, 1)])
    assert len(A.symmetric_difference(B)) == 4


@settings(max_examples=60, deadline=None)
@given(point_sets(3, min_size=0))
def test_serialization_round_trip(S):
    assert PointSet.from_json(S.to_json()) == S
    assert PointSet.from_text(S.to_text(), S.dimension) == S
    assert PointSet.from_dict(S.to_dict()).dimension == 3


def test_from_dict_rejects_bad_points():
    with pytest.raises(ValueError):
        PointSet.from_dict({"d": 2, "points": [[0, 0, 1]]})
    with pytest.raises(ValueError):
        PointSet.from_dict({"d": 2, "points": [[0.5, 1]]})
