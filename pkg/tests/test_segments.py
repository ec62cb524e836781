import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiseg.exceptions import EmptySegmentError
from multiseg.segments import (Segment, contains, intersection, intersection_length,
                               le_b, linked, plus, precedes, reflect, right_aligned,
                               shift, truncate_end, union_if_segment)

from .strategies import all_segments, segments


def test_empty_segment_is_rejected():
    with pytest.raises(EmptySegmentError):
        Segment(2, 1)


def test_length_and_text():
    seg = Segment(-1, 2)
    assert seg.length == 4
    assert str(seg) == '[-1,2]'


def test_natural_order_is_begin_then_end():
    assert Segment(0, 3) < Segment(1, 1)
    assert Segment(0, 1) < Segment(0, 3)
    assert sorted([Segment(1, 2), Segment(0, 3), Segment(0, 1)]) == [
        Segment(0, 1), Segment(0, 3), Segment(1, 2)]


@pytest.mark.parametrize('seg, n, expected', [
    (Segment(0, 2), 1, Segment(1, 3)),
    (Segment(1, 3), -1, Segment(0, 2)),
    (Segment(4, 4), 0, Segment(4, 4)),
])
def test_shift(seg, n, expected):
    assert shift(seg, n) == expected


@pytest.mark.parametrize('first, second, expected', [
    (Segment(0, 1), Segment(1, 2), True),
    (Segment(0, 1), Segment(2, 3), True),
    (Segment(0, 0), Segment(2, 3), False),
    (Segment(1, 2), Segment(1, 2), False),
])
def test_precedes(first, second, expected):
    assert precedes(first, second) is expected


@pytest.mark.parametrize('first, second, expected', [
    (Segment(0, 1), Segment(1, 2), True),
    (Segment(1, 1), Segment(0, 3), False),
    (Segment(0, 1), Segment(3, 4), False),
])
def test_linked(first, second, expected):
    assert linked(first, second) is expected


@pytest.mark.parametrize('lower, upper, d, expected', [
    (Segment(0, 6), Segment(4, 7), 1, 3),
    (Segment(0, 6), Segment(4, 7), 2, 6),
    (Segment(0, 1), Segment(1, 2), 1, 0),
    (Segment(0, 1), Segment(2, 3), 1, None),
])
def test_right_aligned(lower, upper, d, expected):
    assert right_aligned(lower, upper, d) == expected


def test_right_aligned_needs_positive_d():
    with pytest.raises(ValueError):
        right_aligned(Segment(0, 1), Segment(1, 2), 0)


@pytest.mark.parametrize('first, second, length, union', [
    (Segment(0, 3), Segment(1, 6), 3, Segment(0, 6)),
    (Segment(0, 1), Segment(2, 3), 0, Segment(0, 3)),
    (Segment(0, 1), Segment(4, 5), 0, None),
])
def test_intersection_and_union(first, second, length, union):
    assert intersection_length(first, second) == length
    assert union_if_segment(first, second) == union


def test_helpers():
    assert intersection(Segment(0, 3), Segment(2, 5)) == Segment(2, 3)
    assert intersection(Segment(0, 1), Segment(2, 3)) is None
    assert contains(Segment(0, 3), Segment(1, 2))
    assert not contains(Segment(1, 2), Segment(0, 3))
    assert plus(Segment(2, 3)) == Segment(1, 3)
    assert truncate_end(Segment(2, 3)) == Segment(2, 2)
    assert truncate_end(Segment(2, 2)) is None
    assert reflect(Segment(1, 2)) == Segment(-2, -1)
    assert le_b(Segment(0, 3), Segment(1, 1))
    assert le_b(Segment(0, 1), Segment(0, 1))
    assert not le_b(Segment(0, 3), Segment(0, 2))


def test_relations_exhaustively():
    pool = all_segments(-20, 20)
    for first in pool[::7]:
        for second in pool:
            forward, backward = precedes(first, second), precedes(second, first)
            assert not (forward and backward)
            nested = contains(first, second) or contains(second, first)
            assert linked(first, second) == (not nested and union_if_segment(first, second) is not None)
            aligned = right_aligned(first, second)
            assert (aligned == 0) == (second == shift(first, 1))


@given(first=segments(-10, 10), second=segments(-10, 10), n=st.integers(-5, 5))
def test_translation_invariance(first, second, n):
    moved = shift(first, n), shift(second, n)
    assert precedes(first, second) == precedes(*moved)
    assert linked(first, second) == linked(*moved)
    assert right_aligned(first, second) == right_aligned(*moved)
    assert intersection_length(first, second) == intersection_length(*moved)
