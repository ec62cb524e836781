"""
Segments of integers and the relations between them.

A segment [a, b] is the set {a, a+1, ..., b} with a <= b. The empty segment
is never represented by a value; operations that may produce it return None.

The natural tuple order of `Segment` is the <=_b order: smaller begin first,
ties broken by the smaller end.
"""
from typing import NamedTuple, Optional

from multiseg.exceptions import EmptySegmentError


class _SegmentFields(NamedTuple):
    begin: int
    end: int


class Segment(_SegmentFields):
    """
    A nonempty integer interval [begin, end].

    Comparison is the <=_b order.
    """
    __slots__ = ()

    def __new__(cls, begin, end):
        if begin > end:
            raise EmptySegmentError('[{},{}] is empty'.format(begin, end))
        return super(Segment, cls).__new__(cls, begin, end)

    @property
    def length(self):
        return self.end - self.begin + 1

    def __repr__(self):
        return '[{},{}]'.format(self.begin, self.end)

    __str__ = __repr__


def shift(segment: Segment, n: int = 1) -> Segment:
    """nu^n applied to the segment: [a+n, b+n]."""
    return Segment(segment.begin + n, segment.end + n)


def reflect(segment: Segment) -> Segment:
    """[a,b] -> [-b,-a]."""
    return Segment(-segment.end, -segment.begin)


def plus(segment: Segment) -> Segment:
    """Extend the segment one step to the left: [a-1, b]."""
    return Segment(segment.begin - 1, segment.end)


def truncate_end(segment: Segment) -> Optional[Segment]:
    """Remove the end point; None when nothing is left."""
    if segment.begin == segment.end:
        return None
    return Segment(segment.begin, segment.end - 1)


def precedes(first: Segment, second: Segment) -> bool:
    """
    True iff `first` precedes `second`, i.e. a < a', b < b' and b >= a' - 1.
    """
    return (first.begin < second.begin and first.end < second.end
            and first.end >= second.begin - 1)


def linked(first: Segment, second: Segment) -> bool:
    return precedes(first, second) or precedes(second, first)


def contains(outer: Segment, inner: Segment) -> bool:
    return outer.begin <= inner.begin and inner.end <= outer.end


def le_b(first: Segment, second: Segment) -> bool:
    return (first.begin, first.end) <= (second.begin, second.end)


def right_aligned(left: Segment, right: Segment, d: int = 1) -> Optional[int]:
    """
    Label r of the relation `left` |-_r `right`.

    The relation holds iff begin(right) >= begin(left) + 1 and
    end(right) = end(left) + 1; then r = d * (begin(right) - begin(left) - 1).

    Parameters:
        left: the lower segment (Delta')
        right: the upper segment (Delta)
        d: size of the general linear group carrying the cuspidal datum

    Returns:
        The integer label, or None when the relation does not hold.
    """
    if d < 1:
        raise ValueError('d must be positive, got {}'.format(d))
    if right.begin >= left.begin + 1 and right.end == left.end + 1:
        return d * (right.begin - left.begin - 1)
    return None


def intersection(first: Segment, second: Segment) -> Optional[Segment]:
    begin = max(first.begin, second.begin)
    end = min(first.end, second.end)
    if begin > end:
        return None
    return Segment(begin, end)


def intersection_length(first: Segment, second: Segment) -> int:
    return max(0, min(first.end, second.end) - max(first.begin, second.begin) + 1)


def union_if_segment(first: Segment, second: Segment) -> Optional[Segment]:
    """The union when it is an interval (overlapping or adjacent segments)."""
    if first.end < second.begin - 1 or second.end < first.begin - 1:
        return None
    return Segment(min(first.begin, second.begin), max(first.end, second.end))
