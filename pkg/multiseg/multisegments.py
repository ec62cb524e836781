"""
Multisegments: finite multisets of segments.

`Multisegment` is an immutable segment -> multiplicity map that iterates in
ascending <=_b order. `OrderedMultisegment` is one particular listing of a
multisegment as a sequence of rows.
"""
from collections import Counter
from itertools import product
import logging
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from multiseg.exceptions import NotLinkedError, NotPresentError
from multiseg.segments import (Segment, intersection, linked, precedes,
                               reflect, shift, union_if_segment)


logger = logging.getLogger(__name__)


class Multisegment(object):
    """
    Finite multiset of segments.

    Parameters:
        segments: an iterable of segments (repetitions count) or a mapping
            from segment to multiplicity. Zero multiplicities are dropped.
    """
    __slots__ = ('_items', '_counts', '_hash')

    def __init__(self, segments=()):
        if isinstance(segments, Multisegment):
            counts = segments._counts
        elif hasattr(segments, 'items'):
            counts = {s: c for s, c in segments.items() if c}
        else:
            counts = Counter(segments)
        for seg, count in counts.items():
            if not isinstance(seg, Segment):
                raise TypeError('{!r} is not a Segment'.format(seg))
            if count < 0:
                raise ValueError('negative multiplicity {} for {}'.format(count, seg))
        self._items = tuple(sorted(counts.items()))
        self._counts = dict(self._items)
        self._hash = None

    @property
    def counts(self) -> Dict[Segment, int]:
        return dict(self._counts)

    def items(self) -> Tuple[Tuple[Segment, int], ...]:
        return self._items

    def distinct(self) -> Tuple[Segment, ...]:
        return tuple(seg for seg, _ in self._items)

    def rows(self) -> Tuple[Segment, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[Segment]:
        for seg, count in self._items:
            for _ in range(count):
                yield seg

    def __len__(self):
        return sum(count for _, count in self._items)

    def __bool__(self):
        return bool(self._items)

    def __getitem__(self, segment) -> int:
        return self._counts.get(segment, 0)

    def __contains__(self, segment):
        return segment in self._counts

    def __eq__(self, other):
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __add__(self, other):
        counts = Counter(self._counts)
        counts.update(other._counts)
        return Multisegment(counts)

    def __repr__(self):
        inner = ', '.join(str(seg) if count == 1 else '{}x{}'.format(count, seg)
                          for seg, count in self._items)
        return '{' + inner + '}'

    @property
    def sort_key(self):
        """Canonical multisegment order: by size, then by the ascending row tuple."""
        return (len(self), tuple(self))

    def is_set(self) -> bool:
        return all(count == 1 for _, count in self._items)

    def remove(self, segment: Segment, count: int = 1) -> 'Multisegment':
        if self[segment] < count:
            raise NotPresentError('{} does not contain {} copies of {}'.format(self, count, segment))
        counts = dict(self._counts)
        counts[segment] -= count
        return Multisegment(counts)

    def minimum(self, other: 'Multisegment') -> 'Multisegment':
        """Pointwise minimum of the multiplicity functions."""
        return Multisegment({seg: min(count, other[seg]) for seg, count in self._items})

    def difference(self, other: 'Multisegment') -> 'Multisegment':
        return Multisegment({seg: count - other[seg] for seg, count in self._items
                             if count > other[seg]})


class OrderedMultisegment(object):
    """A multisegment listed as a sequence of rows."""
    __slots__ = ('rows',)

    def __init__(self, rows: Iterable[Segment]):
        self.rows = tuple(rows)

    @property
    def multisegment(self) -> Multisegment:
        return Multisegment(self.rows)

    def is_standard_form(self) -> bool:
        return is_standard_form(self.rows)

    def shift(self, n: int) -> 'OrderedMultisegment':
        return OrderedMultisegment(shift(seg, n) for seg in self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, index):
        return self.rows[index]

    def __eq__(self, other):
        if not isinstance(other, OrderedMultisegment):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return '(' + ','.join(str(seg) for seg in self.rows) + ')'


class Closure(NamedTuple):
    multisegments: frozenset
    truncated: bool


def is_standard_form(rows) -> bool:
    """No earlier row precedes a later row."""
    rows = tuple(rows)
    return not any(precedes(rows[i], rows[j])
                   for i in range(len(rows)) for j in range(i + 1, len(rows)))


def add(first: Multisegment, second: Multisegment) -> Multisegment:
    return first + second


def shift_all(m: Multisegment, n: int = 1) -> Multisegment:
    return Multisegment({shift(seg, n): count for seg, count in m.items()})


def dual(m: Multisegment) -> Multisegment:
    """m^vee(Delta) = m(Delta^vee) with [a,b]^vee = [-b,-a]."""
    return Multisegment({reflect(seg): count for seg, count in m.items()})


def support(m: Multisegment) -> frozenset:
    return frozenset(x for seg in m.distinct() for x in range(seg.begin, seg.end + 1))


def canonical_translate(m: Multisegment) -> Multisegment:
    """Translate so that the smallest begin is 0."""
    if not m:
        return m
    return shift_all(m, -min(seg.begin for seg in m.distinct()))


def length_part(m: Multisegment, length: int) -> Multisegment:
    return Multisegment({seg: count for seg, count in m.items() if seg.length == length})


def speh_witness_counts(counts) -> Optional[Dict[Segment, int]]:
    """
    Greedy Speh test on a raw segment -> multiplicity mapping.

    Walk the segments in ascending <=_b order; the current one is always
    minimal among what is left, so its copies must all pair with nu of it.
    """
    remaining = dict(counts)
    witness = {}
    for seg in sorted(remaining):
        count = remaining[seg]
        if not count:
            continue
        up = (seg[0] + 1, seg[1] + 1)
        available = remaining.get(up, 0)
        if available < count:
            return None
        remaining[up] = available - count
        witness[seg] = count
    return witness


def is_speh_type(m: Multisegment) -> Optional[Multisegment]:
    """
    Witness n with m = n + nu(n), or None when m is not of Speh type.
    """
    witness = speh_witness_counts(m.counts)
    if witness is None:
        return None
    return Multisegment(witness)


def brute_force_speh_witness(m: Multisegment) -> Optional[Multisegment]:
    """Search every sub-multiset n with 2|n| = |m| for m = n + nu(n)."""
    if len(m) % 2:
        return None
    items = m.items()
    for choice in product(*(range(count + 1) for _, count in items)):
        if 2 * sum(choice) != len(m):
            continue
        n = Multisegment({seg: c for (seg, _), c in zip(items, choice)})
        if n + shift_all(n) == m:
            return n
    return None


def standard_orders(m: Multisegment) -> Iterator[OrderedMultisegment]:
    """
    Every distinct row sequence of m in which no earlier row precedes a later
    row. Equal segments are not distinguished, so no sequence repeats.
    """
    remaining = dict(m.items())
    prefix = []

    def extend():
        if len(prefix) == len(m):
            yield OrderedMultisegment(prefix)
            return
        live = [seg for seg, count in sorted(remaining.items()) if count]
        for seg in live:
            if any(precedes(seg, other) for other in live):
                continue
            remaining[seg] -= 1
            prefix.append(seg)
            yield from extend()
            prefix.pop()
            remaining[seg] += 1

    return extend()


def block_partition(m: Multisegment) -> List[Tuple[int, Multisegment]]:
    """Group m by segment end, largest end first: [(c_1, m[1]), ..., (c_s, m[s])]."""
    ends = sorted({seg.end for seg in m.distinct()}, reverse=True)
    return [(c, Multisegment({seg: count for seg, count in m.items() if seg.end == c}))
            for c in ends]


def _by_begin(m: Multisegment, descending=False):
    return sorted(m, key=lambda seg: seg.begin, reverse=descending)


def canonical_order(m: Multisegment) -> OrderedMultisegment:
    """
    The standard order fixed block by block.

    The first block is listed by ascending begin and is its own head. Each
    following block is split into a tail, the pointwise minimum of the block
    and nu^{-1} of the previous head, listed by descending begin, and a head
    formed by the rest, listed by ascending begin; the block is the head
    followed by the tail.
    """
    rows = []
    previous_head = None
    for _, block in block_partition(m):
        if previous_head is None:
            head = block
            tail = Multisegment()
        else:
            tail = block.minimum(shift_all(previous_head, -1))
            head = block.difference(tail)
        rows.extend(_by_begin(head))
        rows.extend(_by_begin(tail, descending=True))
        previous_head = head
    return OrderedMultisegment(rows)


def elementary_operation(m: Multisegment, first: Segment, second: Segment) -> Multisegment:
    """
    Replace one copy each of two linked segments by their union and their
    (nonempty) intersection.
    """
    needed = Counter([first, second])
    for seg, count in needed.items():
        if m[seg] < count:
            raise NotPresentError('{} does not contain {} copies of {}'.format(m, count, seg))
    if not linked(first, second):
        raise NotLinkedError('{} and {} are not linked'.format(first, second))
    counts = m.counts
    counts[first] -= 1
    counts[second] -= 1
    union = union_if_segment(first, second)
    counts[union] = counts.get(union, 0) + 1
    meet = intersection(first, second)
    if meet is not None:
        counts[meet] = counts.get(meet, 0) + 1
    return Multisegment(counts)


def subquotient_closure(m: Multisegment, cap: int) -> Closure:
    """
    Every multisegment reachable from m by elementary operations, m included.

    Exploration stops once more than `cap` multisegments have been found;
    the result is then flagged as truncated.
    """
    if cap < 1:
        raise ValueError('cap must be positive, got {}'.format(cap))
    seen = {m}
    frontier = [m]
    while frontier:
        current = frontier.pop()
        distinct = current.distinct()
        for i, first in enumerate(distinct):
            for second in distinct[i + 1:]:
                if not linked(first, second):
                    continue
                reached = elementary_operation(current, first, second)
                if reached in seen:
                    continue
                if len(seen) >= cap:
                    logger.debug('closure of %s truncated at %d', m, cap)
                    return Closure(frozenset(seen), True)
                seen.add(reached)
                frontier.append(reached)
    return Closure(frozenset(seen), False)


def alternating_sum_check(m: Multisegment) -> Optional[bool]:
    """
    Linear condition for single-length multisegments.

    When all segments have one length, write m = sum a_n {nu^n Delta0} with
    Delta0 minimal. The result is True iff the partial sums
    b_n = sum_{i<=n} (-1)^{n-i} a_i are all nonnegative and b_N = 0.
    Returns None for the empty multisegment or mixed lengths.
    """
    if not m or len({seg.length for seg in m.distinct()}) != 1:
        return None
    base = m.distinct()[0].begin
    top = m.distinct()[-1].begin
    length = m.distinct()[0].length
    partial = 0
    for n in range(top - base + 1):
        a_n = m[Segment(base + n, base + n + length - 1)]
        partial = a_n - partial
        if partial < 0:
            return False
    return partial == 0


def components(values) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive integers, as (low, high) pairs."""
    runs = []
    for x in sorted(set(values)):
        if runs and runs[-1][1] == x - 1:
            runs[-1][1] = x
        else:
            runs.append([x, x])
    return [tuple(run) for run in runs]


def totally_disjoint(first, second) -> bool:
    """Every run of `first` is at distance >= 2 from every run of `second`."""
    for low, high in components(first):
        for other_low, other_high in components(second):
            if not (other_low - high >= 2 or low - other_high >= 2):
                return False
    return True


def min_excision(m: Multisegment) -> Multisegment:
    """m' = m - m(Delta0){Delta0} with Delta0 the <=_b-minimal segment."""
    if not m:
        return m
    smallest = m.distinct()[0]
    return m.remove(smallest, m[smallest])
