"""
Ladders, the Zelevinsky involution and the Sp-distinction / Klyachko-type
classification of ladder representations.
"""
from collections import Counter
from itertools import permutations
import logging
from typing import List, NamedTuple, Optional, Sequence

from multiseg.exceptions import InvariantViolation, NotALadderError, NotProperLadderError
from multiseg.multisegments import Multisegment
from multiseg.segments import (Segment, contains, intersection_length, plus,
                               precedes, reflect, right_aligned, shift,
                               truncate_end, union_if_segment)


logger = logging.getLogger(__name__)


class Ladder(object):
    """
    Rows Delta_1, ..., Delta_k with strictly decreasing begins and strictly
    decreasing ends. The empty ladder is allowed.
    """
    __slots__ = ('rows',)

    def __init__(self, rows: Sequence[Segment]):
        rows = tuple(rows)
        for upper, lower in zip(rows, rows[1:]):
            if not (upper.begin > lower.begin and upper.end > lower.end):
                raise NotALadderError('{} does not sit above {}'.format(upper, lower))
        self.rows = rows

    @property
    def multisegment(self) -> Multisegment:
        return Multisegment(self.rows)

    def is_proper(self) -> bool:
        return is_proper(self)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, index):
        return self.rows[index]

    def __eq__(self, other):
        if not isinstance(other, Ladder):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return 'Ladder(' + ','.join(str(seg) for seg in self.rows) + ')'


class KlyachkoType(NamedTuple):
    k: int
    r: int
    n: int


def ladder_from_rows(rows: Sequence[Segment]) -> Ladder:
    return Ladder(rows)


def ladder_multisegment(l: Ladder) -> Multisegment:
    return l.multisegment


def as_ladder(m: Multisegment) -> Optional[Ladder]:
    """The unique ladder ordering of m, or None when m is not a ladder."""
    rows = sorted(m, reverse=True)
    try:
        return Ladder(rows)
    except NotALadderError:
        return None


def to_ladder(l) -> Ladder:
    """Accept a Ladder or anything Multisegment() takes; NotALadderError otherwise."""
    if isinstance(l, Ladder):
        return l
    ladder = as_ladder(Multisegment(l))
    if ladder is None:
        raise NotALadderError('{} is not a ladder'.format(l))
    return ladder


def is_proper(l: Ladder) -> bool:
    return all(precedes(lower, upper) for upper, lower in zip(l.rows, l.rows[1:]))


def proper_parts(l: Ladder) -> List[Ladder]:
    """Split the ladder after every row that its successor does not precede."""
    parts = []
    current = []
    for row in l.rows:
        if current and not precedes(row, current[-1]):
            parts.append(Ladder(current))
            current = []
        current.append(row)
    if current:
        parts.append(Ladder(current))
    return parts


def zelevinsky_dual(m: Multisegment) -> Multisegment:
    """
    m^t by the Moeglin-Waldspurger algorithm.

    Repeatedly: start a chain at the segment of maximal end e with maximal
    begin, extend it by segments ending exactly one step lower that precede
    the current link (maximal begin first), emit [end of the last link, e]
    and cut the end point off every link.
    """
    counts = Counter(m.counts)
    result = Counter()
    while counts:
        top = max(counts, key=lambda seg: (seg.end, seg.begin))
        chain = [top]
        while True:
            current = chain[-1]
            candidates = [seg for seg in counts
                          if seg.end == current.end - 1 and precedes(seg, current)]
            if not candidates:
                break
            chain.append(max(candidates))
        result[Segment(chain[-1].end, top.end)] += 1
        for seg in chain:
            counts[seg] -= 1
            if not counts[seg]:
                del counts[seg]
            cut = truncate_end(seg)
            if cut is not None:
                counts[cut] += 1
    return Multisegment(result)


def _singletons(high, low):
    return [Segment(x, x) for x in range(high, low - 1, -1)]


def ladder_dual_recursive(l) -> Ladder:
    """
    Zelevinsky dual of a ladder, built row by row.

    Starting from {[a,b]}^t = {[b,b], ..., [a,a]}, each new row [a',b'] under
    a last row [a_k, b_k] either appends the singletons b', ..., a' (when
    b' + 1 < a_k) or widens the last b' - a_k + 2 dual rows by one step to
    the left and appends the singletons a_k - 2, ..., a'.
    """
    l = to_ladder(l)
    dual_rows = []
    previous = None
    for row in l.rows:
        if previous is None or row.end + 1 < previous.begin:
            dual_rows.extend(_singletons(row.end, row.begin))
        else:
            start = len(dual_rows) - (row.end - previous.begin + 2)
            if start < 0:
                raise InvariantViolation('cannot widen {} dual rows below {}'.format(
                    row.end - previous.begin + 2, l))
            dual_rows[start:] = [plus(seg) for seg in dual_rows[start:]]
            dual_rows.extend(_singletons(previous.begin - 2, row.begin))
        previous = row
    dual = as_ladder(Multisegment(dual_rows))
    if dual is None:
        raise InvariantViolation('dual of ladder {} is not a ladder'.format(l))
    return dual


def sp_distinguished_L(l) -> bool:
    """Even number of rows and Delta_{2i-1} = nu Delta_{2i}."""
    rows = to_ladder(l).rows
    if len(rows) % 2:
        return False
    return all(rows[i] == shift(rows[i + 1]) for i in range(0, len(rows), 2))


def sp_distinguished_Z(l) -> bool:
    """
    Every row has even length, and consecutive rows whose union is a segment
    meet in an odd number of points.
    """
    rows = to_ladder(l).rows
    if any(seg.length % 2 for seg in rows):
        return False
    for upper, lower in zip(rows, rows[1:]):
        if union_if_segment(upper, lower) is not None and intersection_length(upper, lower) % 2 == 0:
            return False
    return True


def klyachko_type_proper(l, d: int = 1) -> Optional[KlyachkoType]:
    """
    Klyachko type of a proper ladder.

    Rows are paired from the bottom: Delta_t with Delta_{t-1}, Delta_{t-2}
    with Delta_{t-3}, and so on; each pair must be right-aligned and
    contributes its label. An unpaired top row contributes d * length.

    Raises:
        NotProperLadderError: the ladder is not proper
    """
    l = to_ladder(l)
    if d < 1:
        raise ValueError('d must be positive, got {}'.format(d))
    if not is_proper(l):
        raise NotProperLadderError('{} is not a proper ladder'.format(l))
    rows = l.rows
    t = len(rows)
    r = 0
    for i in range(t // 2):
        lower, upper = rows[t - 1 - 2 * i], rows[t - 2 - 2 * i]
        label = right_aligned(lower, upper, d)
        if label is None:
            return None
        r += label
    if t % 2:
        r += d * rows[0].length
    n = d * sum(seg.length for seg in rows)
    return KlyachkoType((n - r) // 2, r, n)


def klyachko_type(l, d: int = 1) -> Optional[KlyachkoType]:
    """Sum of the Klyachko types of the proper parts, None if one is missing."""
    k = r = n = 0
    for part in proper_parts(to_ladder(l)):
        found = klyachko_type_proper(part, d)
        if found is None:
            logger.debug('proper part %s of %s has no Klyachko type', part, l)
            return None
        k, r, n = k + found.k, r + found.r, n + found.n
    return KlyachkoType(k, r, n)


def klyachko_type_reflected(l, d: int = 1) -> Optional[KlyachkoType]:
    """Klyachko type computed on the ladder reflected through the origin."""
    reflected = as_ladder(Multisegment(reflect(seg) for seg in to_ladder(l).rows))
    return klyachko_type(reflected, d)


def speh_ladder(segment: Segment, n: int) -> Ladder:
    """{nu^{n-1} Delta, ..., nu Delta, Delta}."""
    if n < 1:
        raise ValueError('n must be positive, got {}'.format(n))
    return Ladder([shift(segment, i) for i in range(n - 1, -1, -1)])


def in_family_F(m: Multisegment) -> bool:
    """
    Three segments of even length with Delta_1 inside both nu Delta_2 and
    nu^{-1} Delta_2, and Delta_3 meeting each of them in an odd number of
    points, for some labelling of the three.
    """
    rows = list(m)
    if len(rows) != 3 or any(seg.length % 2 for seg in rows):
        return False
    for first, second, third in permutations(rows):
        if not (contains(shift(second, 1), first) and contains(shift(second, -1), first)):
            continue
        if intersection_length(third, first) % 2 and intersection_length(third, second) % 2:
            return True
    return False
