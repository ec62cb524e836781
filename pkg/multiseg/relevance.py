"""
Decompositions of ordered multisegments, relevant involutions and the
distinguished / Speh-type hypothesis checks.

Rows and pieces are indexed from 1, so the index (i, j) names the j-th piece
(counted from the top) of the i-th row.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Tuple

from multiseg.exceptions import NotStandardFormError
from multiseg.multisegments import (Multisegment, OrderedMultisegment,
                                    canonical_order, dual, is_speh_type,
                                    speh_witness_counts, standard_orders)
from multiseg.segments import Segment


Index = Tuple[int, int]


class Decomposition(object):
    """
    A splitting of every row of an ordered multisegment into consecutive
    pieces, listed from the top of the row down.
    """
    __slots__ = ('parent', 'pieces')

    def __init__(self, parent: OrderedMultisegment, pieces):
        pieces = tuple(tuple(Segment(*p) for p in row) for row in pieces)
        if len(pieces) != len(parent):
            raise ValueError('{} rows of pieces for {} rows'.format(len(pieces), len(parent)))
        for row, split in zip(parent, pieces):
            if not split or split[0].end != row.end or split[-1].begin != row.begin:
                raise ValueError('{} does not decompose {}'.format(split, row))
            for upper, lower in zip(split, split[1:]):
                if lower.end != upper.begin - 1:
                    raise ValueError('{} does not decompose {}'.format(split, row))
        self.parent = parent
        self.pieces = pieces

    def is_trivial(self) -> bool:
        return all(len(split) == 1 for split in self.pieces)

    @property
    def piece_count(self) -> int:
        return sum(len(split) for split in self.pieces)

    def row_lengths(self) -> Tuple[int, ...]:
        """k_1, ..., k_k."""
        return tuple(len(split) for split in self.pieces)

    def index_set(self) -> List[Index]:
        """The index set in lexicographic order."""
        return [(i + 1, j + 1) for i, split in enumerate(self.pieces)
                for j in range(len(split))]

    def piece(self, index: Index) -> Segment:
        i, j = index
        return self.pieces[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.parent == other.parent and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.parent, self.pieces))

    def __repr__(self):
        return ' | '.join(','.join(str(p) for p in split) for split in self.pieces)


class Matching(object):
    """A fixed-point-free involution on the index set of a decomposition."""
    __slots__ = ('images',)

    def __init__(self, images: Dict[Index, Index]):
        self.images = dict(images)

    def image(self, index: Index) -> Index:
        return self.images[index]

    def pairs(self) -> List[Tuple[Index, Index]]:
        """Each pair once, lexicographically smaller index first."""
        return sorted((a, b) for a, b in self.images.items() if a < b)

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))

    def __repr__(self):
        return ', '.join('{}<->{}'.format(a, b) for a, b in self.pairs())


@dataclass(frozen=True)
class Distinguished:
    witnesses: Tuple[Tuple[OrderedMultisegment, Decomposition, Matching], ...] = ()

    @property
    def distinguished(self) -> bool:
        return True


@dataclass(frozen=True)
class NotDistinguished:
    failing_order: OrderedMultisegment

    @property
    def distinguished(self) -> bool:
        return False


@dataclass(frozen=True)
class HypothesisResult:
    mode: str
    holds: bool
    speh_witness: Optional[Multisegment]
    distinguished: bool
    dual_distinguished: Optional[bool] = None
    failing_orders: Tuple[OrderedMultisegment, ...] = field(default=())

    @property
    def verdict(self) -> str:
        return 'holds' if self.holds else 'counterexample'


def _row_splits(row, cuts):
    """Splits of one row with exactly `cuts` cut points, as raw (begin, end) pairs."""
    begin, end = row[0], row[1]
    for chosen in combinations(range(end, begin, -1), cuts):
        split = []
        top = end
        for cut in chosen:
            split.append((cut, top))
            top = cut - 1
        split.append((begin, top))
        yield tuple(split)


def _cut_profiles(capacities, total):
    if not capacities:
        if total == 0:
            yield ()
        return
    rest = sum(capacities[1:])
    for cuts in range(max(0, total - rest), min(capacities[0], total) + 1):
        for tail in _cut_profiles(capacities[1:], total - cuts):
            yield (cuts,) + tail


def _raw_decompositions(rows, row_cap=None, even_only=False, skip_trivial=False):
    """
    Decompositions of `rows` as tuples of raw piece tuples, ordered by total
    piece count (the trivial decomposition first).

    Parameters:
        rows: the ordered rows
        row_cap: optional upper bound on the pieces of any single row
        even_only: skip decompositions with an odd total piece count
        skip_trivial: start after the trivial decomposition
    """
    capacities = [row[1] - row[0] for row in rows]
    if row_cap is not None:
        capacities = [min(c, row_cap - 1) for c in capacities]
        if any(c < 0 for c in capacities):
            return
    for total in range(1 if skip_trivial else 0, sum(capacities) + 1):
        if even_only and (len(rows) + total) % 2:
            continue
        for profile in _cut_profiles(capacities, total):
            yield from product(*(tuple(_row_splits(row, c)) for row, c in zip(rows, profile)))


def decompositions(o: OrderedMultisegment) -> Iterator[Decomposition]:
    """All decompositions of `o`, trivial first, then by ascending piece count."""
    for raw in _raw_decompositions(o.rows):
        yield Decomposition(o, raw)


def _flatten(raw):
    flat, row_of, last = [], [], []
    for r, split in enumerate(raw):
        for j, piece in enumerate(split):
            flat.append(piece)
            row_of.append(r)
            last.append(j == len(split) - 1)
    return flat, row_of, last


def _order_flip_ok(u, image, partner, row_of):
    """
    Rows of the images along one row must strictly decrease; check `u`
    against its already matched neighbours.
    """
    target = row_of[image]
    if u > 0 and row_of[u - 1] == row_of[u] and partner[u - 1] >= 0:
        if not row_of[partner[u - 1]] > target:
            return False
    if u + 1 < len(partner) and row_of[u + 1] == row_of[u] and partner[u + 1] >= 0:
        if not row_of[partner[u + 1]] < target:
            return False
    return True


def _search_matching(raw) -> Optional[List[int]]:
    """
    Backtracking search for a relevant involution on a raw decomposition.

    The lexicographically first unmatched piece is always paired with a
    later piece it is nu of. Pruning: the pieces must form a Speh-type
    multiset, partners lie in strictly later rows, and pieces of the first
    row only pair with last pieces of their rows.
    """
    flat, row_of, last = _flatten(raw)
    n = len(flat)
    if n % 2:
        return None
    if speh_witness_counts(Counter(flat)) is None:
        return None
    by_value = defaultdict(list)
    for idx, piece in enumerate(flat):
        by_value[piece].append(idx)
    candidates = []
    for u, piece in enumerate(flat):
        below = by_value.get((piece[0] - 1, piece[1] - 1), ())
        options = [v for v in below if row_of[v] > row_of[u]]
        if row_of[u] == 0:
            options = [v for v in options if last[v]]
        above = by_value.get((piece[0] + 1, piece[1] + 1), ())
        if not options and not any(row_of[w] < row_of[u] and (row_of[w] > 0 or last[u])
                                   for w in above):
            return None
        # try the latest row first: images along a row go upwards
        candidates.append(options[::-1])
    partner = [-1] * n

    def assign(u):
        while u < n and partner[u] >= 0:
            u += 1
        if u == n:
            return True
        for v in candidates[u]:
            if partner[v] >= 0:
                continue
            if not (_order_flip_ok(u, v, partner, row_of) and _order_flip_ok(v, u, partner, row_of)):
                continue
            partner[u], partner[v] = v, u
            if assign(u + 1):
                return True
            partner[u] = partner[v] = -1
        return False

    if assign(0):
        return partner
    return None


def _to_matching(raw, partner) -> Matching:
    index = [(r + 1, j + 1) for r, split in enumerate(raw) for j in range(len(split))]
    return Matching({index[u]: index[v] for u, v in enumerate(partner)})


def find_matching(dec: Decomposition) -> Optional[Matching]:
    """A relevant involution for the decomposition, or None."""
    raw = tuple(tuple(tuple(p) for p in split) for split in dec.pieces)
    partner = _search_matching(raw)
    if partner is None:
        return None
    return _to_matching(raw, partner)


def satisfies_order_flip(dec: Decomposition, matching: Matching) -> bool:
    for i, split in enumerate(dec.pieces, start=1):
        for j in range(1, len(split)):
            if not matching.image((i, j + 1))[0] < matching.image((i, j))[0]:
                return False
    return True


def is_relevant_matching(dec: Decomposition, matching: Matching) -> bool:
    """Check all three conditions of a relevant involution directly."""
    indices = dec.index_set()
    if sorted(matching.images) != indices:
        return False
    for index in indices:
        other = matching.image(index)
        if other == index or matching.image(other) != index:
            return False
        if index < other:
            upper, lower = dec.piece(index), dec.piece(other)
            if (upper.begin, upper.end) != (lower.begin + 1, lower.end + 1):
                return False
    return satisfies_order_flip(dec, matching)


def reference_matchings(dec: Decomposition, require_shift: bool = True) -> Iterator[Matching]:
    """
    Every involution on the index set with no fixed points and the order
    flip property, found by plain enumeration of pairings.

    With `require_shift` the pairs must also satisfy the nu-shift condition;
    the order flip is only checked on complete pairings.
    """
    raw = tuple(tuple(tuple(p) for p in split) for split in dec.pieces)
    flat, row_of, _ = _flatten(raw)
    n = len(flat)
    partner = [-1] * n

    def complete_ok():
        for u in range(n - 1):
            if row_of[u] == row_of[u + 1] and not row_of[partner[u + 1]] < row_of[partner[u]]:
                return False
        return True

    def pairings():
        u = next((i for i in range(n) if partner[i] < 0), None)
        if u is None:
            if complete_ok():
                yield _to_matching(raw, partner)
            return
        for v in range(u + 1, n):
            if partner[v] >= 0:
                continue
            if require_shift and flat[u] != (flat[v][0] + 1, flat[v][1] + 1):
                continue
            partner[u], partner[v] = v, u
            yield from pairings()
            partner[u] = partner[v] = -1

    if n % 2:
        return iter(())
    return pairings()


def _check_standard(o: OrderedMultisegment):
    if not o.is_standard_form():
        raise NotStandardFormError('{} is not in standard form'.format(o))


def _first_relevant(rows, skip_trivial=False):
    # a row splits into at most k - 1 pieces: its images lie in distinct other rows
    row_cap = max(len(rows) - 1, 1)
    for raw in _raw_decompositions(rows, row_cap=row_cap, even_only=True,
                                   skip_trivial=skip_trivial):
        partner = _search_matching(raw)
        if partner is not None:
            return raw, partner
    return None


def is_relevant(o: OrderedMultisegment) -> Optional[Tuple[Decomposition, Matching]]:
    """
    The first decomposition relevant to `o` (trivial first), with its
    involution, or None.
    """
    _check_standard(o)
    found = _first_relevant(o.rows)
    if found is None:
        return None
    raw, partner = found
    return Decomposition(o, raw), _to_matching(raw, partner)


def nontrivial_relevant(o: OrderedMultisegment) -> Optional[Tuple[Decomposition, Matching]]:
    _check_standard(o)
    found = _first_relevant(o.rows, skip_trivial=True)
    if found is None:
        return None
    raw, partner = found
    return Decomposition(o, raw), _to_matching(raw, partner)


def strong_form_holds(o: OrderedMultisegment) -> bool:
    """No non-trivial decomposition is relevant to `o`."""
    return nontrivial_relevant(o) is None


def trivial_is_relevant(o: OrderedMultisegment) -> bool:
    return _search_matching(tuple((tuple(row),) for row in o.rows)) is not None


def _orders_canonical_first(m: Multisegment):
    first = canonical_order(m)
    yield first
    for order in standard_orders(m):
        if order != first:
            yield order


def is_distinguished(m: Multisegment):
    """
    Distinguished(witnesses) when every standard order admits a relevant
    decomposition, otherwise NotDistinguished(first failing order).

    The canonical order is tried first; it is the order most likely to fail.
    """
    witnesses = []
    for order in _orders_canonical_first(m):
        found = is_relevant(order)
        if found is None:
            return NotDistinguished(order)
        witnesses.append((order,) + found)
    return Distinguished(tuple(witnesses))


def distinguished_flag(m: Multisegment, speh: Optional[bool] = None,
                       canonical_relevant: Optional[bool] = None) -> bool:
    """
    Boolean form of is_distinguished without collecting witnesses.

    Speh type makes the trivial decomposition relevant to every standard
    order, which settles the question at once. A caller that already knows
    whether the canonical order admits a relevant decomposition passes it as
    `canonical_relevant`.
    """
    if speh is None:
        speh = is_speh_type(m) is not None
    if speh:
        return True
    if canonical_relevant is False:
        return False
    orders = _orders_canonical_first(m)
    if canonical_relevant:
        next(orders)
    for order in orders:
        if _first_relevant(order.rows) is None:
            return False
    return True


def check_hypothesis_star(m: Multisegment) -> HypothesisResult:
    """Holds iff m is not distinguished or m is of Speh type."""
    witness = is_speh_type(m)
    if witness is not None:
        return HypothesisResult('star', True, witness, True)
    verdict = is_distinguished(m)
    failing = (verdict.failing_order,) if not verdict.distinguished else ()
    return HypothesisResult('star', not verdict.distinguished, None,
                            verdict.distinguished, failing_orders=failing)


def check_hypothesis_star_star(m: Multisegment) -> HypothesisResult:
    """Holds iff m or its dual is not distinguished, or m is of Speh type."""
    witness = is_speh_type(m)
    if witness is not None:
        return HypothesisResult('star_star', True, witness, True, True)
    verdict = is_distinguished(m)
    if not verdict.distinguished:
        return HypothesisResult('star_star', True, None, False,
                                failing_orders=(verdict.failing_order,))
    dual_verdict = is_distinguished(dual(m))
    failing = (dual_verdict.failing_order,) if not dual_verdict.distinguished else ()
    return HypothesisResult('star_star', not dual_verdict.distinguished, None, True,
                            dual_verdict.distinguished, failing_orders=failing)


def check_hypothesis(m: Multisegment, mode: str = 'star') -> HypothesisResult:
    if mode == 'star':
        return check_hypothesis_star(m)
    if mode == 'star_star':
        return check_hypothesis_star_star(m)
    raise ValueError('unknown hypothesis mode {!r}'.format(mode))


def speh_characterizations(m: Multisegment) -> Tuple[bool, bool, bool]:
    """
    Three independent Speh-type tests: a witness n with m = n + nu(n), the
    trivial decomposition relevant to some standard order, and to every
    standard order.
    """
    witness = is_speh_type(m) is not None
    flags = [trivial_is_relevant(order) for order in standard_orders(m)]
    return witness, any(flags), all(flags)
