"""
Irreducibility of products of ladder representations and the Sp-distinction
verdict for such products.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from multiseg.exceptions import EmptyInputError, ReducibleProductError
from multiseg.ladders import Ladder, sp_distinguished_L, to_ladder
from multiseg.multisegments import Multisegment
from multiseg.segments import Segment, precedes, shift


DISTINGUISHED = 'distinguished'
NOT_DISTINGUISHED = 'not_distinguished'
HYPOTHESIS_DEPENDENT = 'hypothesis_dependent'


@dataclass(frozen=True)
class ProductVerdict:
    kind: str
    reason: Optional[str] = None

    def __str__(self):
        if self.reason:
            return '{} ({})'.format(self.kind, self.reason)
        return self.kind


def nc_holds(m: Ladder, n: Ladder, i: int, j: int, k: int) -> bool:
    """Evaluate the three NC conditions for the 1-indexed triple (i, j, k)."""
    first, second = m.rows, n.rows
    t, s = len(first), len(second)
    if k < 0 or i < 1 or j < 1 or i + k > t or j + k > s:
        return False
    if not all(precedes(first[i + l - 1], second[j + l - 1]) for l in range(k + 1)):
        return False
    if i > 1 and precedes(shift(first[i - 2], -1), second[j - 1]):
        return False
    if j + k + 1 <= s and precedes(shift(first[i + k - 1], -1), second[j + k]):
        return False
    return True


def nc(m, n) -> Optional[Tuple[int, int, int]]:
    """First witness (i, j, k) of NC(m, n), or None."""
    m, n = to_ladder(m), to_ladder(n)
    t, s = len(m), len(n)
    for i in range(1, t + 1):
        for j in range(1, s + 1):
            for k in range(min(t - i, s - j) + 1):
                if nc_holds(m, n, i, j, k):
                    return i, j, k
    return None


def nc_witnesses(ladders: Sequence) -> List[Tuple[int, int, Tuple[int, int, int]]]:
    """(a, b, witness) for every ordered pair of factors with NC(ladders[a], ladders[b])."""
    ladders = [to_ladder(l) for l in ladders]
    found = []
    for a, b in combinations(range(len(ladders)), 2):
        for x, y in ((a, b), (b, a)):
            witness = nc(ladders[x], ladders[y])
            if witness is not None:
                found.append((x, y, witness))
    return found


def product_irreducible(ladders: Sequence) -> bool:
    ladders = [to_ladder(l) for l in ladders]
    return all(nc(first, second) is None and nc(second, first) is None
               for first, second in combinations(ladders, 2))


def excise_min(m_list: Sequence[Multisegment]) -> Tuple[Segment, List[Multisegment]]:
    """
    The <=_b-minimal segment Delta0 of m_1 + ... + m_k, and every m_i with
    one copy of Delta0 removed (those not containing it are unchanged).

    Raises:
        EmptyInputError: every m_i is empty
    """
    m_list = [Multisegment(m) for m in m_list]
    present = [m.distinct()[0] for m in m_list if m]
    if not present:
        raise EmptyInputError('no segments to excise from')
    smallest = min(present)
    return smallest, [m.remove(smallest) if smallest in m else m for m in m_list]


def omega_sum(ladders: Sequence) -> Multisegment:
    """
    m_1 + ... + m_k for ladders whose product is irreducible.

    Raises:
        ReducibleProductError: some pair satisfies NC
    """
    ladders = [to_ladder(l) for l in ladders]
    if not product_irreducible(ladders):
        raise ReducibleProductError('product of {} is reducible'.format(ladders))
    total = Multisegment()
    for l in ladders:
        total = total + l.multisegment
    return total


def product_sp_verdict(ladders: Sequence) -> ProductVerdict:
    """
    Sp-distinction of an irreducible product of ladder representations.

    Distinguished when every factor is; not distinguished when some factor is
    not and there are at most two factors. With three or more factors the
    negative answer is only known under Hypothesis **, and is reported as such.

    Raises:
        ReducibleProductError: the product is reducible
    """
    ladders = [to_ladder(l) for l in ladders]
    if not product_irreducible(ladders):
        raise ReducibleProductError('product of {} is reducible'.format(ladders))
    if all(sp_distinguished_L(l) for l in ladders):
        return ProductVerdict(DISTINGUISHED)
    if len(ladders) <= 2:
        return ProductVerdict(NOT_DISTINGUISHED)
    return ProductVerdict(HYPOTHESIS_DEPENDENT, 'not distinguished if Hypothesis ** holds')
