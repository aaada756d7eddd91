"""Census routines for bipartite degree sequence classes.

Counts are exact arbitrary-precision integers (the composed-class counts grow
like 15584^(n/6)).  A "sequence on n+n vertices" is an ordered, class-
designated pair of non-increasing vectors with entries at most n; the
designated convention is pinned by the 6+6 census value 15584.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Tuple

from .errors import DivisibilityError, TooLarge
from .sequences import gale_ryser

__all__ = [
    "CountReport",
    "count_almost_half_regular",
    "count_almost_half_regular_exhaustive",
    "count_bipartite_graphical",
    "count_composed_class",
]

DEFAULT_MAX_CENSUS = 10


@dataclass(frozen=True)
class CountReport:
    parameter: int
    count: int
    method: str


def count_almost_half_regular(m: int) -> CountReport:
    """Closed form 2*C(2m, m) - m^2 - 1 for the number of graphical
    almost-half-regular bipartite degree sequences on m+m vertices
    (zero degrees allowed, either class may carry the almost-regular side)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return CountReport(m, 2 * comb(2 * m, m) - m * m - 1, "formula")


def _nonincreasing(n: int, cap: int) -> List[Tuple[int, ...]]:
    return [
        tuple(sorted(c, reverse=True))
        for c in combinations_with_replacement(range(cap + 1), n)
    ]


def _almost_regular(seq: Tuple[int, ...]) -> bool:
    return not seq or max(seq) - min(seq) <= 1


def count_almost_half_regular_exhaustive(m: int) -> CountReport:
    """Independent census: ordered pairs of non-increasing vectors with
    entries <= m, equal sums, Gale-Ryser graphical, at least one side
    almost regular."""
    if m < 1:
        raise ValueError("m must be >= 1")
    by_sum: Dict[int, List[Tuple[int, ...]]] = {}
    for s in _nonincreasing(m, m):
        by_sum.setdefault(sum(s), []).append(s)
    total = 0
    for group in by_sum.values():
        for a in group:
            for b in group:
                if (_almost_regular(a) or _almost_regular(b)) and gale_ryser((a, b)):
                    total += 1
    return CountReport(m, total, "exhaustive")


def count_bipartite_graphical(n: int, max_n: int = DEFAULT_MAX_CENSUS) -> CountReport:
    """Number of graphical bipartite degree sequences on n+n vertices:
    ordered pairs of non-increasing vectors, entries <= n, equal sums,
    passing Gale-Ryser.  n = 6 gives 15584."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise TooLarge("census capped at n = %d" % max_n)
    by_sum: Dict[int, List[Tuple[int, ...]]] = {}
    for s in _nonincreasing(n, n):
        by_sum.setdefault(sum(s), []).append(s)
    total = 0
    for group in by_sum.values():
        for a in group:
            for b in group:
                if gale_ryser((a, b)):
                    total += 1
    return CountReport(n, total, "exhaustive")


def count_composed_class(n: int, block: int, max_block: int = DEFAULT_MAX_CENSUS) -> CountReport:
    """Lower bound on composable fast-mixing sequences on n+n vertices:
    distinct ordered tuples of graphical blocks compose to distinct
    sequences, so the count is census(block) ** (n // block)."""
    if block < 1 or n < 1:
        raise ValueError("sizes must be >= 1")
    if n % block != 0:
        raise DivisibilityError("block %d does not divide n %d" % (block, n))
    base = count_bipartite_graphical(block, max_block).count
    return CountReport(n, base ** (n // block), "formula")
