"""Degree sequences and graphicality tests.

Covers simple, bipartite, directed, and forbidden-edge-restricted bipartite
degree sequences.  Directed sequences are handled through their Gale bipartite
representation (out-stubs in one class, in-stubs in the other, diagonal pairs
excluded), which reduces directed graphicality to a restricted bipartite
problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

from .errors import ForbiddenSetNotMatching, NotGraphical

__all__ = [
    "DegreeSequence",
    "BipartiteDegreeSequence",
    "DirectedDegreeSequence",
    "ForbiddenSet",
    "erdos_gallai",
    "gale_ryser",
    "restricted_bipartite_graphical",
    "directed_graphical",
    "realize",
    "realize_bipartite",
    "realize_directed",
]


def _as_tuple(degrees: Iterable[int]) -> Tuple[int, ...]:
    out = tuple(int(d) for d in degrees)
    if any(d < 0 for d in out):
        raise ValueError("degrees must be non-negative")
    return out


@dataclass(frozen=True)
class DegreeSequence:
    """A labeled simple-graph degree sequence.

    ``degrees`` keeps the caller's vertex order; ``sorted_degrees`` is the
    non-increasing canonical view and ``order`` maps canonical position to the
    original label, so realizations computed in canonical order can be
    reported back in user order.
    """

    degrees: Tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        object.__setattr__(self, "degrees", _as_tuple(degrees))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def dmax(self) -> int:
        return max(self.degrees, default=0)

    @property
    def sorted_degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.degrees, reverse=True))

    @property
    def order(self) -> Tuple[int, ...]:
        """Original index of each canonical (sorted) position; stable on ties."""
        return tuple(
            i for i, _ in sorted(enumerate(self.degrees), key=lambda t: (-t[1], t[0]))
        )

    def is_graphical(self) -> bool:
        return erdos_gallai(self)


@dataclass(frozen=True)
class BipartiteDegreeSequence:
    """Degree sequence of a bipartite graph, one vector per vertex class."""

    u_degrees: Tuple[int, ...]
    w_degrees: Tuple[int, ...]

    def __init__(self, u_degrees: Iterable[int], w_degrees: Iterable[int]):
        object.__setattr__(self, "u_degrees", _as_tuple(u_degrees))
        object.__setattr__(self, "w_degrees", _as_tuple(w_degrees))

    @property
    def nu(self) -> int:
        return len(self.u_degrees)

    @property
    def nw(self) -> int:
        return len(self.w_degrees)

    def is_graphical(self) -> bool:
        return gale_ryser(self)


@dataclass(frozen=True)
class DirectedDegreeSequence:
    """Out/in degree bi-sequence of a simple digraph (same vertex indexing)."""

    out_degrees: Tuple[int, ...]
    in_degrees: Tuple[int, ...]

    def __init__(self, out_degrees: Iterable[int], in_degrees: Iterable[int]):
        out_t = _as_tuple(out_degrees)
        in_t = _as_tuple(in_degrees)
        if len(out_t) != len(in_t):
            raise ValueError("out- and in-degree sequences must have equal length")
        object.__setattr__(self, "out_degrees", out_t)
        object.__setattr__(self, "in_degrees", in_t)

    @property
    def n(self) -> int:
        return len(self.out_degrees)

    def gale_representation(self) -> Tuple["BipartiteDegreeSequence", "ForbiddenSet"]:
        """Bipartite representation with the diagonal 1-factor forbidden."""
        bd = BipartiteDegreeSequence(self.out_degrees, self.in_degrees)
        f = ForbiddenSet(frozenset((i, i) for i in range(self.n)))
        return bd, f

    def is_graphical(self) -> bool:
        return directed_graphical(self)


@dataclass(frozen=True)
class ForbiddenSet:
    """Set of (u-index, w-index) pairs excluded from realizations (non-chords)."""

    pairs: frozenset = field(default_factory=frozenset)

    def __init__(self, pairs: Iterable[Tuple[int, int]] = ()):
        object.__setattr__(
            self, "pairs", frozenset((int(u), int(w)) for u, w in pairs)
        )

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def is_partial_one_factor(self) -> bool:
        """True iff no u-index and no w-index occurs in more than one pair."""
        us = [u for u, _ in self.pairs]
        ws = [w for _, w in self.pairs]
        return len(us) == len(set(us)) and len(ws) == len(set(ws))

    def require_one_factor(self) -> None:
        if not self.is_partial_one_factor():
            raise ForbiddenSetNotMatching(
                "forbidden set is not a partial 1-factor: %r" % (sorted(self.pairs),)
            )

    def shifted(self, du: int, dw: int) -> "ForbiddenSet":
        return ForbiddenSet((u + du, w + dw) for u, w in self.pairs)


def _coerce_simple(d) -> Tuple[int, ...]:
    if isinstance(d, DegreeSequence):
        return d.degrees
    return _as_tuple(d)


def _coerce_bipartite(bd) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if isinstance(bd, BipartiteDegreeSequence):
        return bd.u_degrees, bd.w_degrees
    u, w = bd
    return _as_tuple(u), _as_tuple(w)


def erdos_gallai(d) -> bool:
    """Erdős–Gallai test: is ``d`` the degree sequence of some simple graph?"""
    deg = sorted(_coerce_simple(d), reverse=True)
    n = len(deg)
    if n == 0:
        return True
    if deg[0] > n - 1:
        return False
    if sum(deg) % 2 != 0:
        return False
    # Prefix sums once; the k-th inequality uses sum of the k largest degrees.
    prefix = 0
    for k in range(1, n + 1):
        prefix += deg[k - 1]
        tail = sum(min(k, deg[i]) for i in range(k, n))
        if prefix > k * (k - 1) + tail:
            return False
    return True


def gale_ryser(bd) -> bool:
    """Gale–Ryser test: does ``bd`` have a simple bipartite realization?"""
    u, w = _coerce_bipartite(bd)
    if sum(u) != sum(w):
        return False
    if u and max(u) > len(w):
        return False
    if w and max(w) > len(u):
        return False
    us = sorted(u, reverse=True)
    prefix = 0
    for k in range(1, len(us) + 1):
        prefix += us[k - 1]
        if prefix > sum(min(wj, k) for wj in w):
            return False
    return True


class _Dinic:
    """Small integer max-flow solver (Dinic); instances here are tiny."""

    def __init__(self, n: int):
        self.n = n
        self.head = [[] for _ in range(n)]
        self.to = []
        self.cap = []

    def add_edge(self, a: int, b: int, cap: int) -> int:
        idx = len(self.to)
        self.head[a].append(idx)
        self.to.append(b)
        self.cap.append(cap)
        self.head[b].append(idx + 1)
        self.to.append(a)
        self.cap.append(0)
        return idx

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for v in queue:
                for e in self.head[v]:
                    if self.cap[e] > 0 and level[self.to[e]] < 0:
                        level[self.to[e]] = level[v] + 1
                        queue.append(self.to[e])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(v: int, f: int) -> int:
                if v == t:
                    return f
                while it[v] < len(self.head[v]):
                    e = self.head[v][it[v]]
                    u = self.to[e]
                    if self.cap[e] > 0 and level[u] == level[v] + 1:
                        got = dfs(u, min(f, self.cap[e]))
                        if got > 0:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[v] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if pushed == 0:
                    break
                flow += pushed


def _chord_flow(u, w, forbidden: Optional[ForbiddenSet]):
    """Build the source/U/W/sink flow network over allowed chords."""
    banned = forbidden.pairs if forbidden is not None else frozenset()
    nu, nw = len(u), len(w)
    net = _Dinic(nu + nw + 2)
    src, snk = nu + nw, nu + nw + 1
    for i, ui in enumerate(u):
        net.add_edge(src, i, ui)
    for j, wj in enumerate(w):
        net.add_edge(nu + j, snk, wj)
    chord_edges = {}
    for i in range(nu):
        for j in range(nw):
            if (i, j) not in banned:
                chord_edges[(i, j)] = net.add_edge(i, nu + j, 1)
    return net, src, snk, chord_edges


def restricted_bipartite_graphical(bd, f: Optional[ForbiddenSet] = None) -> bool:
    """Graphicality of a bipartite sequence avoiding the forbidden chords.

    Decided by max-flow feasibility on the chord network: a realization
    exists iff the flow saturates every degree, i.e. equals sum(u) = sum(w).
    """
    u, w = _coerce_bipartite(bd)
    if sum(u) != sum(w):
        return False
    banned = f.pairs if f is not None else frozenset()
    for (i, j) in banned:
        if not (0 <= i < len(u) and 0 <= j < len(w)):
            raise ValueError("forbidden pair out of range: %r" % ((i, j),))
    net, src, snk, _ = _chord_flow(u, w, f)
    return net.max_flow(src, snk) == sum(u)


def directed_graphical(dd) -> bool:
    """Graphicality of a directed bi-sequence (no loops; antiparallel pairs OK)."""
    if not isinstance(dd, DirectedDegreeSequence):
        dd = DirectedDegreeSequence(*dd)
    bd, f = dd.gale_representation()
    return restricted_bipartite_graphical(bd, f)


def _havel_hakimi_edges(degrees: Sequence[int]):
    """One simple-graph realization via Havel–Hakimi; assumes graphical input."""
    remaining = [[d, i] for i, d in enumerate(degrees)]
    edges = []
    while True:
        remaining.sort(key=lambda t: (-t[0], t[1]))
        d0, v0 = remaining[0]
        if d0 == 0:
            break
        if d0 > len(remaining) - 1:
            raise NotGraphical("sequence is not graphical")
        remaining[0][0] = 0
        for k in range(1, d0 + 1):
            remaining[k][0] -= 1
            if remaining[k][0] < 0:
                raise NotGraphical("sequence is not graphical")
            edges.append((min(v0, remaining[k][1]), max(v0, remaining[k][1])))
    return sorted(edges)


def realize(d, f: Optional[ForbiddenSet] = None):
    """Construct one realization of a sequence of any supported kind.

    Returns a sorted edge list: (i, j) vertex pairs for simple sequences,
    (u-index, w-index) pairs for bipartite ones, (tail, head) arcs for
    directed ones.  Raises NotGraphical when no realization exists.
    """
    if isinstance(d, DirectedDegreeSequence):
        return realize_directed(d)
    if isinstance(d, BipartiteDegreeSequence):
        return realize_bipartite(d, f)
    if f is not None and len(f):
        raise ValueError("forbidden sets apply to bipartite/directed sequences only")
    degrees = _coerce_simple(d)
    if not erdos_gallai(degrees):
        raise NotGraphical("sequence is not graphical: %r" % (degrees,))
    return _havel_hakimi_edges(degrees)


def realize_bipartite(bd, f: Optional[ForbiddenSet] = None):
    """One bipartite realization avoiding ``f``, extracted from a max flow."""
    u, w = _coerce_bipartite(bd)
    if sum(u) != sum(w):
        raise NotGraphical("class degree sums differ")
    net, src, snk, chord_edges = _chord_flow(u, w, f)
    if net.max_flow(src, snk) != sum(u):
        raise NotGraphical("no realization avoids the forbidden set")
    return sorted(pair for pair, e in chord_edges.items() if net.cap[e] == 0)


def realize_directed(dd):
    """One digraph realization as a sorted list of (tail, head) arcs."""
    if not isinstance(dd, DirectedDegreeSequence):
        dd = DirectedDegreeSequence(*dd)
    bd, f = dd.gale_representation()
    return realize_bipartite(bd, f)
