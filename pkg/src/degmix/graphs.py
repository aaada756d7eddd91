"""Labeled realizations, chord tables, and swap moves.

A sampling or verification instance fixes the vertex classes, the list of
chords (vertex pairs allowed to carry an edge), and the swap kinds in play.
Realizations are encoded as bitmasks over the chord list, so swap moves are
two XORs and set membership is integer hashing.

Move weights implement the lazy kernel: stay with probability 1/2, otherwise
draw a uniformly random pair of vertex-disjoint edges (their count depends
only on the degree sequence, which keeps the kernel symmetric) and pick one
of the perfect matchings on the four endpoints — 3 in simple graphs, 2 in
bipartite ones.  Picking the current matching, a non-chord, or an existing
edge counts as a stay.  With a forbidden 1-factor the non-lazy half is split
evenly between that C4 proposal and a C6 proposal built from an ordered
triple of distinct edges tested against the alternating-hexagon pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import ForbiddenSetNotMatching
from .sequences import ForbiddenSet

__all__ = [
    "LabeledGraph",
    "LabeledBipartiteGraph",
    "SwapMove",
    "Instance",
    "simple_instance",
    "bipartite_instance",
    "directed_instance",
    "enumerate_swaps",
]

Edge = Tuple[int, int]


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on labeled vertices 0..n-1; edges stored as (i, j), i < j."""

    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[Edge]):
        norm = frozenset((min(a, b), max(a, b)) for a, b in edges)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", norm)

    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)


@dataclass(frozen=True)
class LabeledBipartiteGraph:
    """Bipartite graph with classes 0..nu-1 and 0..nw-1; edges are (u, w)."""

    nu: int
    nw: int
    edges: frozenset

    def __init__(self, nu: int, nw: int, edges: Iterable[Edge]):
        object.__setattr__(self, "nu", int(nu))
        object.__setattr__(self, "nw", int(nw))
        object.__setattr__(self, "edges", frozenset((int(u), int(w)) for u, w in edges))

    def u_degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.nu
        for u, _ in self.edges:
            deg[u] += 1
        return tuple(deg)

    def w_degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.nw
        for _, w in self.edges:
            deg[w] += 1
        return tuple(deg)


@dataclass(frozen=True)
class SwapMove:
    """A degree-preserving rewiring: remove ``removed``, add ``added``.

    C4 moves exchange two edges for the other matching on their endpoints;
    C6 moves rotate three edges along an alternating hexagon whose remaining
    three vertex pairs are forbidden chords.
    """

    kind: str  # "C4" or "C6"
    removed: Tuple[Edge, ...]
    added: Tuple[Edge, ...]


class Instance:
    """A fixed degree-sequence problem: chords, degrees, and move tables."""

    def __init__(
        self,
        kind: str,
        degrees,
        forbidden: Optional[ForbiddenSet] = None,
        use_c6: Optional[bool] = None,
    ):
        if kind not in ("simple", "bipartite"):
            raise ValueError("kind must be 'simple' or 'bipartite'")
        self.kind = kind
        self.forbidden = forbidden if forbidden is not None else ForbiddenSet()
        if kind == "simple":
            if len(self.forbidden):
                raise ValueError("forbidden sets require a bipartite instance")
            self.degrees = tuple(int(x) for x in degrees)
            self.n = len(self.degrees)
            self.chords = tuple(
                (i, j) for i in range(self.n) for j in range(i + 1, self.n)
            )
            self.m = sum(self.degrees) // 2
            all_deg = self.degrees
        else:
            u, w = degrees
            self.u_degrees = tuple(int(x) for x in u)
            self.w_degrees = tuple(int(x) for x in w)
            self.nu, self.nw = len(self.u_degrees), len(self.w_degrees)
            self.chords = tuple(
                (i, j)
                for i in range(self.nu)
                for j in range(self.nw)
                if (i, j) not in self.forbidden
            )
            self.m = sum(self.u_degrees)
            if self.m != sum(self.w_degrees):
                raise ValueError("class degree sums differ")
            all_deg = self.u_degrees + self.w_degrees
            if len(self.forbidden):
                self.forbidden.require_one_factor()
        self.chord_index: Dict[Edge, int] = {c: i for i, c in enumerate(self.chords)}
        if use_c6 is None:
            use_c6 = kind == "bipartite" and len(self.forbidden) > 0
        if use_c6 and kind != "bipartite":
            raise ValueError("C6 swaps apply to bipartite instances only")
        self.use_c6 = bool(use_c6)
        # Vertex-disjoint edge-pair count; a function of the degrees alone.
        self.disjoint_pairs = self.m * (self.m - 1) // 2 - sum(
            d * (d - 1) // 2 for d in all_deg
        )
        self.matchings = 3 if kind == "simple" else 2
        self._c4_table: Optional[List[Tuple[int, int, Edge, Edge, Edge, Edge]]] = None
        self._c6_table: Optional[List[Tuple[int, int, Tuple, Tuple]]] = None

    # -- probabilities ---------------------------------------------------

    @property
    def c4_branch(self) -> float:
        return 0.25 if self.use_c6 else 0.5

    def c4_weight(self) -> float:
        """Transition probability contributed by one valid C4 move."""
        if self.disjoint_pairs == 0:
            return 0.0
        return self.c4_branch / self.disjoint_pairs / self.matchings

    def c6_weight(self) -> float:
        """Transition probability of one valid C6 move (3 of the m(m-1)(m-2)
        ordered triples realize a given hexagon)."""
        if not self.use_c6 or self.m < 3:
            return 0.0
        return 0.25 * 3.0 / (self.m * (self.m - 1) * (self.m - 2))

    # -- masks -----------------------------------------------------------

    def mask_of_edges(self, edges: Iterable[Edge]) -> int:
        mask = 0
        for e in edges:
            key = e if self.kind == "bipartite" else (min(e), max(e))
            mask |= 1 << self.chord_index[key]
        return mask

    def edges_of_mask(self, mask: int) -> List[Edge]:
        return [self.chords[i] for i in range(len(self.chords)) if mask >> i & 1]

    def graph_of_mask(self, mask: int):
        if self.kind == "simple":
            return LabeledGraph(self.n, self.edges_of_mask(mask))
        return LabeledBipartiteGraph(self.nu, self.nw, self.edges_of_mask(mask))

    def degrees_of_mask(self, mask: int):
        g = self.graph_of_mask(mask)
        if self.kind == "simple":
            return g.degrees()
        return g.u_degrees(), g.w_degrees()

    # -- move tables -----------------------------------------------------

    def _alts(self, e1: Edge, e2: Edge) -> List[Tuple[Edge, Edge]]:
        """Alternative perfect matchings on the endpoints of two disjoint
        edges, restricted to chords."""
        out = []
        if self.kind == "simple":
            a, b = e1
            c, d = e2
            candidates = [
                ((min(a, c), max(a, c)), (min(b, d), max(b, d))),
                ((min(a, d), max(a, d)), (min(b, c), max(b, c))),
            ]
        else:
            (u1, w1), (u2, w2) = e1, e2
            candidates = [((u1, w2), (u2, w1))]
        for f1, f2 in candidates:
            if f1 in self.chord_index and f2 in self.chord_index:
                out.append((f1, f2))
        return out

    def c4_table(self):
        """All (rm_bits, add_bits, removed..., added...) C4 rewirings over
        disjoint chord pairs; validity at a state is two bit tests."""
        if self._c4_table is None:
            table = []
            k = len(self.chords)
            for i in range(k):
                e1 = self.chords[i]
                for j in range(i + 1, k):
                    e2 = self.chords[j]
                    if e1[0] == e2[0] or e1[1] == e2[1]:
                        continue
                    if self.kind == "simple" and (
                        e1[0] == e2[1] or e1[1] == e2[0]
                    ):
                        continue
                    rm = 1 << i | 1 << j
                    for f1, f2 in self._alts(e1, e2):
                        add = (
                            1 << self.chord_index[f1] | 1 << self.chord_index[f2]
                        )
                        table.append((rm, add, e1, e2, f1, f2))
            self._c4_table = table
        return self._c4_table

    def c6_table(self):
        """All C6 rewirings: for each unordered triple of pairwise-disjoint
        chords, the (at most one) hexagon orientation whose three target
        pairs are chords and whose three closing pairs are forbidden."""
        if self._c6_table is None:
            table = []
            if self.use_c6:
                k = len(self.chords)
                for i in range(k):
                    for j in range(i + 1, k):
                        if not _disjoint(self.chords[i], self.chords[j]):
                            continue
                        for l in range(j + 1, k):
                            if not _disjoint(self.chords[i], self.chords[l]):
                                continue
                            if not _disjoint(self.chords[j], self.chords[l]):
                                continue
                            triple = (self.chords[i], self.chords[j], self.chords[l])
                            for perm in (triple, (triple[0], triple[2], triple[1])):
                                got = self._hexagon(perm)
                                if got is not None:
                                    rm = 1 << i | 1 << j | 1 << l
                                    add = 0
                                    for t in got:
                                        add |= 1 << self.chord_index[t]
                                    table.append((rm, add, perm, got))
            self._c6_table = table
        return self._c6_table

    def _hexagon(self, triple) -> Optional[Tuple[Edge, Edge, Edge]]:
        """Targets of the hexagon pattern for an ordered edge triple, or None.

        For edges (a1,b1),(a2,b2),(a3,b3) the targets are (a1,b2),(a2,b3),
        (a3,b1); the move is valid only when those are chords and the closing
        pairs (a1,b3),(a2,b1),(a3,b2) are all forbidden.
        """
        (a1, b1), (a2, b2), (a3, b3) = triple
        targets = ((a1, b2), (a2, b3), (a3, b1))
        closing = ((a1, b3), (a2, b1), (a3, b2))
        if any(t not in self.chord_index for t in targets):
            return None
        if any(c not in self.forbidden for c in closing):
            return None
        return targets

    # -- per-state moves --------------------------------------------------

    def neighbors(self, mask: int) -> List[int]:
        out = []
        for rm, add, *_ in self.c4_table():
            if mask & rm == rm and mask & add == 0:
                out.append(mask ^ rm ^ add)
        for rm, add, *_ in self.c6_table():
            if mask & rm == rm and mask & add == 0:
                out.append(mask ^ rm ^ add)
        return out

    def moves(self, mask: int) -> List[SwapMove]:
        out = []
        for rm, add, e1, e2, f1, f2 in self.c4_table():
            if mask & rm == rm and mask & add == 0:
                out.append(SwapMove("C4", (e1, e2), (f1, f2)))
        for rm, add, perm, targets in self.c6_table():
            if mask & rm == rm and mask & add == 0:
                out.append(SwapMove("C6", tuple(perm), tuple(targets)))
        return out

    def weighted_neighbors(self, mask: int) -> List[Tuple[int, float]]:
        out = []
        w4 = self.c4_weight()
        if w4:
            for rm, add, *_ in self.c4_table():
                if mask & rm == rm and mask & add == 0:
                    out.append((mask ^ rm ^ add, w4))
        w6 = self.c6_weight()
        if w6:
            for rm, add, *_ in self.c6_table():
                if mask & rm == rm and mask & add == 0:
                    out.append((mask ^ rm ^ add, w6))
        return out


def _disjoint(e1: Edge, e2: Edge) -> bool:
    return e1[0] != e2[0] and e1[1] != e2[1]


def simple_instance(degrees) -> Instance:
    return Instance("simple", degrees)


def bipartite_instance(
    u, w, forbidden: Optional[ForbiddenSet] = None, use_c6: Optional[bool] = None
) -> Instance:
    return Instance("bipartite", (u, w), forbidden, use_c6)


def directed_instance(dd, use_c6: bool = True) -> Instance:
    """Gale representation: out-stubs vs in-stubs with the diagonal forbidden."""
    bd, f = dd.gale_representation()
    return Instance("bipartite", (bd.u_degrees, bd.w_degrees), f, use_c6)


def enumerate_swaps(g, f: Optional[ForbiddenSet] = None) -> List[SwapMove]:
    """Every valid swap from a realization, deduplicated.

    C4 moves are enumerated for all graph kinds; C6 moves only for bipartite
    realizations with a forbidden partial 1-factor, where they are required
    for irreducibility.
    """
    if isinstance(g, LabeledGraph):
        if f is not None and len(f):
            raise ValueError("forbidden sets apply to bipartite realizations")
        inst = simple_instance(g.degrees())
    elif isinstance(g, LabeledBipartiteGraph):
        if f is not None and len(f) and not f.is_partial_one_factor():
            raise ForbiddenSetNotMatching("forbidden set is not a partial 1-factor")
        inst = bipartite_instance(g.u_degrees(), g.w_degrees(), f)
    else:
        raise TypeError("expected a LabeledGraph or LabeledBipartiteGraph")
    return inst.moves(inst.mask_of_edges(g.edges))
