"""Desk-scale verification engine over exhaustively enumerated realizations.

Everything here is exact: realization spaces are enumerated by a pruned
depth-first search over chords, transition matrices follow the chain kernel
literally, eigenvalues come from a dense symmetric solve, and the
Cartesian-product and swap-locality theorems are checked realization by
realization with explicit bijections.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .decomposition import (
    SplitSequence,
    SplittedBipartiteSequence,
    canonical_decompose,
    compose,
    compose_bipartite,
    compose_directed,
    psi,
)
from .errors import Disconnected, NotGraphical, ProductMismatch, TooLarge
from .graphs import Instance, bipartite_instance, simple_instance
from .sequences import (
    BipartiteDegreeSequence,
    DegreeSequence,
    DirectedDegreeSequence,
    ForbiddenSet,
)

__all__ = [
    "DEFAULT_MAX_CHORDS",
    "Space",
    "RealizationGraph",
    "SpectralReport",
    "realization_space",
    "enumerate_realizations",
    "build_realization_graph",
    "spectral_report",
    "verify_cartesian_product",
    "swap_locality_report",
    "tv_distance_audit",
]

DEFAULT_MAX_CHORDS = 24


def _max_chords_cap(max_chords: Optional[int]) -> int:
    if max_chords is not None:
        return max_chords
    env = os.environ.get("DEGMIX_MAX_CHORDS")
    return int(env) if env else DEFAULT_MAX_CHORDS


def _instance_for(d, f: Optional[ForbiddenSet], use_c6: Optional[bool]) -> Instance:
    if isinstance(d, DirectedDegreeSequence):
        bd, diag = d.gale_representation()
        return bipartite_instance(
            bd.u_degrees, bd.w_degrees, diag, True if use_c6 is None else use_c6
        )
    if isinstance(d, BipartiteDegreeSequence):
        return bipartite_instance(d.u_degrees, d.w_degrees, f, use_c6)
    if isinstance(d, SplittedBipartiteSequence):
        u, w = d.canonical()
        return bipartite_instance(u, w, f, use_c6)
    if isinstance(d, SplitSequence):
        return simple_instance(d.degree_sequence().sorted_degrees)
    if isinstance(d, DegreeSequence):
        degrees = d.degrees
    else:
        degrees = tuple(int(x) for x in d)
    if f is not None and len(f):
        raise ValueError("forbidden sets apply to bipartite/directed sequences")
    return simple_instance(degrees)


def _enumerate_masks(inst: Instance, max_chords: Optional[int]) -> List[int]:
    cap = _max_chords_cap(max_chords)
    k = len(inst.chords)
    if k > cap:
        raise TooLarge("instance has %d chords, cap is %d" % (k, cap))
    if inst.kind == "simple":
        targets = list(inst.degrees)
        endpoint = [(a, b) for a, b in inst.chords]
    else:
        targets = list(inst.u_degrees) + list(inst.w_degrees)
        endpoint = [(a, inst.nu + b) for a, b in inst.chords]
    slack = [0] * len(targets)
    for a, b in endpoint:
        slack[a] += 1
        slack[b] += 1
    if any(t > s for t, s in zip(targets, slack)):
        return []
    rem = targets
    out: List[int] = []

    def dfs(idx: int, mask: int) -> None:
        if idx == k:
            out.append(mask)
            return
        a, b = endpoint[idx]
        slack[a] -= 1
        slack[b] -= 1
        if rem[a] <= slack[a] and rem[b] <= slack[b]:
            dfs(idx + 1, mask)
        if rem[a] > 0 and rem[b] > 0:
            rem[a] -= 1
            rem[b] -= 1
            dfs(idx + 1, mask | 1 << idx)
            rem[a] += 1
            rem[b] += 1
        slack[a] += 1
        slack[b] += 1

    dfs(0, 0)
    out.sort()
    return out


@dataclass
class Space:
    """An instance together with its full list of realization masks."""

    instance: Instance
    masks: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.masks)

    def index(self) -> Dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    def connected(self) -> bool:
        if self.count <= 1:
            return True
        seen = {self.masks[0]}
        stack = [self.masks[0]]
        while stack:
            cur = stack.pop()
            for nxt in self.instance.neighbors(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.count

    def transition_matrix(self) -> np.ndarray:
        idx = self.index()
        n = self.count
        p = np.zeros((n, n))
        for i, mask in enumerate(self.masks):
            for nxt, w in self.instance.weighted_neighbors(mask):
                p[i, idx[nxt]] += w
        np.fill_diagonal(p, 1.0 - p.sum(axis=1))
        return p


@dataclass
class RealizationGraph:
    """The meta-graph of realizations: swap adjacency plus the exact lazy
    transition matrix of the chain kernel."""

    space: Space
    edges: Tuple[Tuple[int, int], ...]
    transition_matrix: np.ndarray

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.space.masks

    @property
    def count(self) -> int:
        return self.space.count

    def connected(self) -> bool:
        return self.space.connected()


@dataclass
class SpectralReport:
    lambda2: float
    relaxation_time: float
    conductance: float
    realization_count: int
    conductance_exact: bool
    trivial: bool = False


def realization_space(
    d,
    f: Optional[ForbiddenSet] = None,
    max_chords: Optional[int] = None,
    use_c6: Optional[bool] = None,
) -> Space:
    inst = _instance_for(d, f, use_c6)
    return Space(inst, tuple(_enumerate_masks(inst, max_chords)))


def enumerate_realizations(
    d, f: Optional[ForbiddenSet] = None, max_chords: Optional[int] = None
):
    """Every labeled realization exactly once, in canonical encoding order."""
    space = realization_space(d, f, max_chords)
    return [space.instance.graph_of_mask(m) for m in space.masks]


def build_realization_graph(
    d,
    f: Optional[ForbiddenSet] = None,
    max_chords: Optional[int] = None,
    use_c6: Optional[bool] = None,
) -> RealizationGraph:
    space = realization_space(d, f, max_chords, use_c6)
    idx = space.index()
    edges = set()
    for i, mask in enumerate(space.masks):
        for nxt in space.instance.neighbors(mask):
            j = idx[nxt]
            edges.add((min(i, j), max(i, j)))
    return RealizationGraph(space, tuple(sorted(edges)), space.transition_matrix())


def _exact_conductance(p: np.ndarray) -> float:
    n = p.shape[0]
    best = np.inf
    row_ids = np.arange(1, 2 ** n - 1, dtype=np.uint64)
    for lo in range(0, len(row_ids), 1 << 16):
        chunk = row_ids[lo: lo + (1 << 16)]
        ind = (chunk[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & 1
        sizes = ind.sum(axis=1)
        keep = 2 * sizes <= n  # stationary mass of S at most 1/2
        ind = ind[keep].astype(float)
        sizes = sizes[keep]
        if not len(sizes):
            continue
        boundary = ((ind @ p) * (1.0 - ind)).sum(axis=1)
        best = min(best, float(np.min(boundary / sizes)))
    return best


def _sweep_conductance(p: np.ndarray) -> float:
    n = p.shape[0]
    vals, vecs = np.linalg.eigh(p)
    order = np.argsort(vecs[:, -2])
    best = np.inf
    ind = np.zeros(n)
    for k in range(n - 1):
        ind[order[k]] = 1.0
        boundary = float(((ind @ p) * (1.0 - ind)).sum())
        best = min(best, boundary / min(k + 1, n - k - 1))
    return best


def spectral_report(rg: RealizationGraph) -> SpectralReport:
    """Second eigenvalue, relaxation time, and conductance of the chain.

    Raises Disconnected for reducible chains (a reportable finding in the
    C4-only directed mode).  The single-realization chain is reported with
    lambda2 = 0 and the trivial flag set.
    """
    n = rg.count
    if n == 1:
        return SpectralReport(0.0, 1.0, 1.0, 1, True, trivial=True)
    if not rg.connected():
        raise Disconnected("realization graph has more than one component")
    p = rg.transition_matrix
    vals = np.linalg.eigvalsh(p)
    lam2 = float(min(max(vals[-2], -1.0), 1.0))
    exact = n <= 20
    phi = _exact_conductance(p) if exact else _sweep_conductance(p)
    gap = 1.0 - lam2
    assert phi * phi / 2.0 <= gap + 1e-9, "Cheeger lower bound violated"
    assert gap <= 2.0 * phi + 1e-9, "Cheeger upper bound violated"
    return SpectralReport(lam2, 1.0 / gap, phi, n, exact)


# ---------------------------------------------------------------------------
# Cartesian-product verification


@dataclass
class _ProductLayout:
    """How a composed instance projects onto its two factor instances."""

    composed: Instance
    factors: Tuple[Instance, Instance]
    forced_mask: int
    chord_map: Dict[int, Tuple[int, int]]  # composed chord bit -> (coord, factor bit)
    blocks: Tuple[Tuple[int, ...], Tuple[int, ...]]  # vertex ids per coordinate


def _vertex_ids_simple(n: int) -> List[int]:
    return list(range(n))


def _simple_layout(s: SplitSequence, g: DegreeSequence) -> _ProductLayout:
    composed = compose(s, g).sorted_degrees
    inst = simple_instance(composed)
    p, q = s.nu, s.nw
    n = len(composed)
    u_slots = list(range(p))
    w_slots = list(range(n - q, n))
    mid = list(range(p, n - q))
    sb = psi(s)
    u_deg, w_deg = sb.canonical()
    f1 = bipartite_instance(u_deg, w_deg)
    f2 = simple_instance(g.sorted_degrees)
    forced = 0
    for i, a in enumerate(u_slots):
        for b in u_slots[i + 1:]:
            forced |= 1 << inst.chord_index[(a, b)]
        for b in mid:
            forced |= 1 << inst.chord_index[(min(a, b), max(a, b))]
    chord_map = {}
    for ai, a in enumerate(u_slots):
        for bi, b in enumerate(w_slots):
            chord_map[inst.chord_index[(min(a, b), max(a, b))]] = (
                0,
                f1.chord_index[(ai, bi)],
            )
    for ai in range(len(mid)):
        for bi in range(ai + 1, len(mid)):
            chord_map[inst.chord_index[(mid[ai], mid[bi])]] = (
                1,
                f2.chord_index[(ai, bi)],
            )
    blocks = (tuple(u_slots + w_slots), tuple(mid))
    return _ProductLayout(inst, (f1, f2), forced, chord_map, blocks)


def _bipartite_layout(
    a: SplittedBipartiteSequence,
    b: SplittedBipartiteSequence,
    fa: Optional[ForbiddenSet] = None,
    fb: Optional[ForbiddenSet] = None,
) -> _ProductLayout:
    directed = fa is not None or fb is not None
    fa = fa if fa is not None else ForbiddenSet()
    fb = fb if fb is not None else ForbiddenSet()
    if directed:
        composed, merged = compose_directed(a, fa, b, fb)
    else:
        composed = compose_bipartite(a, b)
        merged = ForbiddenSet()
    # Keep operand vertex order (no sorting) so forbidden sets line up.
    cu = composed.primary_degrees
    cw = composed.secondary_degrees
    inst = bipartite_instance(cu, cw, merged, use_c6=directed or None)
    f1 = bipartite_instance(a.primary_degrees, a.secondary_degrees, fa, directed or None)
    f2 = bipartite_instance(b.primary_degrees, b.secondary_degrees, fb, directed or None)
    forced = 0
    for i in range(a.nu):
        for j in range(b.nw):
            forced |= 1 << inst.chord_index[(i, a.nw + j)]
    chord_map = {}
    for (i, j), bit in inst.chord_index.items():
        if i < a.nu and j < a.nw:
            chord_map[bit] = (0, f1.chord_index[(i, j)])
        elif i >= a.nu and j >= a.nw:
            chord_map[bit] = (1, f2.chord_index[(i - a.nu, j - a.nw)])
    blocks = (
        tuple(("u", i) for i in range(a.nu)) + tuple(("w", j) for j in range(a.nw)),
        tuple(("u", a.nu + i) for i in range(b.nu))
        + tuple(("w", a.nw + j) for j in range(b.nw)),
    )
    return _ProductLayout(inst, (f1, f2), forced, chord_map, blocks)


def _project(layout: _ProductLayout, mask: int) -> Optional[Tuple[int, int]]:
    if mask & layout.forced_mask != layout.forced_mask:
        return None
    parts = [0, 0]
    rest = mask & ~layout.forced_mask
    bit = 0
    while rest:
        if rest & 1:
            got = layout.chord_map.get(bit)
            if got is None:
                return None
            coord, fbit = got
            parts[coord] |= 1 << fbit
        rest >>= 1
        bit += 1
    return parts[0], parts[1]


def verify_cartesian_product(
    factor1,
    factor2,
    forbidden1: Optional[ForbiddenSet] = None,
    forbidden2: Optional[ForbiddenSet] = None,
    max_chords: Optional[int] = None,
    check_weights: bool = True,
) -> dict:
    """Check that the composed realization graph is the Cartesian product of
    the factor realization graphs.

    Builds the explicit bijection (restriction to each factor after removing
    the forced composition edges), then verifies that realization counts
    multiply, that adjacency follows the product rule (moves change exactly
    one coordinate, by a move of that factor), and that transition weights
    are proportional coordinate-by-coordinate and kind-by-kind.  Returns a
    report dict; raises ProductMismatch with a counterexample otherwise.
    """
    if isinstance(factor1, SplitSequence):
        g = factor2 if isinstance(factor2, DegreeSequence) else DegreeSequence(factor2)
        layout = _simple_layout(factor1, g)
    else:
        layout = _bipartite_layout(factor1, factor2, forbidden1, forbidden2)

    composed_masks = _enumerate_masks(layout.composed, max_chords)
    s1 = _enumerate_masks(layout.factors[0], max_chords)
    s2 = _enumerate_masks(layout.factors[1], max_chords)
    if len(composed_masks) != len(s1) * len(s2):
        raise ProductMismatch(
            "realization counts do not multiply: %d != %d * %d"
            % (len(composed_masks), len(s1), len(s2)),
            witness={"counts": (len(composed_masks), len(s1), len(s2))},
        )
    s1_set, s2_set = set(s1), set(s2)
    seen = {}
    for mask in composed_masks:
        pair = _project(layout, mask)
        if pair is None:
            raise ProductMismatch(
                "realization does not restrict to the factors",
                witness={"mask": mask},
            )
        if pair in seen:
            raise ProductMismatch(
                "two realizations project to the same factor pair",
                witness={"pair": pair, "masks": (seen[pair], mask)},
            )
        if pair[0] not in s1_set or pair[1] not in s2_set:
            raise ProductMismatch(
                "projection is not a factor realization", witness={"pair": pair}
            )
        seen[pair] = mask

    ratio: Dict[Tuple[int, str], float] = {}
    edge_count = 0
    factor_edges = [set(), set()]
    for coord, space_masks, inst in ((0, s1, layout.factors[0]), (1, s2, layout.factors[1])):
        for m in space_masks:
            for nxt in inst.neighbors(m):
                factor_edges[coord].add((min(m, nxt), max(m, nxt)))
    for mask in composed_masks:
        x = _project(layout, mask)
        for nxt, w in layout.composed.weighted_neighbors(mask):
            edge_count += 1
            y = _project(layout, nxt)
            if y is None:
                raise ProductMismatch(
                    "move leaves the product structure", witness={"from": mask, "to": nxt}
                )
            changed = [c for c in (0, 1) if x[c] != y[c]]
            if len(changed) != 1:
                raise ProductMismatch(
                    "move changes both coordinates", witness={"from": x, "to": y}
                )
            c = changed[0]
            pair = (min(x[c], y[c]), max(x[c], y[c]))
            if pair not in factor_edges[c]:
                raise ProductMismatch(
                    "move is not a factor move", witness={"coord": c, "pair": pair}
                )
            if check_weights:
                fw = dict(layout.factors[c].weighted_neighbors(x[c])).get(y[c])
                if not fw:
                    raise ProductMismatch(
                        "factor kernel has no weight for the move",
                        witness={"coord": c, "pair": pair},
                    )
                kind = "C6" if bin((x[c] ^ y[c])).count("1") == 6 else "C4"
                key = (c, kind)
                r = w / fw
                if key in ratio and abs(ratio[key] - r) > 1e-12 * max(1.0, ratio[key]):
                    raise ProductMismatch(
                        "transition weights are not proportional",
                        witness={"key": key, "ratios": (ratio[key], r)},
                    )
                ratio[key] = r
    # Undirected product edge count: |V1||E2| + |V2||E1|.
    expected = 2 * (len(s1) * len(factor_edges[1]) + len(s2) * len(factor_edges[0]))
    if edge_count != expected:
        raise ProductMismatch(
            "edge counts do not match the product rule",
            witness={"directed_edges": edge_count, "expected": expected},
        )
    return {
        "ok": True,
        "composed_count": len(composed_masks),
        "factor_counts": (len(s1), len(s2)),
        "edges": edge_count // 2,
        "weight_ratios": {str(k): v for k, v in ratio.items()},
    }


# ---------------------------------------------------------------------------
# swap locality


def swap_locality_report(d, max_chords: Optional[int] = None) -> dict:
    """Exhaustively verify that every swap of every realization of ``d``
    touches vertices of exactly one canonical component (tail included)."""
    if isinstance(d, SplittedBipartiteSequence):
        from .decomposition import canonical_decompose_bipartite

        factors = canonical_decompose_bipartite(d)
        u, w = d.canonical()
        inst = bipartite_instance(u, w)
        blocks = []
        u_lo, w_hi = 0, len(w)
        for f in factors:
            blocks.append(
                tuple(("u", i) for i in range(u_lo, u_lo + f.nu))
                + tuple(("w", j) for j in range(w_hi - f.nw, w_hi))
            )
            u_lo += f.nu
            w_hi -= f.nw

        def vertices_of(edge):
            return (("u", edge[0]), ("w", edge[1]))

    else:
        d = d if isinstance(d, DegreeSequence) else DegreeSequence(d)
        cd = canonical_decompose(d)
        inst = simple_instance(d.sorted_degrees)
        blocks = []
        lo, hi = 0, d.n
        for comp in cd.components:
            blocks.append(
                tuple(range(lo, lo + comp.nu)) + tuple(range(hi - comp.nw, hi))
            )
            lo += comp.nu
            hi -= comp.nw
        if hi > lo:
            blocks.append(tuple(range(lo, hi)))

        def vertices_of(edge):
            return edge

    masks = _enumerate_masks(inst, max_chords)
    block_of = {}
    for bi, block in enumerate(blocks):
        for v in block:
            block_of[v] = bi
    checked = 0
    for mask in masks:
        for move in inst.moves(mask):
            touched = set()
            for e in move.removed + move.added:
                touched.update(vertices_of(e))
            owners = {block_of[v] for v in touched}
            if len(owners) != 1:
                raise ProductMismatch(
                    "swap crosses component boundaries",
                    witness={"move": move, "mask": mask},
                )
            checked += 1
    return {"ok": True, "realizations": len(masks), "swaps_checked": checked,
            "components": len(blocks)}


# ---------------------------------------------------------------------------
# total-variation audits


def tv_distance_audit(
    d,
    steps: int,
    seed: Optional[int] = None,
    f: Optional[ForbiddenSet] = None,
    max_chords: Optional[int] = None,
    use_c6: Optional[bool] = None,
    empirical: bool = False,
) -> float:
    """Total-variation distance to uniform on an enumerable instance.

    Exact mode: worst-start TV of the k-step kernel power.  Empirical mode
    (requires ``seed``): TV between the occupation frequencies of one
    ``steps``-long seeded trajectory and uniform.
    """
    space = realization_space(d, f, max_chords, use_c6)
    n = space.count
    if n == 0:
        raise NotGraphical("no realizations")
    if not empirical:
        p = space.transition_matrix()
        pk = np.linalg.matrix_power(p, steps)
        return float(0.5 * np.max(np.abs(pk - 1.0 / n).sum(axis=1)))
    from .chain import ChainState, step

    rng = random.Random(seed)
    state = ChainState(space.instance, space.masks[0], rng)
    idx = space.index()
    counts = np.zeros(n)
    for _ in range(steps):
        step(state)
        counts[idx[state.mask]] += 1
    freq = counts / steps
    return float(0.5 * np.abs(freq - 1.0 / n).sum())
