"""Lazy swap Markov chains and the factorized product chain.

``sample`` is the front door: it factorizes the target sequence through the
canonical decomposition, runs one lazy swap chain per indecomposable factor
(each over its own small realization space), and reassembles full labeled
realizations by materializing the forced composition edges — the clique
inside each primary class and the complete join from a primary class to
everything to its right.  Those forced edges never participate in swaps, so
the product of the factor chains walks exactly the realization space of the
composed sequence.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .decomposition import (
    SplittedBipartiteSequence,
    canonical_decompose,
    canonical_decompose_bipartite,
    psi,
)
from .errors import NotGraphical
from .graphs import Instance, bipartite_instance, directed_instance, simple_instance
from .sequences import (
    BipartiteDegreeSequence,
    DegreeSequence,
    DirectedDegreeSequence,
    ForbiddenSet,
    erdos_gallai,
    gale_ryser,
    realize,
    realize_bipartite,
    restricted_bipartite_graphical,
)

__all__ = [
    "ChainState",
    "ProductChain",
    "step",
    "product_step",
    "sample",
    "derive_seed",
    "build_product_chain",
]


def derive_seed(master: int, index: int) -> int:
    """Counter-based child seed: sha256("degmix:<master>:<index>") first 8 bytes."""
    digest = hashlib.sha256(b"degmix:%d:%d" % (master, index)).digest()
    return int.from_bytes(digest[:8], "big")


class ChainState:
    """One swap chain: current realization, RNG stream, and step counter."""

    def __init__(self, instance: Instance, mask: int, rng: random.Random):
        self.instance = instance
        self.mask = mask
        self.rng = rng
        self.step_count = 0
        self.edge_ids: List[int] = [
            i for i in range(len(instance.chords)) if mask >> i & 1
        ]
        self._pos = {e: i for i, e in enumerate(self.edge_ids)}

    @property
    def graph(self):
        return self.instance.graph_of_mask(self.mask)

    def _apply(self, removed_ids: Sequence[int], added_ids: Sequence[int]) -> None:
        for e in removed_ids:
            i = self._pos.pop(e)
            last = self.edge_ids.pop()
            if last != e:  # swap-with-last removal
                self.edge_ids[i] = last
                self._pos[last] = i
        for e in added_ids:
            self._pos[e] = len(self.edge_ids)
            self.edge_ids.append(e)
            self.mask |= 1 << e
        for e in removed_ids:
            self.mask &= ~(1 << e)


def _try_c4(state: ChainState) -> None:
    inst = state.instance
    if inst.disjoint_pairs == 0 or len(state.edge_ids) < 2:
        return
    rng = state.rng
    while True:  # uniform over vertex-disjoint pairs, by rejection
        i, j = rng.sample(state.edge_ids, 2)
        e1, e2 = inst.chords[i], inst.chords[j]
        if e1[0] == e2[0] or e1[1] == e2[1]:
            continue
        if inst.kind == "simple" and (e1[0] == e2[1] or e1[1] == e2[0]):
            continue
        break
    pick = rng.randrange(inst.matchings)
    if pick == 0:
        return  # drew the current matching
    alts = inst._alts(e1, e2)
    if pick - 1 >= len(alts):
        return  # target pair is not all chords
    f1, f2 = alts[pick - 1]
    a1, a2 = inst.chord_index[f1], inst.chord_index[f2]
    if state.mask >> a1 & 1 or state.mask >> a2 & 1:
        return  # would create a multi-edge
    state._apply((i, j), (a1, a2))


def _try_c6(state: ChainState) -> None:
    inst = state.instance
    if len(state.edge_ids) < 3:
        return
    rng = state.rng
    ids = rng.sample(state.edge_ids, 3)  # ordered triple
    triple = tuple(inst.chords[i] for i in ids)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if triple[a][0] == triple[b][0] or triple[a][1] == triple[b][1]:
            return
    targets = inst._hexagon(triple)
    if targets is None:
        return
    add = [inst.chord_index[t] for t in targets]
    if any(state.mask >> a & 1 for a in add):
        return
    state._apply(ids, add)


def step(state: ChainState) -> ChainState:
    """One lazy transition in place; returns the state for chaining."""
    rng = state.rng
    state.step_count += 1
    if rng.random() < 0.5:
        return state  # lazy half
    if state.instance.use_c6:
        if rng.random() < 0.5:
            _try_c4(state)
        else:
            _try_c6(state)
    else:
        _try_c4(state)
    return state


@dataclass
class ProductChain:
    """Independent coordinate chains advanced one uniformly chosen at a time."""

    coordinates: List[ChainState]
    rng: random.Random
    step_count: int = 0

    def masks(self) -> Tuple[int, ...]:
        return tuple(c.mask for c in self.coordinates)


def product_step(chain: ProductChain) -> ProductChain:
    i = chain.rng.randrange(len(chain.coordinates))
    step(chain.coordinates[i])
    chain.step_count += 1
    return chain


# ---------------------------------------------------------------------------
# sampling plans: factorization + reassembly bookkeeping


@dataclass
class _Plan:
    kind: str
    instances: List[Instance]
    assemble_meta: dict = field(default_factory=dict)

    def start_masks(self) -> List[int]:
        out = []
        for inst in self.instances:
            if inst.kind == "simple":
                edges = realize(inst.degrees)
            else:
                edges = realize_bipartite(
                    (inst.u_degrees, inst.w_degrees), inst.forbidden
                )
            out.append(inst.mask_of_edges(edges))
        return out


def _simple_plan(d: DegreeSequence, factorize: bool) -> _Plan:
    if not erdos_gallai(d):
        raise NotGraphical("sequence is not graphical: %r" % (d.degrees,))
    if not factorize:
        return _Plan("simple", [simple_instance(d.degrees)], {"single": True})
    cd = canonical_decompose(d)
    instances = []
    blocks = []  # (u_slots, w_slots, middle_slots) per component, sorted order
    lo, hi = 0, d.n
    for comp in cd.components:
        sb = psi(comp)
        u, w = sb.canonical()
        instances.append(bipartite_instance(u, w))
        p, q = len(u), len(w)
        blocks.append((list(range(lo, lo + p)), list(range(hi - q, hi)), (lo + p, hi - q)))
        lo += p
        hi -= q
    tail_slots = list(range(lo, hi))
    if cd.tail is not None and cd.tail.n:
        instances.append(simple_instance(cd.tail.sorted_degrees))
    meta = {
        "blocks": blocks,
        "tail_slots": tail_slots,
        "order": d.order,
        "has_tail": cd.tail is not None and cd.tail.n > 0,
    }
    return _Plan("simple", instances, meta)


def _assemble_simple(plan: _Plan, masks: Sequence[int]) -> List[Tuple[int, int]]:
    if plan.assemble_meta.get("single"):
        inst = plan.instances[0]
        return sorted(inst.edges_of_mask(masks[0]))
    meta = plan.assemble_meta
    order = meta["order"]
    edges = set()

    def add(a: int, b: int) -> None:
        x, y = order[a], order[b]
        edges.add((min(x, y), max(x, y)))

    for k, (u_slots, w_slots, (mid_lo, mid_hi)) in enumerate(meta["blocks"]):
        inst = plan.instances[k]
        for a, b in inst.edges_of_mask(masks[k]):
            add(u_slots[a], w_slots[b])
        for i, a in enumerate(u_slots):  # forced: clique plus the full join right
            for b in u_slots[i + 1:]:
                add(a, b)
            for b in range(mid_lo, mid_hi):
                add(a, b)
    if meta["has_tail"]:
        inst = plan.instances[-1]
        tail_slots = meta["tail_slots"]
        for a, b in inst.edges_of_mask(masks[-1]):
            add(tail_slots[a], tail_slots[b])
    return sorted(edges)


def _class_order(values: Sequence[int]) -> List[int]:
    return [i for i, _ in sorted(enumerate(values), key=lambda t: (-t[1], t[0]))]


def _bipartite_plan(
    bd: BipartiteDegreeSequence, forbidden: Optional[ForbiddenSet], factorize: bool
) -> _Plan:
    if forbidden is not None and len(forbidden):
        if not restricted_bipartite_graphical(bd, forbidden):
            raise NotGraphical("no realization avoids the forbidden set")
        inst = bipartite_instance(bd.u_degrees, bd.w_degrees, forbidden)
        return _Plan("bipartite", [inst], {"single": True})
    if not gale_ryser(bd):
        raise NotGraphical("sequence is not graphical")
    if not factorize:
        return _Plan(
            "bipartite",
            [bipartite_instance(bd.u_degrees, bd.w_degrees)],
            {"single": True},
        )
    sb = SplittedBipartiteSequence(bd.u_degrees, bd.w_degrees)
    factors = canonical_decompose_bipartite(sb)
    instances = []
    blocks = []
    u_lo, w_hi = 0, bd.nw
    for f in factors:
        u, w = f.canonical()
        instances.append(bipartite_instance(u, w))
        p, q = len(u), len(w)
        blocks.append(
            (list(range(u_lo, u_lo + p)), list(range(w_hi - q, w_hi)), w_hi - q)
        )
        u_lo += p
        w_hi -= q
    meta = {
        "blocks": blocks,
        "u_order": _class_order(bd.u_degrees),
        "w_order": _class_order(bd.w_degrees),
    }
    return _Plan("bipartite", instances, meta)


def _assemble_bipartite(plan: _Plan, masks: Sequence[int]) -> List[Tuple[int, int]]:
    if plan.assemble_meta.get("single"):
        inst = plan.instances[0]
        return sorted(inst.edges_of_mask(masks[0]))
    meta = plan.assemble_meta
    u_order, w_order = meta["u_order"], meta["w_order"]
    edges = set()
    for k, (u_slots, w_slots, sec_above) in enumerate(meta["blocks"]):
        inst = plan.instances[k]
        for a, b in inst.edges_of_mask(masks[k]):
            edges.add((u_order[u_slots[a]], w_order[w_slots[b]]))
        for a in u_slots:  # forced join to every later factor's secondary class
            for b in range(sec_above):
                edges.add((u_order[a], w_order[b]))
    return sorted(edges)


def build_product_chain(plan: _Plan, seed: int, stream: int = 0) -> ProductChain:
    """Seed a product chain: child seed 0 drives coordinate selection, child
    seed i >= 1 drives coordinate i."""
    base = derive_seed(seed, stream)
    masks = plan.start_masks()
    coords = [
        ChainState(inst, mask, random.Random(derive_seed(base, i + 1)))
        for i, (inst, mask) in enumerate(zip(plan.instances, masks))
    ]
    return ProductChain(coords, random.Random(derive_seed(base, 0)))


def _make_plan(d, forbidden: Optional[ForbiddenSet], factorize: str) -> _Plan:
    do_factor = factorize != "off"
    if isinstance(d, DirectedDegreeSequence):
        bd, f = d.gale_representation()
        if not restricted_bipartite_graphical(bd, f):
            raise NotGraphical("directed sequence is not graphical")
        # No factorization path for directed input: the composition theory
        # builds directed classes from given factors, it does not factor an
        # arbitrary forbidden-1-factor instance.
        return _Plan("directed", [directed_instance(d)], {"single": True})
    if isinstance(d, BipartiteDegreeSequence):
        return _bipartite_plan(d, forbidden, do_factor)
    if not isinstance(d, DegreeSequence):
        d = DegreeSequence(d)
    if forbidden is not None and len(forbidden):
        raise ValueError("forbidden sets apply to bipartite/directed sequences")
    return _simple_plan(d, do_factor)


def _assemble(plan: _Plan, masks: Sequence[int]) -> List[Tuple[int, int]]:
    if plan.kind == "simple":
        return _assemble_simple(plan, masks)
    return _assemble_bipartite(plan, masks)  # bipartite and directed alike


def _sample_stream(plan: _Plan, seed: int, stream: int, quota: int, burn_in: int, thin: int):
    pc = build_product_chain(plan, seed, stream=stream)
    for _ in range(burn_in):
        product_step(pc)
    out = []
    for _ in range(quota):
        for _ in range(thin):
            product_step(pc)
        out.append(_assemble(plan, pc.masks()))
    return out


def _sample_stream_job(args):
    return _sample_stream(*args)


def sample(
    d,
    burn_in: int,
    thin: int,
    count: int,
    seed: int,
    factorize: str = "auto",
    forbidden: Optional[ForbiddenSet] = None,
    chains: Optional[int] = None,
    jobs: int = 1,
):
    """Draw ``count`` realizations of ``d``.

    Returns a list of sorted edge lists: (i, j) pairs for simple sequences,
    (u, w) class pairs for bipartite ones, (tail, head) arcs for directed
    ones, all in the caller's vertex order.  The stream is split over
    min(count, 8) logical chains (overridable via ``chains``) seeded from
    ``seed`` by counter derivation; ``jobs`` only schedules those chains onto
    workers, so output is identical and deterministically ordered for any
    ``jobs``.
    """
    if count <= 0:
        return []
    if thin < 1:
        raise ValueError("thin must be >= 1")
    plan = _make_plan(d, forbidden, factorize)
    if not plan.instances:  # empty vertex set
        return [[] for _ in range(count)]
    n_chains = min(count, 8) if chains is None else max(1, min(chains, count))
    per = [count // n_chains] * n_chains
    for i in range(count % n_chains):
        per[i] += 1
    tasks = [(plan, seed, c, quota, burn_in, thin) for c, quota in enumerate(per)]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            chunks = list(pool.map(_sample_stream_job, tasks))
    else:
        chunks = [_sample_stream(*t) for t in tasks]
    return [edges for chunk in chunks for edges in chunk]
