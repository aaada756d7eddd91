"""Degree spectra matrices and the spectra-preserving restricted chain.

The degree spectrum of a vertex counts its neighbors by their degree; the
matrix of all spectra splits a graph into edge-disjoint component graphs, one
per unordered pair of degree classes.  Swaps inside a component change no
spectrum, and every spectrum-preserving swap lives inside a component, so a
product chain over the components samples realizations of a fixed matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .chain import ChainState, derive_seed, product_step, ProductChain
from .errors import InconsistentMatrix, NotGraphical
from .graphs import Instance, LabeledGraph, bipartite_instance, simple_instance
from .sequences import (
    erdos_gallai,
    gale_ryser,
    realize,
    realize_bipartite,
)

__all__ = [
    "DegreeSpectraMatrix",
    "ComponentSequence",
    "degree_spectra",
    "component_sequences",
    "dsm_graphical",
    "dsm_witness",
    "joint_degree_view",
    "build_dsm_chain",
    "dsm_chain_step",
    "dsm_sample",
]


@dataclass(frozen=True)
class DegreeSpectraMatrix:
    """Per-vertex neighbor counts by neighbor degree.

    ``columns[v][i-1]`` is the number of degree-i neighbors of vertex v; all
    columns have length ``delta``.  The degree of v is its column sum.
    """

    delta: int
    columns: Tuple[Tuple[int, ...], ...]

    def __init__(self, delta: int, columns: Iterable[Iterable[int]]):
        cols = tuple(tuple(int(x) for x in col) for col in columns)
        if any(len(col) != delta for col in cols):
            raise InconsistentMatrix("every column must have length delta")
        if any(x < 0 for col in cols for x in col):
            raise InconsistentMatrix("negative neighbor count")
        object.__setattr__(self, "delta", int(delta))
        object.__setattr__(self, "columns", cols)

    @property
    def n(self) -> int:
        return len(self.columns)

    def implied_degrees(self) -> Tuple[int, ...]:
        return tuple(sum(col) for col in self.columns)

    def degree_classes(self) -> Dict[int, Tuple[int, ...]]:
        """Vertices grouped by implied degree (zero-degree class excluded)."""
        classes: Dict[int, List[int]] = {}
        for v, d in enumerate(self.implied_degrees()):
            if d > 0:
                classes.setdefault(d, []).append(v)
        return {d: tuple(vs) for d, vs in classes.items()}


@dataclass(frozen=True)
class ComponentSequence:
    """Degree sequence of one class-pair component: bipartite between the
    degree-i and degree-j classes for i != j, simple inside the class for
    i == j.  Vertex tuples give the global ids behind each position."""

    i: int
    j: int
    u_vertices: Tuple[int, ...]
    w_vertices: Tuple[int, ...]
    u_degrees: Tuple[int, ...]
    w_degrees: Tuple[int, ...]

    @property
    def is_simple(self) -> bool:
        return self.i == self.j

    def is_graphical(self) -> bool:
        if self.is_simple:
            return erdos_gallai(self.u_degrees)
        return gale_ryser((self.u_degrees, self.w_degrees))


def degree_spectra(g: LabeledGraph) -> DegreeSpectraMatrix:
    """Exact spectra matrix of a simple graph; column sums recount degrees."""
    deg = g.degrees()
    delta = max(deg, default=0)
    cols = [[0] * delta for _ in range(g.n)]
    for a, b in g.edges:
        cols[a][deg[b] - 1] += 1
        cols[b][deg[a] - 1] += 1
    return DegreeSpectraMatrix(delta, cols)


def _validate(m: DegreeSpectraMatrix) -> None:
    degrees = m.implied_degrees()
    for v, d in enumerate(degrees):
        if d > m.delta:
            raise InconsistentMatrix("vertex %d has degree %d > delta" % (v, d))
    classes = m.degree_classes()
    for v, col in enumerate(m.columns):
        for i, cnt in enumerate(col, start=1):
            if cnt and i not in classes:
                raise InconsistentMatrix(
                    "vertex %d claims degree-%d neighbors but that class is empty"
                    % (v, i)
                )
    for i, vi in classes.items():
        for j, vj in classes.items():
            if i < j:
                if sum(m.columns[v][j - 1] for v in vi) != sum(
                    m.columns[u][i - 1] for u in vj
                ):
                    raise InconsistentMatrix(
                        "stub totals between classes %d and %d differ" % (i, j)
                    )
        if sum(m.columns[v][i - 1] for v in vi) % 2:
            raise InconsistentMatrix("odd stub total inside class %d" % i)


def component_sequences(m: DegreeSpectraMatrix) -> List[ComponentSequence]:
    """One component per unordered class pair with nonzero interaction."""
    _validate(m)
    classes = m.degree_classes()
    values = sorted(classes)
    out: List[ComponentSequence] = []
    for ai, i in enumerate(values):
        vi = classes[i]
        inner = tuple(m.columns[v][i - 1] for v in vi)
        if any(inner):
            out.append(ComponentSequence(i, i, vi, vi, inner, inner))
        for j in values[ai + 1:]:
            vj = classes[j]
            iu = tuple(m.columns[v][j - 1] for v in vi)
            iw = tuple(m.columns[u][i - 1] for u in vj)
            if any(iu) or any(iw):
                out.append(ComponentSequence(i, j, vi, vj, iu, iw))
    return out


def dsm_graphical(m: DegreeSpectraMatrix) -> bool:
    """True iff the matrix is structurally consistent and every component
    sequence is graphical."""
    try:
        comps = component_sequences(m)
    except InconsistentMatrix:
        return False
    return all(c.is_graphical() for c in comps)


def _component_edges(c: ComponentSequence) -> List[Tuple[int, int]]:
    if c.is_simple:
        local = realize(c.u_degrees)
        return [(c.u_vertices[a], c.u_vertices[b]) for a, b in local]
    local = realize_bipartite((c.u_degrees, c.w_degrees))
    return [(c.u_vertices[a], c.w_vertices[b]) for a, b in local]


def dsm_witness(m: DegreeSpectraMatrix) -> LabeledGraph:
    """A realization of the matrix: components realized independently and
    unioned (they are edge-disjoint by construction)."""
    if not dsm_graphical(m):
        raise NotGraphical("degree spectra matrix is not graphical")
    edges: List[Tuple[int, int]] = []
    for c in component_sequences(m):
        edges.extend(_component_edges(c))
    return LabeledGraph(m.n, edges)


def joint_degree_view(m: DegreeSpectraMatrix) -> Dict[Tuple[int, int], int]:
    """Derived joint degree matrix: edge counts between degree classes."""
    classes = m.degree_classes()
    out: Dict[Tuple[int, int], int] = {}
    for i, vi in classes.items():
        for j in classes:
            if i < j:
                cnt = sum(m.columns[v][j - 1] for v in vi)
                if cnt:
                    out[(i, j)] = cnt
        inner = sum(m.columns[v][i - 1] for v in vi)
        if inner:
            out[(i, i)] = inner // 2
    return out


@dataclass
class DsmChain:
    matrix: DegreeSpectraMatrix
    components: List[ComponentSequence]
    product: ProductChain

    def current_graph(self) -> LabeledGraph:
        edges: List[Tuple[int, int]] = []
        for c, state in zip(self.components, self.product.coordinates):
            inst = state.instance
            for a, b in inst.edges_of_mask(state.mask):
                if c.is_simple:
                    edges.append((c.u_vertices[a], c.u_vertices[b]))
                else:
                    edges.append((c.u_vertices[a], c.w_vertices[b]))
        return LabeledGraph(self.matrix.n, edges)


def build_dsm_chain(m: DegreeSpectraMatrix, seed: int) -> DsmChain:
    """Product chain over the component realization spaces; per-component
    seeds derive from the master seed by counter."""
    if not dsm_graphical(m):
        raise NotGraphical("degree spectra matrix is not graphical")
    comps = component_sequences(m)
    coords = []
    for k, c in enumerate(comps):
        inst: Instance
        if c.is_simple:
            inst = simple_instance(c.u_degrees)
            start = inst.mask_of_edges(realize(c.u_degrees))
        else:
            inst = bipartite_instance(c.u_degrees, c.w_degrees)
            start = inst.mask_of_edges(realize_bipartite((c.u_degrees, c.w_degrees)))
        coords.append(ChainState(inst, start, random.Random(derive_seed(seed, k + 1))))
    if not coords:  # empty graph: a frozen single-state chain
        inst = simple_instance(())
        coords = [ChainState(inst, 0, random.Random(derive_seed(seed, 1)))]
        comps = []
    return DsmChain(m, comps, ProductChain(coords, random.Random(derive_seed(seed, 0))))


def dsm_chain_step(chain: DsmChain) -> DsmChain:
    """One product-chain step; the spectra matrix is invariant bit for bit."""
    product_step(chain.product)
    return chain


def dsm_sample(
    m: DegreeSpectraMatrix, burn_in: int, thin: int, count: int, seed: int
) -> List[LabeledGraph]:
    """Realizations whose recomputed spectra matrix equals ``m`` exactly."""
    chain = build_dsm_chain(m, seed)
    for _ in range(burn_in):
        dsm_chain_step(chain)
    out = []
    for _ in range(count):
        for _ in range(max(1, thin)):
            dsm_chain_step(chain)
        out.append(chain.current_graph())
    return out
