"""Shared brute-force oracles: exhaustive enumeration over all labeled graphs.

These deliberately avoid the library's own algorithms so the tests compare
two independent routes to the same answer.
"""

from itertools import combinations, combinations_with_replacement

import pytest


def all_simple_graphs(n):
    """Yield edge lists of all 2^C(n,2) labeled simple graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def brute_simple_degree_sequences(n):
    """Set of sorted degree tuples realized by some n-vertex graph."""
    out = set()
    for edges in all_simple_graphs(n):
        deg = [0] * n
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        out.add(tuple(sorted(deg, reverse=True)))
    return out


def all_bipartite_graphs(nu, nw, banned=()):
    banned = set(banned)
    pairs = [(i, j) for i in range(nu) for j in range(nw) if (i, j) not in banned]
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def bipartite_degrees(edges, nu, nw):
    du, dw = [0] * nu, [0] * nw
    for a, b in edges:
        du[a] += 1
        dw[b] += 1
    return tuple(du), tuple(dw)


def brute_bipartite_degree_sequences(nu, nw, banned=()):
    """Set of (sorted u, sorted w) pairs realized by some bipartite graph
    avoiding ``banned``."""
    out = set()
    for edges in all_bipartite_graphs(nu, nw, banned):
        du, dw = bipartite_degrees(edges, nu, nw)
        out.add((tuple(sorted(du, reverse=True)), tuple(sorted(dw, reverse=True))))
    return out


def brute_restricted_realizable(u, w, banned):
    """Does a bipartite graph with exact degrees (u, w) avoid ``banned``?
    Positional (unsorted) check."""
    for edges in all_bipartite_graphs(len(u), len(w), banned):
        if bipartite_degrees(edges, len(u), len(w)) == (tuple(u), tuple(w)):
            return True
    return False


def all_digraphs(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def brute_directed_realizable(out_deg, in_deg):
    n = len(out_deg)
    for arcs in all_digraphs(n):
        do, di = [0] * n, [0] * n
        for a, b in arcs:
            do[a] += 1
            di[b] += 1
        if tuple(do) == tuple(out_deg) and tuple(di) == tuple(in_deg):
            return True
    return False


def nonincreasing_sequences(length, cap):
    return [
        tuple(sorted(c, reverse=True))
        for c in combinations_with_replacement(range(cap + 1), length)
    ]


@pytest.fixture(scope="session")
def graphical_simple_by_n():
    """Brute-force graphical sets for n <= 6 (oracle for Erdos-Gallai)."""
    return {n: brute_simple_degree_sequences(n) for n in range(1, 7)}
