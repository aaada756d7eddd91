"""Verification engine: enumeration, spectra, products, locality, TV."""

import math
import random

import numpy as np
import pytest

from degmix import (
    BipartiteDegreeSequence,
    DegreeSequence,
    DirectedDegreeSequence,
    Disconnected,
    ForbiddenSet,
    ProductMismatch,
    SplitSequence,
    SplittedBipartiteSequence,
    TooLarge,
    build_realization_graph,
    compose_bipartite,
    enumerate_realizations,
    realization_space,
    spectral_report,
    swap_locality_report,
    tv_distance_audit,
    verify_cartesian_product,
)
from degmix.chain import ChainState, step
from degmix.space import _exact_conductance


def test_enumerate_counts():
    assert len(enumerate_realizations(DegreeSequence((1, 1, 1, 1)))) == 3
    assert len(enumerate_realizations(BipartiteDegreeSequence((1, 1), (1, 1)))) == 2
    assert len(enumerate_realizations(DegreeSequence((4, 2, 2, 1, 1)))) == 1
    # 3x3 0-1 matrices with all margins 2 = complements of permutation matrices
    assert len(enumerate_realizations(BipartiteDegreeSequence((2, 2, 2), (2, 2, 2)))) == 6


def test_enumerate_respects_cap():
    with pytest.raises(TooLarge):
        enumerate_realizations(BipartiteDegreeSequence((1,) * 5, (1,) * 5))
    assert len(enumerate_realizations(
        BipartiteDegreeSequence((1,) * 5, (1,) * 5), max_chords=25)) == 120


def test_enumerate_env_cap(monkeypatch):
    monkeypatch.setenv("DEGMIX_MAX_CHORDS", "25")
    assert len(enumerate_realizations(BipartiteDegreeSequence((1,) * 5, (1,) * 5))) == 120


def test_realization_graph_triangle():
    rg = build_realization_graph(DegreeSequence((1, 1, 1, 1)))
    assert rg.count == 3
    assert rg.edges == ((0, 1), (0, 2), (1, 2))
    assert np.allclose(np.diag(rg.transition_matrix), 2 / 3)


def test_directed_triangle_connectivity():
    dd = DirectedDegreeSequence((1, 1, 1), (1, 1, 1))
    rg_c4 = build_realization_graph(dd, use_c6=False)
    assert rg_c4.count == 2 and rg_c4.edges == ()
    rg_c6 = build_realization_graph(dd, use_c6=True)
    assert rg_c6.connected()
    with pytest.raises(Disconnected):
        spectral_report(rg_c4)


def test_spectral_two_state_analytic():
    # ((2,2,1),(3,1,1)): 2 realizations, one swap among 5 disjoint pairs,
    # move probability 1/2 * 1/5 * 1/2 = 1/20, so lambda2 = 1 - 2/20 = 0.9
    rg = build_realization_graph(BipartiteDegreeSequence((2, 2, 1), (3, 1, 1)))
    rep = spectral_report(rg)
    assert abs(rep.lambda2 - 0.9) < 1e-12
    assert abs(rep.relaxation_time - 10.0) < 1e-9
    assert rep.conductance_exact
    assert abs(rep.conductance - 1 / 20) < 1e-12


def test_spectral_trivial_chain_flagged():
    rg = build_realization_graph(DegreeSequence((4, 2, 2, 1, 1)))
    rep = spectral_report(rg)
    assert rep.trivial and rep.lambda2 == 0.0 and rep.realization_count == 1


def test_cheeger_sandwich_small_bipartite():
    for seq in (
        BipartiteDegreeSequence((2, 2, 2), (2, 2, 2)),
        BipartiteDegreeSequence((2, 1, 1), (2, 1, 1)),
        DegreeSequence((2, 2, 2, 1, 1)),
    ):
        rep = spectral_report(build_realization_graph(seq))
        gap = 1.0 - rep.lambda2
        assert rep.conductance ** 2 / 2 <= gap + 1e-9
        assert gap <= 2 * rep.conductance + 1e-9
        assert rep.relaxation_time < math.inf


def test_exact_conductance_two_state():
    p = np.array([[0.75, 0.25], [0.25, 0.75]])
    assert abs(_exact_conductance(p) - 0.25) < 1e-12


def test_sweep_conductance_used_beyond_cap():
    # 26 realizations > 20: conductance falls back to the sweep bound
    rg = build_realization_graph(BipartiteDegreeSequence((2, 2, 2, 1), (3, 2, 1, 1)))
    if rg.count <= 20:
        pytest.skip("instance smaller than expected")
    rep = spectral_report(rg)
    assert not rep.conductance_exact
    gap = 1.0 - rep.lambda2
    assert rep.conductance ** 2 / 2 <= gap + 1e-9
    assert gap <= 2 * rep.conductance + 1e-9


# ---------------------------------------------------------------------------
# Cartesian products


def test_product_simple_composition():
    rep = verify_cartesian_product(
        SplitSequence((2, 2), (1, 1)), DegreeSequence((1, 1, 1, 1)), max_chords=28
    )
    assert rep["ok"] and rep["composed_count"] == 6
    assert rep["factor_counts"] == (2, 3)


def test_product_bipartite_composition():
    a = SplittedBipartiteSequence((1, 1), (1, 1))
    b = SplittedBipartiteSequence((3, 1, 1), (2, 2, 1))
    rep = verify_cartesian_product(a, b, max_chords=25)
    assert rep["ok"] and rep["composed_count"] == 4
    # |E| = |V1||E2| + |V2||E1|
    assert rep["edges"] == 2 * 1 + 2 * 1


def test_product_identity_factor():
    # a rigid factor: the product graph is isomorphic to the live factor's
    a = SplittedBipartiteSequence((1, 1), (1, 1))
    rigid = SplittedBipartiteSequence((2, 2), (2, 2))  # complete 2x2, unique
    rep = verify_cartesian_product(a, rigid, max_chords=25)
    assert rep["factor_counts"] == (2, 1) and rep["composed_count"] == 2
    assert rep["edges"] == 1


def test_product_directed_with_merged_one_factor():
    d = SplittedBipartiteSequence((1, 1), (1, 1))
    diag = ForbiddenSet([(0, 0), (1, 1)])
    d3 = SplittedBipartiteSequence((1, 1, 1), (1, 1, 1))
    diag3 = ForbiddenSet([(0, 0), (1, 1), (2, 2)])
    rep = verify_cartesian_product(d3, d3, forbidden1=diag3, forbidden2=diag3,
                                   max_chords=30)
    assert rep["ok"] and rep["composed_count"] == 4
    rep2 = verify_cartesian_product(d, d3, forbidden1=diag, forbidden2=diag3,
                                    max_chords=30)
    assert rep2["ok"] and rep2["factor_counts"] == (1, 2)


def test_product_mismatch_carries_witness():
    err = ProductMismatch("boom", witness={"pair": (1, 2)})
    assert err.witness == {"pair": (1, 2)}
    with pytest.raises(ProductMismatch):
        raise err


# ---------------------------------------------------------------------------
# locality


def test_swap_locality_simple_and_bipartite():
    rep = swap_locality_report(DegreeSequence((6, 6, 4, 4, 3, 3, 1, 1)), max_chords=28)
    assert rep["ok"] and rep["components"] >= 2 and rep["swaps_checked"] > 0
    a = SplittedBipartiteSequence((1, 1), (1, 1))
    b = SplittedBipartiteSequence((3, 1, 1), (2, 2, 1))
    rep2 = swap_locality_report(compose_bipartite(a, b), max_chords=25)
    assert rep2["ok"] and rep2["components"] == 3 and rep2["swaps_checked"] > 0


# ---------------------------------------------------------------------------
# total variation


def test_directed_connected_with_c6_up_to_four_vertices():
    # every graphical directed bi-sequence on n <= 4 vertices (canonical
    # vertex order) has a connected realization graph under C4 + C6 swaps
    from itertools import combinations_with_replacement

    from degmix import directed_graphical

    checked = 0
    for n in (2, 3, 4):
        vals = [(o, i) for o in range(n) for i in range(n)]
        for combo in combinations_with_replacement(vals, n):
            out_deg = tuple(x for x, _ in combo)
            in_deg = tuple(x for _, x in combo)
            if sum(out_deg) != sum(in_deg):
                continue
            dd = DirectedDegreeSequence(out_deg, in_deg)
            if not directed_graphical(dd):
                continue
            checked += 1
            assert realization_space(dd, use_c6=True).connected(), (out_deg, in_deg)
    assert checked == 189


def test_tv_step_zero_is_one_minus_inverse():
    tv = tv_distance_audit(DegreeSequence((1, 1, 1, 1)), 0)
    assert abs(tv - (1 - 1 / 3)) < 1e-12


def test_tv_kernel_power_mixes():
    assert tv_distance_audit(DegreeSequence((1, 1, 1, 1)), 100) < 1e-6
    assert tv_distance_audit(BipartiteDegreeSequence((2, 2, 1), (3, 1, 1)), 200) < 1e-6


def test_tv_disconnected_stays_away_from_zero():
    dd = DirectedDegreeSequence((1, 1, 1), (1, 1, 1))
    for steps in (10, 100, 1000):
        assert tv_distance_audit(dd, steps, use_c6=False) >= 0.5 - 1e-12


def test_tv_empirical():
    tv = tv_distance_audit(DegreeSequence((1, 1, 1, 1)), 50000, seed=0, empirical=True)
    assert tv < 0.02


def test_empirical_kernel_matches_exact_three_sigma():
    # transition frequencies along one long run vs the exact kernel rows
    space = realization_space(DegreeSequence((1, 1, 1, 1)))
    p = space.transition_matrix()
    idx = space.index()
    state = ChainState(space.instance, space.masks[0], random.Random(99))
    steps = 1000000
    trans = np.zeros((3, 3))
    prev = idx[state.mask]
    for _ in range(steps):
        step(state)
        cur = idx[state.mask]
        trans[prev, cur] += 1
        prev = cur
    visits = trans.sum(axis=1)
    for i in range(3):
        for j in range(3):
            mean = visits[i] * p[i, j]
            sd = math.sqrt(visits[i] * p[i, j] * (1 - p[i, j]))
            assert abs(trans[i, j] - mean) <= 3 * sd + 1e-9, (i, j)
