"""Degree spectra matrices: extraction, graphicality, witnesses, sampling."""

import pytest

from degmix import (
    DegreeSpectraMatrix,
    InconsistentMatrix,
    LabeledGraph,
    NotGraphical,
    build_dsm_chain,
    component_sequences,
    degree_spectra,
    dsm_chain_step,
    dsm_graphical,
    dsm_sample,
    dsm_witness,
    joint_degree_view,
)

from conftest import all_simple_graphs


TRIANGLE = LabeledGraph(3, [(0, 1), (0, 2), (1, 2)])
STAR = LabeledGraph(4, [(0, 1), (0, 2), (0, 3)])
PATH3 = LabeledGraph(3, [(0, 1), (1, 2)])  # center vertex 1


def test_degree_spectra_examples():
    m = degree_spectra(TRIANGLE)
    assert m.delta == 2 and all(col == (0, 2) for col in m.columns)

    m = degree_spectra(STAR)
    assert m.columns[0] == (3, 0, 0)  # center: three degree-1 neighbors
    assert all(m.columns[v] == (0, 0, 1) for v in (1, 2, 3))

    m = degree_spectra(PATH3)
    assert m.columns[1] == (2, 0)  # center: two degree-1 neighbors
    assert m.columns[0] == (0, 1) and m.columns[2] == (0, 1)


def test_column_sums_reproduce_degrees():
    for g in (TRIANGLE, STAR, PATH3, LabeledGraph(5, [(0, 1), (2, 3)])):
        assert degree_spectra(g).implied_degrees() == g.degrees()


def test_component_sequences_examples():
    comps = component_sequences(degree_spectra(TRIANGLE))
    assert len(comps) == 1
    c = comps[0]
    assert c.is_simple and (c.i, c.j) == (2, 2) and c.u_degrees == (2, 2, 2)

    comps = component_sequences(degree_spectra(STAR))
    assert len(comps) == 1
    c = comps[0]
    assert not c.is_simple and (c.i, c.j) == (1, 3)
    assert c.u_degrees == (1, 1, 1) and c.w_degrees == (3,)

    # empty graph: no components at all
    assert component_sequences(degree_spectra(LabeledGraph(3, []))) == []


def test_dsm_graphical_round_trip_small():
    for n in range(1, 6):
        for edges in all_simple_graphs(n):
            assert dsm_graphical(degree_spectra(LabeledGraph(n, edges)))


def test_dsm_graphical_rejects_perturbed():
    m = degree_spectra(TRIANGLE)
    cols = [list(c) for c in m.columns]
    cols[0][1] += 1  # one column sum bumped
    assert not dsm_graphical(DegreeSpectraMatrix(m.delta, cols))


def test_component_sequences_rejects_inconsistent():
    # vertex 0 claims a degree-2 neighbor, but no vertex has degree 2
    with pytest.raises(InconsistentMatrix):
        component_sequences(DegreeSpectraMatrix(2, [(0, 1), (1, 0), (1, 0)]))
    # stub totals between classes differ
    with pytest.raises(InconsistentMatrix):
        component_sequences(DegreeSpectraMatrix(3, [(0, 0, 1), (0, 0, 0), (0, 0, 0),
                                                    (1, 1, 1)]))


def test_witness_realizes_matrix():
    for g in (TRIANGLE, STAR, PATH3, LabeledGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4)])):
        m = degree_spectra(g)
        w = dsm_witness(m)
        assert degree_spectra(w) == m


def test_witness_rejects_nongraphical():
    cols = [list(c) for c in degree_spectra(TRIANGLE).columns]
    cols[0][1] += 1
    with pytest.raises(NotGraphical):
        dsm_witness(DegreeSpectraMatrix(2, cols))


def test_dsm_sample_preserves_matrix():
    g = LabeledGraph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (4, 5), (3, 5)])
    m = degree_spectra(g)
    for sg in dsm_sample(m, burn_in=30, thin=3, count=5, seed=4):
        assert degree_spectra(sg) == m


def test_dsm_sample_rigid_is_constant():
    m = degree_spectra(STAR)
    draws = dsm_sample(m, burn_in=10, thin=2, count=4, seed=1)
    assert len({frozenset(g.edges) for g in draws}) == 1


def test_dsm_chain_visits_all_component_realizations():
    # C6 cycle: all neighbors have degree 2, single simple component with
    # multiple realizations; the chain must stay on the fixed matrix
    g = LabeledGraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    m = degree_spectra(g)
    chain = build_dsm_chain(m, seed=8)
    seen = set()
    for _ in range(4000):
        dsm_chain_step(chain)
        cur = chain.current_graph()
        assert degree_spectra(cur) == m
        seen.add(frozenset(cur.edges))
    # 2-regular graphs on 6 labeled vertices: two triangles (10) or a 6-cycle (60)
    assert len(seen) == 70


def test_jdm_and_degree_sequence_constant_across_samples():
    g = LabeledGraph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)])
    m = degree_spectra(g)
    jdm = joint_degree_view(m)
    degs = tuple(sorted(g.degrees(), reverse=True))
    for sg in dsm_sample(m, burn_in=25, thin=5, count=6, seed=3):
        assert joint_degree_view(degree_spectra(sg)) == jdm
        assert tuple(sorted(sg.degrees(), reverse=True)) == degs


def test_empty_matrix_is_graphical():
    m = DegreeSpectraMatrix(0, [(), (), ()])
    assert dsm_graphical(m)
    assert dsm_witness(m).edges == frozenset()
