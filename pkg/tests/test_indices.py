import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete
from oracles import mostar_nx, mostar_star_direct, transmissions_nx, unbalance_nx
from mostar.graph_core import UNREACHABLE, enumerate_labeled, from_edge_list, from_edge_mask
from mostar.indices import (
    PartialOrientation,
    check_acyclic,
    edge_unbalance,
    edge_unbalances,
    forward_edge_counts,
    full_report,
    irregularity,
    mostar,
    mostar_star,
    mostar_star_via_forward_edges,
    partial_orientation,
    transmissions,
    zero_degree_pairs,
)


def test_edge_unbalance_examples(p3, k4, s24):
    e = edge_unbalance(p3, 0, 1)
    assert (e.n_uv, e.n_vu, e.abs_diff) == (1, 2, 1)
    e = edge_unbalance(k4, 1, 3)
    assert (e.n_uv, e.n_vu, e.abs_diff) == (1, 1, 0)
    e = edge_unbalance(s24, 0, 4)  # clique vertex 0, independent vertex 4
    assert (e.n_uv, e.n_vu, e.abs_diff) == (4, 1, 3)
    assert unbalance_nx(s24, 0, 4) == (4, 1)


def test_edge_unbalance_requires_edge(p3):
    with pytest.raises(ValueError):
        edge_unbalance(p3, 0, 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_complete_graphs_balanced(n):
    assert mostar(complete(n)) == 0


def test_index_examples(p3, c4, k4, s24):
    assert mostar(p3) == 2
    assert mostar(s24) == 24
    assert mostar_star(from_edge_list(2, [(0, 1)])) == 1
    assert mostar_star(c4) == 8
    assert mostar_star(s24) == 33
    assert mostar_star_via_forward_edges(p3) == 4
    assert mostar_star_via_forward_edges(k4) == 6
    assert transmissions(p3).sigma == (3, 2, 3)
    assert transmissions(k4).sigma == (3, 3, 3, 3)
    assert transmissions(c4).sigma == (4, 4, 4, 4)
    assert irregularity(c4) == 0
    assert irregularity(p3) == 2
    assert irregularity(s24) == 24


def test_forward_edges_on_p3(p3):
    order, e = forward_edge_counts(p3)
    assert [p3.degrees[u] for u in order] == [1, 1, 2]
    assert e == [1, 1, 0]


def test_orientation_examples(p3, p4, c4):
    assert set(partial_orientation(p3).oriented) == {(0, 1), (2, 1)}
    assert partial_orientation(p3).unoriented == ()
    po = partial_orientation(c4)
    assert po.oriented == () and len(po.unoriented) == 4
    po = partial_orientation(p4)
    assert set(po.oriented) == {(0, 1), (3, 2)}
    assert po.unoriented == ((1, 2),)
    assert transmissions(p4).sigma == (6, 4, 4, 6)


def test_acyclic_examples(p4, c4):
    assert check_acyclic(partial_orientation(p4), p4)
    assert check_acyclic(partial_orientation(c4), c4)


def test_acyclic_detects_planted_cycle(c4):
    # a hand-made orientation around the 4-cycle is not one the graph induces
    po = PartialOrientation(((0, 1), (1, 2), (2, 3)), ((0, 3),))
    res = check_acyclic(po, c4)
    assert not res
    w = res.witness
    assert w[0] == w[-1] and len(w) >= 3


def test_acyclic_rejects_mismatch(p3, c4):
    with pytest.raises(ValueError):
        check_acyclic(partial_orientation(p3), c4)


def test_zero_degree_pairs(p3, p4, k4):
    assert zero_degree_pairs(partial_orientation(p3), p3) == []
    assert set(zero_degree_pairs(partial_orientation(p4), p4)) == {(1, 3), (2, 0)}
    assert zero_degree_pairs(partial_orientation(k4), k4) == []


def test_full_report(p3, s24):
    r = full_report(from_edge_list(1, []))
    assert (r.mo, r.mo_star, r.irr, r.m) == (0, 0, 0, 0)
    r = full_report(p3)
    assert (r.mo, r.mo_star, r.irr, r.diameter) == (2, 4, 2, 2)
    r = full_report(s24)
    assert (r.mo, r.mo_star, r.irr, r.diameter) == (24, 33, 24, 2)
    r = full_report(from_edge_list(3, [(0, 1)]))
    assert r.diameter is UNREACHABLE and not r.connected


@pytest.mark.parametrize("n", range(1, 7))
def test_exhaustive_scalar_properties(n):
    for g in enumerate_labeled(n):
        ubs = edge_unbalances(g)
        mo = sum(e.abs_diff for e in ubs)
        ms = mostar_star(g)
        assert mo <= ms
        assert ms == mostar_star_via_forward_edges(g)
        tv = transmissions(g)
        for e in ubs:
            assert e.n_uv >= 1 and e.n_vu >= 1 and e.n_uv + e.n_vu <= n
            # holds per component too, with component-restricted sigma
            assert e.n_uv - e.n_vu == tv.sigma[e.v] - tv.sigma[e.u]
            if tv.connected:
                assert e.abs_diff <= e.mostar_star_term - 1
        po = partial_orientation(g, ubs)
        assert check_acyclic(po, g)
        for t, h in po.oriented:
            assert tv.sigma[h] < tv.sigma[t]
        rep = full_report(g)
        if rep.connected and rep.diameter <= 2:
            assert rep.mo == rep.irr
        for v in range(n):
            assert tv.sigma[v] >= g.degrees[v]
            if tv.connected:
                assert (tv.sigma[v] == n - 1) == (g.degrees[v] == n - 1)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 11).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1))))
def test_against_networkx(nm):
    g = from_edge_mask(*nm)
    assert mostar(g) == mostar_nx(g)
    assert mostar_star(g) == mostar_star_direct(g)
    tv = transmissions(g)
    if tv.connected:
        assert list(tv.sigma) == transmissions_nx(g)
    assert check_acyclic(partial_orientation(g), g)
