import math
import time

import networkx as nx
import pytest

from oracles import mostar_nx, to_nx
from mostar.constructions import (
    GAMMA,
    SplitSpec,
    best_split_mostar,
    nested_graph,
    nested_mostar_star,
    nested_spec,
    split_graph,
    split_mostar_closed_form,
    split_mostar_star_closed_form,
)
from mostar.graph_core import complement, from_edge_list
from mostar.indices import mostar, mostar_star

LIMIT = 2 / math.sqrt(3) - 1


def test_split_examples():
    assert split_graph(SplitSpec(3, 1)) == from_edge_list(3, [(0, 1), (0, 2)])
    g = split_graph(SplitSpec(6, 2))
    assert g.m == 9 and g.degrees == (5, 5, 2, 2, 2, 2)
    assert split_graph(SplitSpec(6, 3)).m == 12


def test_split_spec_validation():
    with pytest.raises(ValueError):
        SplitSpec(4, 0)
    with pytest.raises(ValueError):
        split_mostar_closed_form(SplitSpec(4, 4))


def test_split_closed_form_examples():
    assert split_mostar_closed_form(SplitSpec(6, 2)) == 24
    assert split_mostar_closed_form(SplitSpec(3, 1)) == 2 == mostar(split_graph(SplitSpec(3, 1)))
    assert split_mostar_closed_form(SplitSpec(300, 100)) == 3_980_000


@pytest.mark.parametrize("n", range(2, 25))
def test_split_closed_form_vs_networkx(n):
    for k in range(1, n):
        g = split_graph(SplitSpec(n, k))
        assert mostar_nx(g) == split_mostar_closed_form(SplitSpec(n, k))
        if 2 * k <= n:
            assert mostar_star(g) == split_mostar_star_closed_form(SplitSpec(n, k))


def test_split_ratio_approaches_four_27ths():
    prev = 0
    for n in range(102, 3001, 3):
        r = split_mostar_closed_form(SplitSpec(n, n // 3)) / n**3
        assert 0.14 < r <= 4 / 27
        assert r > prev
        prev = r


def test_best_split():
    assert best_split_mostar(4) == (1, 6)
    assert best_split_mostar(6) == (2, 24)
    assert best_split_mostar(9) == (3, 90)


def test_nested_spec_examples():
    assert nested_spec(10).levels == ((10, 4), (4, 1), (1, 0))
    assert nested_spec(2).levels == ((2, 1), (1, 0))
    assert nested_spec(1).levels == ((1, 0),)
    assert nested_spec(10).gamma == pytest.approx(0.3660254, abs=1e-7)


def test_nested_spec_invariants():
    for n in range(1, 2000):
        spec = nested_spec(n)
        assert spec.levels[0][0] == n
        assert sum(spec.clique_sizes) == n
        for (ni, di), nxt in zip(spec.levels, spec.levels[1:] + ((None, None),)):
            assert di < ni
            if nxt[0] is not None:
                assert nxt[0] == di
            # half-up rounding of gamma * n_i, except the n_i - 1 clamp
            if ni > 1:
                assert di == min(math.floor(GAMMA * ni + 0.5), ni - 1)
        assert len(spec.levels) <= 2 + math.log(n + 1) / math.log(1 / GAMMA) + 1


def test_nested_graph_examples():
    assert nested_graph(nested_spec(2)) == from_edge_list(2, [(0, 1)])
    g3 = nested_graph(nested_spec(3))
    assert sorted(g3.degrees) == [1, 1, 2]  # S_{1,2}
    g10 = nested_graph(nested_spec(10))
    comps = sorted(len(c) for c in nx.connected_components(to_nx(complement(g10))))
    assert comps == [1, 3, 6]


def test_nested_mostar_star_examples():
    assert nested_mostar_star(nested_spec(10)) == 153 == mostar_star(nested_graph(nested_spec(10)))
    assert nested_mostar_star(nested_spec(2)) == 1


def test_nested_recursion_matches_materialized():
    for n in range(1, 201):
        spec = nested_spec(n)
        g = nested_graph(spec)
        assert nested_mostar_star(spec) == mostar_star(g), n
        comp = to_nx(complement(g))
        parts = [comp.subgraph(c) for c in nx.connected_components(comp)]
        assert all(p.number_of_edges() == len(p) * (len(p) - 1) // 2 for p in parts)
        assert sorted(len(p) for p in parts) == sorted(spec.clique_sizes)


def test_nested_ratio_limit():
    t0 = time.perf_counter()
    n = 10**6
    v = nested_mostar_star(nested_spec(n))
    elapsed = time.perf_counter() - t0
    assert abs(v / n**3 - LIMIT) / LIMIT < 0.01
    assert elapsed < 0.05
    # geometric-series limit
    assert GAMMA * (1 - GAMMA) ** 2 / (1 - GAMMA**3) == pytest.approx(LIMIT, abs=1e-14)
    for n in range(100, 3000, 7):
        assert 0.14 < nested_mostar_star(nested_spec(n)) / n**3 <= LIMIT
    assert nested_mostar_star(nested_spec(10**9)) / 10**27 == pytest.approx(LIMIT, rel=1e-6)


def test_materialization_cap():
    with pytest.raises(ValueError):
        split_graph(SplitSpec(10_001, 3))
    with pytest.raises(ValueError):
        nested_graph(nested_spec(10_001))
