import math

import pytest

from conftest import complete
from oracles import degseq_oracle_bound, maxdeg_f
from mostar.bounds import (
    GLOBAL_CONSTANT,
    MAXDEG_LIMIT,
    bound_degseq,
    bound_global,
    bound_maxdeg,
    bound_report,
    degseq_bound,
    maxdeg_ratio,
    within_global,
    within_maxdeg,
)
from mostar.graph_core import enumerate_labeled, from_edge_list
from mostar.indices import mostar_star


def test_global_constant():
    assert GLOBAL_CONSTANT == pytest.approx(0.15470053837925146, abs=1e-15)
    assert GLOBAL_CONSTANT < 0.1548
    assert bound_global(1) == pytest.approx(0.15470, abs=1e-5)
    assert bound_global(10) == pytest.approx(154.70, abs=0.01)


def test_maxdeg_values():
    assert maxdeg_ratio(0.5) == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-12)
    assert maxdeg_ratio(0.725) == pytest.approx(0.15470, abs=5e-4)
    assert maxdeg_ratio(0.9) == pytest.approx(0.16620, abs=1e-5)
    with pytest.raises(ValueError):
        bound_maxdeg(5, 0)
    with pytest.raises(ValueError):
        bound_maxdeg(5, 5)


def test_maxdeg_alternative_form():
    for k in range(1, 1001):
        x = k / 1000
        assert maxdeg_ratio(x) == pytest.approx(maxdeg_f(x), abs=1e-12)
        p = maxdeg_ratio(x)
        assert 2 * math.sqrt(p) + p / x == pytest.approx(1, abs=1e-9)
        assert math.sqrt(p) == pytest.approx(math.sqrt(x * x + x) - x, abs=1e-12)


def test_maxdeg_increasing():
    vals = [maxdeg_ratio(k / 100) for k in range(1, 100)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_maxdeg_limit():
    for n in range(2, 60):
        assert bound_maxdeg(n, n - 1) <= MAXDEG_LIMIT * n**3 + 1e-9


def test_crossing_point():
    # the max-degree bound beats the global one up to roughly 0.725 n
    lo, hi = 0.5, 0.9
    for _ in range(60):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if maxdeg_ratio(mid) < GLOBAL_CONSTANT else (lo, mid)
    assert lo == pytest.approx(0.725, abs=1e-3)


@pytest.mark.parametrize(
    "edges,n,e_plus,e_minus,k,s,bound,mo_star",
    [
        ([(0, 2), (1, 2)], 3, (1, 1, 0), (1, 0, 0), 2, 1, 5, 4),
        ([(0, 1), (1, 2), (2, 3), (3, 0)], 4, (2, 2, 1, 0), (2, 1, 0, 0), 2, 6, 10, 8),
    ],
)
def test_degseq_hand_values(edges, n, e_plus, e_minus, k, s, bound, mo_star):
    g = from_edge_list(n, edges)
    d = bound_degseq(g)
    assert (d.e_plus, d.e_minus, d.k, d.s, d.bound) == (e_plus, e_minus, k, s, bound)
    assert mostar_star(g) == mo_star


def test_degseq_complete_is_tight():
    k4 = complete(4)
    d = bound_degseq(k4)
    assert d.e_plus == d.e_minus == (3, 2, 1, 0)
    assert d.s == 18 and d.bound == 6 == mostar_star(k4)


def test_degseq_edgeless():
    d = degseq_bound([0, 0, 0])
    assert d.k == 1 and d.s == 0 and d.bound == 0


def test_degseq_odd_sum():
    with pytest.raises(ValueError):
        degseq_bound([1, 1, 1])


def test_exact_comparisons_agree_with_floats():
    for n in range(1, 30):
        for v in range(0, int(0.16 * n**3) + 2):
            if abs(v - bound_global(n)) > 1e-6:
                assert within_global(v, n) == (v <= bound_global(n))
        for delta in range(1, n):
            b = bound_maxdeg(n, delta)
            for v in (math.floor(b) - 1, math.floor(b), math.floor(b) + 1):
                if v >= 0 and abs(v - b) > 1e-6:
                    assert within_maxdeg(v, n, delta) == (v <= b)


def test_bound_report_s24(s24):
    r = bound_report(s24)
    assert r.mo_star_actual == 33
    assert r.trivial == 108
    assert r.global_ == pytest.approx(33.4153, abs=1e-4)
    assert r.maxdeg == pytest.approx(maxdeg_ratio(5 / 6) * 216)
    assert r.maxdeg == pytest.approx(35.0281, abs=1e-4)
    assert r.degseq == degseq_bound(s24.degrees).bound
    assert all(v >= 0 for v in r.slacks.values())


def test_bound_report_k1():
    r = bound_report(from_edge_list(1, []))
    assert r.mo_star_actual == 0
    assert min(r.trivial, r.global_, r.maxdeg, r.degseq) >= 0


@pytest.mark.parametrize("n", range(1, 7))
def test_all_bounds_exhaustive(n):
    for g in enumerate_labeled(n):
        ms = mostar_star(g)
        r = bound_report(g, ms)  # raises on any violation
        assert ms < r.trivial
        oracle = degseq_oracle_bound(list(g.degrees))
        assert ms <= oracle <= r.degseq
