"""Extremal families: split graphs and nested complete-bipartite graphs.

Nested family labelling: level 0's independent part gets the lowest ids and
deeper levels get higher ids, so vertex ``v`` of level ``i`` lies in
``[n - n_i, n - n_{i+1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext

from .graph_core import Graph

__all__ = [
    "GAMMA",
    "MAX_MATERIALIZE",
    "SplitSpec",
    "NestedSpec",
    "split_graph",
    "split_mostar_closed_form",
    "split_mostar_star_closed_form",
    "best_split_mostar",
    "nested_spec",
    "nested_graph",
    "nested_mostar_star",
]

GAMMA = (math.sqrt(3) - 1) / 2
MAX_MATERIALIZE = 10**4


@dataclass(frozen=True)
class SplitSpec:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"clique size must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")


@dataclass(frozen=True)
class NestedSpec:
    n: int
    levels: tuple[tuple[int, int], ...]  # (n_i, delta_i), n_0 = n, n_{i+1} = delta_i
    gamma: float = GAMMA

    @property
    def clique_sizes(self) -> list[int]:
        """Sizes of the complement's cliques, one per level (the independent parts)."""
        return [ni - di for ni, di in self.levels]


def _check_cap(n: int) -> None:
    if n > MAX_MATERIALIZE:
        raise ValueError(f"refusing to materialize n={n} > {MAX_MATERIALIZE}; use the closed forms")


def split_graph(spec: SplitSpec) -> Graph:
    """Clique on ``0..k-1``, independent set on ``k..n-1``, all cross edges."""
    n, k = spec.n, spec.k
    _check_cap(n)
    full = (1 << n) - 1
    clique = (1 << k) - 1
    rows = tuple(full & ~(1 << u) if u < k else clique for u in range(n))
    return Graph(n, rows)


def split_mostar_closed_form(spec: SplitSpec) -> int:
    n, k = spec.n, spec.k
    if not 1 <= k <= n - 1:
        raise ValueError(f"closed form needs 1 <= k <= n-1, got k={k}, n={n}")
    return k * (n - k) * (n - k - 1)


def split_mostar_star_closed_form(spec: SplitSpec) -> int:
    """C(k,2) + k(n-k)^2, valid when k <= n - k."""
    n, k = spec.n, spec.k
    if 2 * k > n:
        raise ValueError("closed form for Mo* assumes k <= n/2")
    return k * (k - 1) // 2 + k * (n - k) ** 2


def best_split_mostar(n: int) -> tuple[int, int]:
    """``(k, value)`` maximizing k(n-k)(n-k-1) over 1 <= k <= n-1 (smallest k on ties)."""
    if n < 2:
        return 0, 0
    return max(((k, k * (n - k) * (n - k - 1)) for k in range(1, n)), key=lambda t: (t[1], -t[0]))


def _round_half_up(n: int) -> int:
    # gamma * n rounded half-up; Decimal keeps it exact enough for any int n
    with localcontext() as ctx:
        ctx.prec = 60
        gamma = (Decimal(3).sqrt() - 1) / 2
        return int((gamma * n).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def nested_spec(n: int) -> NestedSpec:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    levels = []
    ni = n
    while True:
        if ni <= 1:
            levels.append((ni, 0))
            break
        di = min(_round_half_up(ni), ni - 1)
        levels.append((ni, di))
        ni = di
    return NestedSpec(n, tuple(levels))


def nested_graph(spec: NestedSpec) -> Graph:
    n = spec.n
    _check_cap(n)
    full = (1 << n) - 1
    rows = [0] * n
    start = 0
    for ni, di in spec.levels:
        part = ni - di
        deeper = full & ~((1 << (start + part)) - 1)
        for v in range(start, start + part):
            rows[v] |= deeper
        part_bits = ((1 << part) - 1) << start
        for w in range(start + part, n):
            rows[w] |= part_bits
        start += part
    return Graph(n, tuple(rows))


def nested_mostar_star(spec: NestedSpec) -> int:
    return sum(di * (ni - di) ** 2 for ni, di in spec.levels)
