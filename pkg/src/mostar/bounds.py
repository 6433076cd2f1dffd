"""Upper bounds on Mo* and how much room each one leaves.

Closed-form bounds come back as floats for display. Whether an integer Mo*
value satisfies a bound is decided exactly, by squaring away the radicals:

* global:  v <= (2/sqrt(3) - 1) n^3   iff  3 (v + n^3)^2 <= 4 n^6
* maxdeg:  v <= f(D/n) n^3            iff  A >= 0 and 4 D^2 n^2 (D^2 + D n) <= A^2,
  with A = 2 D^2 n + D n^2 - v.

Degree-sequence bound indexing: lists are 0-based, list position ``p``
holds the value for 1-based index ``i = p + 1``; ``k`` is reported 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .graph_core import Graph
from .indices import mostar_star

__all__ = [
    "GLOBAL_CONSTANT",
    "MAXDEG_LIMIT",
    "BoundViolation",
    "DegSeqBound",
    "BoundReport",
    "bound_trivial",
    "bound_global",
    "maxdeg_ratio",
    "bound_maxdeg",
    "below_trivial",
    "within_global",
    "within_maxdeg",
    "degseq_bound",
    "bound_degseq",
    "bound_report",
]

GLOBAL_CONSTANT = 2 / math.sqrt(3) - 1
MAXDEG_LIMIT = 3 - 2 * math.sqrt(2)  # f(1)


class BoundViolation(AssertionError):
    """A proven bound was exceeded: this is a bug, never a data condition."""


def bound_trivial(n: int) -> float:
    return n**3 / 2


def bound_global(n: int) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return GLOBAL_CONSTANT * n**3


def maxdeg_ratio(x: float) -> float:
    """f(x) = 2x^2 + x - 2x sqrt(x^2 + x); the bound per unit n^3."""
    return 2 * x * x + x - 2 * x * math.sqrt(x * x + x)


def bound_maxdeg(n: int, delta: int) -> float:
    if not 1 <= delta <= n - 1:
        raise ValueError(f"max degree must satisfy 1 <= Delta <= n-1, got Delta={delta}, n={n}")
    return maxdeg_ratio(delta / n) * n**3


def below_trivial(value: int, n: int) -> bool:
    return 2 * value < n**3


def within_global(value: int, n: int) -> bool:
    if value + n**3 < 0:
        return True
    return 3 * (value + n**3) ** 2 <= 4 * n**6


def within_maxdeg(value: int, n: int, delta: int) -> bool:
    # delta = 0 is the edgeless limit f(0) = 0
    if delta == 0:
        return value <= 0
    a = 2 * delta * delta * n + delta * n * n - value
    return a >= 0 and 4 * delta * delta * n * n * (delta * delta + delta * n) <= a * a


@dataclass(frozen=True)
class DegSeqBound:
    d: tuple[int, ...]
    e_minus: tuple[int, ...]
    e_plus: tuple[int, ...]
    k: int
    s: int
    bound: int


def degseq_bound(degrees: Sequence[int]) -> DegSeqBound:
    """Bound ``n m - s`` from a degree sequence (any order; sorted here)."""
    d = tuple(sorted(degrees))
    n = len(d)
    total = sum(d)
    if total % 2:
        raise ValueError("degree sum is odd")
    m = total // 2
    e_minus = tuple(max(0, d[p] - p) for p in range(n))  # d_i - i + 1 with i = p + 1
    e_plus = tuple(min(d[p], n - p - 1) for p in range(n))  # n - i

    # smallest k with m <= sum_{i<=k} e+ + sum_{i>k} e-
    k = n
    plus_prefix = 0
    minus_suffix = sum(e_minus)
    for p in range(n):
        plus_prefix += e_plus[p]
        minus_suffix -= e_minus[p]
        if m <= plus_prefix + minus_suffix:
            k = p + 1
            break
    else:
        raise ValueError("no valid k: sequence admits fewer than m forward edges")
    s = sum(e_plus[p] * d[p] for p in range(k - 1)) + sum(e_minus[p] * d[p] for p in range(k - 1, n))
    return DegSeqBound(d, e_minus, e_plus, k, s, n * m - s)


def bound_degseq(g: Graph) -> DegSeqBound:
    return degseq_bound(g.degrees)


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    max_degree: int
    mo_star_actual: int
    trivial: float
    global_: float
    maxdeg: float
    degseq: int

    @property
    def slacks(self) -> dict[str, float]:
        v = self.mo_star_actual
        return {
            "trivial": self.trivial - v,
            "global": self.global_ - v,
            "maxdeg": self.maxdeg - v,
            "degseq": self.degseq - v,
        }


def bound_report(g: Graph, mo_star_value: int | None = None) -> BoundReport:
    n, delta = g.n, g.max_degree
    v = mostar_star(g) if mo_star_value is None else mo_star_value
    ds = bound_degseq(g).bound
    checks = {
        "trivial": below_trivial(v, n),
        "global": within_global(v, n),
        "maxdeg": within_maxdeg(v, n, delta),
        "degseq": v <= ds,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise BoundViolation(f"Mo*={v} exceeds bound(s) {failed} for n={n}, Delta={delta}")
    return BoundReport(
        n=n,
        m=g.m,
        max_degree=delta,
        mo_star_actual=v,
        trivial=bound_trivial(n),
        global_=bound_global(n),
        maxdeg=bound_maxdeg(n, delta) if delta >= 1 else 0.0,
        degseq=ds,
    )
