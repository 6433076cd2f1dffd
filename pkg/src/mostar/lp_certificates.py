"""The degree-class linear program, its dual, and certificates for it.

For a graph with ``x_i n`` vertices of degree ``i`` and ``y_ij n^2`` edges
between degree classes ``i <= j``, the primal is

    max   sum_{i<=j} (1 - i/n) y_ij
    s.t.  sum_i x_i = 1
          2 y_ii + sum_{j<i} y_ji + sum_{j>i} y_ij - (i/n) x_i = 0   for i in 0..D
          x, y >= 0

and the dual is ``min p`` s.t. ``q_i + q_j >= 1 - i/n`` (i <= j) and
``p >= (i/n) q_i``. The closed-form dual point is
``p = 2x^2 + x - 2x sqrt(x^2 + x)`` at ``x = D/n``, ``q_0 = 1``,
``q_i = (n/i) p``.

Primal solving is exact (``fractions.Fraction``); the closed-form dual point
is irrational and checked against :data:`TOLERANCE`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .bounds import maxdeg_ratio
from .graph_core import Graph

__all__ = [
    "TOLERANCE",
    "LpError",
    "LpInstance",
    "PrimalSolution",
    "DualCertificate",
    "FeasibilityResult",
    "build_primal",
    "induced_primal",
    "primal_residuals",
    "solve_exact",
    "lemma1_certificate",
    "check_dual_feasible",
    "check_weak_duality",
    "to_lp_format",
]

TOLERANCE = 1e-9

Number = Union[Fraction, float]


class LpError(RuntimeError):
    pass


@dataclass(frozen=True)
class LpInstance:
    n: int
    delta: int
    variables: tuple[tuple, ...]  # ("x", i) then ("y", i, j) with i <= j
    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    @property
    def classes(self) -> range:
        return range(self.delta + 1)

    @property
    def num_x(self) -> int:
        return self.delta + 1

    @property
    def num_y(self) -> int:
        return len(self.variables) - self.num_x


@dataclass(frozen=True)
class DualCertificate:
    p: Number
    q: tuple[Number, ...]

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction) and all(isinstance(v, Fraction) for v in self.q)


@dataclass(frozen=True)
class PrimalSolution:
    n: int
    delta: int
    x: tuple[Fraction, ...]
    y: dict  # (i, j) -> Fraction, i <= j
    objective: Fraction
    dual: DualCertificate | None = field(default=None, compare=False)

    def vector(self) -> list[Fraction]:
        d = self.delta
        return list(self.x) + [self.y[(i, j)] for i in range(d + 1) for j in range(i, d + 1)]


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    violations: tuple[tuple, ...] = ()  # ("pair", i, j, lhs, rhs) or ("p", i, lhs, rhs)

    def __bool__(self) -> bool:
        return self.feasible


def _check_range(n: int, delta: int) -> None:
    if not 1 <= delta <= n - 1:
        raise ValueError(f"need 1 <= Delta <= n-1, got n={n}, Delta={delta}")


def build_primal(n: int, delta: int) -> LpInstance:
    _check_range(n, delta)
    classes = range(delta + 1)
    variables = [("x", i) for i in classes] + [("y", i, j) for i in classes for j in range(i, delta + 1)]
    col = {v: c for c, v in enumerate(variables)}
    zero = Fraction(0)

    objective = [zero] * len(variables)
    for i in classes:
        for j in range(i, delta + 1):
            objective[col["y", i, j]] = 1 - Fraction(i, n)

    rows = []
    row = [zero] * len(variables)
    for i in classes:
        row[col["x", i]] = Fraction(1)
    rows.append(tuple(row))
    for i in classes:
        row = [zero] * len(variables)
        for j in classes:
            a, b = min(i, j), max(i, j)
            row[col["y", a, b]] += 2 if i == j else 1
        row[col["x", i]] = -Fraction(i, n)
        rows.append(tuple(row))
    rhs = (Fraction(1),) + (zero,) * (delta + 1)
    return LpInstance(n, delta, tuple(variables), tuple(objective), tuple(rows), rhs)


def _objective(lp_n: int, delta: int, y: dict) -> Fraction:
    return sum((1 - Fraction(i, lp_n)) * y[(i, j)] for i in range(delta + 1) for j in range(i, delta + 1))


def induced_primal(g: Graph, n: int, delta: int) -> PrimalSolution:
    """The feasible point of the primal read off an actual graph."""
    _check_range(n, delta)
    if g.n != n:
        raise ValueError(f"graph has order {g.n}, expected {n}")
    if g.max_degree > delta:
        raise ValueError(f"graph has max degree {g.max_degree} > Delta={delta}")
    counts = [0] * (delta + 1)
    for d in g.degrees:
        counts[d] += 1
    pair_counts = {(i, j): 0 for i in range(delta + 1) for j in range(i, delta + 1)}
    for u, v in g.edges():
        a, b = sorted((g.degrees[u], g.degrees[v]))
        pair_counts[a, b] += 1
    x = tuple(Fraction(c, n) for c in counts)
    y = {key: Fraction(c, n * n) for key, c in pair_counts.items()}
    return PrimalSolution(n, delta, x, y, _objective(n, delta, y))


def primal_residuals(lp: LpInstance, ps: PrimalSolution) -> list[Fraction]:
    z = ps.vector()
    return [sum(a * v for a, v in zip(row, z) if a) - b for row, b in zip(lp.rows, lp.rhs)]


class _Tableau:
    """Dense exact tableau for ``A z = b``, ``z >= 0``, ``b >= 0``.

    Columns ``0..N-1`` are structural, ``N..N+M-1`` artificial; the artificial
    block always holds ``B^-1``, which gives the row duals at the end.
    """

    def __init__(self, rows, rhs):
        self.m = len(rows)
        self.n_struct = len(rows[0])
        width = self.n_struct + self.m
        self.t = []
        for r, (row, b) in enumerate(zip(rows, rhs)):
            if b < 0:
                raise LpError("right-hand side must be non-negative")
            art = [Fraction(0)] * self.m
            art[r] = Fraction(1)
            self.t.append(list(row) + art + [Fraction(b)])
        self.basis = [self.n_struct + r for r in range(self.m)]
        self.width = width
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.t[r]
        piv = row[c]
        if piv != 1:
            self.t[r] = row = [v / piv for v in row]
        for k in range(self.m):
            if k == r:
                continue
            f = self.t[k][c]
            if f:
                other = self.t[k]
                self.t[k] = [a - f * b if b else a for a, b in zip(other, row)]
        self.basis[r] = c
        self.pivots += 1

    def reduced_cost(self, cost, c: int) -> Fraction:
        return cost[c] - sum(cost[self.basis[k]] * self.t[k][c] for k in range(self.m) if self.t[k][c])

    def optimize(self, cost, allowed) -> None:
        """Maximize ``cost . z`` entering only ``allowed`` columns (Bland's rule)."""
        while True:
            entering = next((c for c in allowed if self.reduced_cost(cost, c) > 0), None)
            if entering is None:
                return
            best = None
            for k in range(self.m):
                a = self.t[k][entering]
                if a > 0:
                    ratio = self.t[k][-1] / a
                    key = (ratio, self.basis[k])
                    if best is None or key < best[0]:
                        best = (key, k)
            if best is None:
                raise LpError("primal unbounded")
            self.pivot(best[1], entering)

    def value(self, cost) -> Fraction:
        return sum(cost[self.basis[k]] * self.t[k][-1] for k in range(self.m))

    def row_duals(self, cost) -> list[Fraction]:
        art = self.n_struct
        return [sum(cost[self.basis[k]] * self.t[k][art + r] for k in range(self.m)) for r in range(self.m)]


def solve_exact(lp: LpInstance) -> PrimalSolution:
    """Optimal basic solution by two-phase exact simplex with Bland's rule.

    The returned ``dual`` is the exact optimal dual ``(p, q)`` read from the
    final basis; its ``p`` equals the primal optimum.
    """
    tab = _Tableau(lp.rows, lp.rhs)
    n_struct = tab.n_struct
    structural = range(n_struct)

    phase1 = [Fraction(0)] * n_struct + [Fraction(-1)] * tab.m
    tab.optimize(phase1, structural)
    if tab.value(phase1) != 0:
        raise LpError("primal infeasible")
    for k in range(tab.m):
        if tab.basis[k] >= n_struct:
            c = next((c for c in structural if tab.t[k][c] != 0), None)
            if c is not None:
                tab.pivot(k, c)
            # else: redundant row, its artificial stays basic at zero

    cost = list(lp.objective) + [Fraction(0)] * tab.m
    tab.optimize(cost, structural)

    z = [Fraction(0)] * n_struct
    for k, c in enumerate(tab.basis):
        if c < n_struct:
            z[c] = tab.t[k][-1]
    nx = lp.num_x
    x = tuple(z[:nx])
    y = {(v[1], v[2]): z[c] for c, v in enumerate(lp.variables) if v[0] == "y"}
    duals = tab.row_duals(cost)
    dual = DualCertificate(duals[0], tuple(duals[1:]))
    objective = _objective(lp.n, lp.delta, y)
    if objective != tab.value(cost):
        raise LpError("objective mismatch between tableau and solution vector")
    return PrimalSolution(lp.n, lp.delta, x, y, objective, dual)


def lemma1_certificate(n: int, delta: int) -> DualCertificate:
    _check_range(n, delta)
    p = maxdeg_ratio(delta / n)
    return DualCertificate(p, (1.0,) + tuple(n / i * p for i in range(1, delta + 1)))


def check_dual_feasible(cert: DualCertificate, n: int, delta: int, tol: float = TOLERANCE) -> FeasibilityResult:
    """List every violated dual constraint; exact certificates use tol = 0."""
    if len(cert.q) != delta + 1:
        raise ValueError(f"certificate has {len(cert.q)} q-values, expected {delta + 1}")
    exact = cert.exact
    slack = 0 if exact else tol
    violations = []
    for i in range(delta + 1):
        rhs = 1 - (Fraction(i, n) if exact else i / n)
        for j in range(i, delta + 1):
            lhs = cert.q[i] + cert.q[j]
            if lhs + slack < rhs:
                violations.append(("pair", i, j, lhs, rhs))
    for i in range(delta + 1):
        rhs = (Fraction(i, n) if exact else i / n) * cert.q[i]
        if cert.p + slack < rhs:
            violations.append(("p", i, cert.p, rhs))
    return FeasibilityResult(not violations, tuple(violations))


def check_weak_duality(ps: PrimalSolution, cert: DualCertificate, n: int, delta: int, tol: float = TOLERANCE) -> bool:
    residuals = primal_residuals(build_primal(n, delta), ps)
    negative = [v for v in ps.vector() if v < 0]
    if any(residuals) or negative:
        raise ValueError(f"primal point infeasible: residuals={[str(r) for r in residuals]}, negatives={len(negative)}")
    feas = check_dual_feasible(cert, n, delta, tol)
    if not feas:
        raise ValueError(f"dual point infeasible: {len(feas.violations)} violations, first {feas.violations[0]}")
    if cert.exact:
        return ps.objective <= cert.p
    return float(ps.objective) <= cert.p + tol


def _fmt(c: int) -> str:
    return f"+ {c}" if c >= 0 else f"- {-c}"


def to_lp_format(lp: LpInstance) -> str:
    """CPLEX LP text with every row and the objective multiplied by ``n`` so
    all coefficients are integers; the optimum is ``n * OPT``."""
    n = lp.n
    names = ["x_%d" % v[1] if v[0] == "x" else "y_%d_%d" % (v[1], v[2]) for v in lp.variables]

    def terms(coeffs):
        parts = []
        for c, name in zip(coeffs, names):
            scaled = c * n
            if scaled:
                assert scaled.denominator == 1
                parts.append(f"{_fmt(int(scaled))} {name}")
        text = " ".join(parts)
        if text.startswith("+ "):
            return text[2:]
        return "-" + text[2:] if text.startswith("- ") else text

    out = [f"\\ degree-class LP n={n} Delta={lp.delta}; objective and rows scaled by n", "Maximize", " obj: " + terms(lp.objective), "Subject To"]
    for r, (row, b) in enumerate(zip(lp.rows, lp.rhs)):
        label = "vertices" if r == 0 else f"degree_{r - 1}"
        out.append(f" {label}: {terms(row)} = {int(b * n)}")
    out.append("End")
    return "\n".join(out) + "\n"
