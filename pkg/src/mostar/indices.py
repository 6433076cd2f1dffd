"""Distance-unbalance indices of a graph.

Everything here is exact integer arithmetic over BFS distance rows. For
disconnected graphs a vertex outside the component of an edge is counted in
neither ``n_uv`` nor ``n_vu``, and transmissions sum over the own component
only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph_core import UNREACHABLE, DistanceRow, Graph, bfs_distances, distance_rows

__all__ = [
    "EdgeUnbalance",
    "TransmissionVector",
    "PartialOrientation",
    "AcyclicityResult",
    "IndexReport",
    "edge_unbalance",
    "edge_unbalances",
    "mostar",
    "mostar_star",
    "mostar_star_via_forward_edges",
    "forward_edge_counts",
    "transmissions",
    "irregularity",
    "diameter",
    "partial_orientation",
    "check_acyclic",
    "zero_degree_pairs",
    "full_report",
]


@dataclass(frozen=True)
class EdgeUnbalance:
    u: int
    v: int
    n_uv: int
    n_vu: int
    abs_diff: int
    mostar_star_term: int


@dataclass(frozen=True)
class TransmissionVector:
    sigma: tuple[int, ...]
    connected: bool


@dataclass(frozen=True)
class PartialOrientation:
    """Unbalanced edges as ``(tail, head)`` pointing to the endpoint with more
    closer vertices; balanced edges listed as ``(u, v)``, ``u < v``."""

    oriented: tuple[tuple[int, int], ...]
    unoriented: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AcyclicityResult:
    acyclic: bool
    witness: tuple[int, ...] = ()  # closed walk v0 -> ... -> v0 when not acyclic

    def __bool__(self) -> bool:
        return self.acyclic


@dataclass(frozen=True)
class IndexReport:
    n: int
    m: int
    delta_min: int
    delta_max: int
    mo: int
    mo_star: int
    irr: int
    diameter: object  # int, or UNREACHABLE when disconnected
    connected: bool


def _unbalance(g: Graph, u: int, v: int, du: DistanceRow, dv: DistanceRow) -> EdgeUnbalance:
    n_uv = n_vu = 0
    a, b = du.dist, dv.dist
    for w in range(g.n):
        x = a[w]
        if x is UNREACHABLE:
            continue
        y = b[w]
        if x < y:
            n_uv += 1
        elif y < x:
            n_vu += 1
    return EdgeUnbalance(u, v, n_uv, n_vu, abs(n_uv - n_vu), g.n - min(g.degrees[u], g.degrees[v]))


def edge_unbalance(g: Graph, u: int, v: int) -> EdgeUnbalance:
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge of the graph")
    return _unbalance(g, u, v, bfs_distances(g, u), bfs_distances(g, v))


def edge_unbalances(g: Graph, rows: list[DistanceRow] | None = None) -> list[EdgeUnbalance]:
    """One record per edge ``(u, v)``, ``u < v``, sharing a single BFS pass."""
    rows = rows if rows is not None else distance_rows(g)
    return [_unbalance(g, u, v, rows[u], rows[v]) for u, v in g.edges()]


def mostar(g: Graph) -> int:
    return sum(e.abs_diff for e in edge_unbalances(g))


def mostar_star(g: Graph) -> int:
    d = g.degrees
    return sum(g.n - min(d[u], d[v]) for u, v in g.edges())


def forward_edge_counts(g: Graph) -> tuple[list[int], list[int]]:
    """Vertex order by ascending degree (ties by id) and the number of
    neighbours of each vertex that come later in that order."""
    order = sorted(range(g.n), key=lambda u: (g.degrees[u], u))
    later = 0
    counts = [0] * g.n
    for pos in range(g.n - 1, -1, -1):
        u = order[pos]
        counts[pos] = (g.rows[u] & later).bit_count()
        later |= 1 << u
    return order, counts


def mostar_star_via_forward_edges(g: Graph) -> int:
    order, e = forward_edge_counts(g)
    return sum(ei * (g.n - g.degrees[u]) for u, ei in zip(order, e))


def transmissions(g: Graph, rows: list[DistanceRow] | None = None) -> TransmissionVector:
    rows = rows if rows is not None else distance_rows(g)
    sigma = []
    connected = True
    for r in rows:
        total = 0
        for x in r.dist:
            if x is UNREACHABLE:
                connected = False
            else:
                total += x
        sigma.append(total)
    return TransmissionVector(tuple(sigma), connected)


def irregularity(g: Graph) -> int:
    d = g.degrees
    return sum(abs(d[u] - d[v]) for u, v in g.edges())


def diameter(g: Graph, rows: list[DistanceRow] | None = None):
    rows = rows if rows is not None else distance_rows(g)
    best = 0
    for r in rows:
        for x in r.dist:
            if x is UNREACHABLE:
                return UNREACHABLE
            best = max(best, x)
    return best


def partial_orientation(g: Graph, unbalances: list[EdgeUnbalance] | None = None) -> PartialOrientation:
    oriented, unoriented = [], []
    for e in unbalances if unbalances is not None else edge_unbalances(g):
        if e.n_uv > e.n_vu:
            oriented.append((e.v, e.u))
        elif e.n_vu > e.n_uv:
            oriented.append((e.u, e.v))
        else:
            unoriented.append((e.u, e.v))
    return PartialOrientation(tuple(oriented), tuple(unoriented))


def _check_matches(po: PartialOrientation, g: Graph) -> None:
    seen = [tuple(sorted(p)) for p in po.oriented] + [tuple(sorted(p)) for p in po.unoriented]
    if len(seen) != len(set(seen)) or set(seen) != set(g.edges()):
        raise ValueError("orientation does not partition the edge set of this graph")


def _mixed_successors(po: PartialOrientation, n: int) -> list[list[int]]:
    succ: list[list[int]] = [[] for _ in range(n)]
    for t, h in po.oriented:
        succ[t].append(h)
    for u, v in po.unoriented:
        succ[u].append(v)
        succ[v].append(u)
    return succ


def _scc_ids(succ: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns a component id per vertex."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if i < len(succ[v]):
                work.append((v, i + 1))
                w = succ[v][i]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp


def check_acyclic(po: PartialOrientation, g: Graph) -> AcyclicityResult:
    """No mixed cycle uses an oriented edge iff no oriented edge lies inside
    a strongly connected component of the mixed digraph."""
    _check_matches(po, g)
    succ = _mixed_successors(po, g.n)
    comp = _scc_ids(succ)
    for t, h in po.oriented:
        if comp[t] == comp[h]:
            return AcyclicityResult(False, (t,) + _path(succ, h, t))
    return AcyclicityResult(True)


def _path(succ: list[list[int]], src: int, dst: int) -> tuple[int, ...]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in succ[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = []
    x = dst
    while x is not None:
        out.append(x)
        x = prev[x]
    return tuple(reversed(out))


def zero_degree_pairs(po: PartialOrientation, g: Graph) -> list[tuple[int, int]]:
    """Non-adjacent ordered pairs (x, y) with outdeg(x) = 0 and indeg(y) = 0."""
    _check_matches(po, g)
    outdeg = [0] * g.n
    indeg = [0] * g.n
    for t, h in po.oriented:
        outdeg[t] += 1
        indeg[h] += 1
    return [
        (x, y)
        for x in range(g.n)
        if outdeg[x] == 0
        for y in range(g.n)
        if y != x and indeg[y] == 0 and not g.has_edge(x, y)
    ]


def full_report(g: Graph) -> IndexReport:
    rows = distance_rows(g)
    mo = sum(e.abs_diff for e in edge_unbalances(g, rows))
    mo_star = mostar_star(g)
    assert mo <= mo_star, (mo, mo_star)
    diam = diameter(g, rows)
    return IndexReport(
        n=g.n,
        m=g.m,
        delta_min=g.min_degree,
        delta_max=g.max_degree,
        mo=mo,
        mo_star=mo_star,
        irr=irregularity(g),
        diameter=diam,
        connected=diam is not UNREACHABLE,
    )
