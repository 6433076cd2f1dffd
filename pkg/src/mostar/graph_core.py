"""Immutable simple graphs stored as bitset rows.

Vertices are ``0 .. n-1``. Row ``u`` is a Python ``int`` whose bit ``v`` is set
iff ``uv`` is an edge, so neighbourhood unions in BFS are single ``|`` ops.

Vertex pairs are indexed in graph6 order ``(0,1), (0,2), (1,2), (0,3), ...``;
the same index is used for edge masks in :func:`enumerate_labeled`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "UNREACHABLE",
    "Graph",
    "GraphFormatError",
    "DistanceRow",
    "MAX_ENUM_ORDER",
    "MAX_GRAPH6_ORDER",
    "pair_index",
    "pairs",
    "from_edge_list",
    "from_edge_mask",
    "parse_graph6",
    "write_graph6",
    "parse_edge_list",
    "write_edge_list",
    "bfs_distances",
    "distance_rows",
    "enumerate_labeled",
    "complement",
]

MAX_ENUM_ORDER = 7
MAX_GRAPH6_ORDER = 62


class _Unreachable:
    """Marker for a vertex in another component.

    Deliberately supports no arithmetic or ordering, so it cannot leak into
    a distance sum unnoticed.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()


class GraphFormatError(ValueError):
    """Raised for malformed graph input (bad ids, loops, bad graph6 bytes)."""


def pair_index(u: int, v: int) -> int:
    """Position of the pair ``{u, v}`` in graph6 column-major order."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def pairs(n: int) -> list[tuple[int, int]]:
    """All vertex pairs ``(i, j)``, ``i < j``, in graph6 order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    degrees: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError(f"graph order must be >= 1, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphFormatError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise GraphFormatError(f"row {u} has bits beyond vertex {self.n - 1}")
            if row >> u & 1:
                raise GraphFormatError(f"self-loop at vertex {u}")
            r = row
            while r:
                low = r & -r
                v = low.bit_length() - 1
                if not self.rows[v] >> u & 1:
                    raise GraphFormatError(f"adjacency not symmetric at ({u}, {v})")
                r ^= low
        object.__setattr__(self, "degrees", tuple(r.bit_count() for r in self.rows))

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return _bits(self.rows[u])

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, ordered by ``u`` then ``v``."""
        out = []
        for u, row in enumerate(self.rows):
            out.extend((u, v) for v in _bits(row >> (u + 1) << (u + 1)))
        return out

    def edge_mask(self) -> int:
        """Edge set as an integer with bit :func:`pair_index` per edge."""
        mask = 0
        for v in range(1, self.n):
            mask |= (self.rows[v] & ((1 << v) - 1)) << (v * (v - 1) // 2)
        return mask

    def to_numpy(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        if self.n <= MAX_GRAPH6_ORDER:
            return f"Graph(n={self.n}, m={self.m}, graph6={write_graph6(self)!r})"
        return f"Graph(n={self.n}, m={self.m})"


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from vertex pairs; duplicate pairs are merged."""
    if n < 1:
        raise GraphFormatError(f"graph order must be >= 1, got {n}")
    rows = [0] * n
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_edge_mask(n: int, mask: int) -> Graph:
    """Graph whose edges are the set bits of ``mask`` in graph6 pair order."""
    rows = [0] * n
    b = 0
    for j in range(1, n):
        low = mask >> b & ((1 << j) - 1)
        rows[j] = low
        for i in _bits(low):
            rows[i] |= 1 << j
        b += j
    if mask >> b:
        raise GraphFormatError(f"edge mask has bits beyond the {b} pairs of n={n}")
    return Graph(n, tuple(rows))


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (orders 1..62, single size byte)."""
    line = text.strip("\r\n")
    if line.startswith(">>graph6<<"):
        line = line[10:]
    if not line:
        raise GraphFormatError("empty graph6 line")
    for pos, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ord(ch)!r} at position {pos} is not a graph6 character")
    n = ord(line[0]) - 63
    if n == 63:
        raise GraphFormatError("multi-byte graph6 size (n > 62) is not supported")
    if n < 1:
        raise GraphFormatError("graph6 order 0 is not a valid graph here")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = line[1:]
    if len(body) != nbytes:
        raise GraphFormatError(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    stream = "".join(format(ord(ch) - 63, "06b") for ch in body)
    if "1" in stream[nbits:]:
        raise GraphFormatError("non-zero padding bits")
    # the stream lists pairs first-to-last, most significant bit first
    mask = int(stream[:nbits][::-1] or "0", 2)
    return from_edge_mask(n, mask)


def write_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_ORDER:
        raise GraphFormatError(f"graph6 writer supports n <= {MAX_GRAPH6_ORDER}, got {g.n}")
    nbits = g.n * (g.n - 1) // 2
    nbytes = -(-nbits // 6)
    stream = format(g.edge_mask(), f"0{nbits}b")[::-1] if nbits else ""
    stream = stream.ljust(6 * nbytes, "0")
    out = [chr(63 + g.n)]
    out.extend(chr(63 + int(stream[k : k + 6], 2)) for k in range(0, len(stream), 6))
    return "".join(out)


def parse_edge_list(lines: Iterable[str]) -> Iterator[Graph]:
    """Read consecutive edge-list blocks: ``n m`` then ``m`` lines ``u v``.

    ``#`` starts a comment; blank lines are skipped.
    """
    it = _content_lines(lines)
    for header in it:
        parts = header.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected header 'n m', got {header!r}")
        n, m = int(parts[0]), int(parts[1])
        edges = []
        for _ in range(m):
            try:
                row = next(it)
            except StopIteration:
                raise GraphFormatError(f"edge list ended after {len(edges)} of {m} edges") from None
            uv = row.split()
            if len(uv) != 2:
                raise GraphFormatError(f"expected 'u v', got {row!r}")
            edges.append((int(uv[0]), int(uv[1])))
        yield from_edge_list(n, edges)


def _content_lines(lines: Iterable[str]) -> Iterator[str]:
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


@dataclass(frozen=True)
class DistanceRow:
    source: int
    dist: tuple  # int hop counts, or UNREACHABLE

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not UNREACHABLE


def bfs_distances(g: Graph, source: int) -> DistanceRow:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range for n={g.n}")
    dist: list = [UNREACHABLE] * g.n
    dist[source] = 0
    seen = frontier = 1 << source
    level = 0
    rows = g.rows
    while frontier:
        level += 1
        nxt = 0
        for u in _bits(frontier):
            nxt |= rows[u]
        nxt &= ~seen
        for v in _bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return DistanceRow(source, tuple(dist))


def distance_rows(g: Graph) -> list[DistanceRow]:
    return [bfs_distances(g, s) for s in range(g.n)]


def enumerate_labeled(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, in increasing edge-mask order."""
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield from_edge_mask(n, mask)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.rows)))
