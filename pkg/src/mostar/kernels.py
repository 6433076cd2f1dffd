"""Vectorized index computations over stacks of adjacency matrices.

These mirror :mod:`mostar.indices` and :mod:`mostar.bounds` for a batch of
``B`` graphs of one order ``n`` at once, which is what makes the 2^21-graph
sweep at ``n = 7`` feasible. Distances use ``-1`` for unreachable pairs and
every consumer masks on ``reach`` explicitly before comparing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import pairs

__all__ = [
    "INVARIANTS",
    "BatchIndices",
    "adjacency_from_masks",
    "distances",
    "batch_indices",
    "batch_mostar",
    "check_invariants",
]

INVARIANTS = (
    "mo_le_mo_star",
    "sigma_identity",
    "diameter2_mo_eq_irr",
    "orientation_acyclic",
    "bound_trivial",
    "bound_global",
    "bound_maxdeg",
    "bound_degseq",
    "forward_edge_mo_star",
)


def adjacency_from_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """``(B, n, n)`` bool adjacency from edge masks in graph6 pair order."""
    masks = np.asarray(masks, dtype=np.uint64)
    ii, jj = _pair_arrays(n)
    a = np.zeros((masks.shape[0], n, n), dtype=bool)
    for b in range(len(ii)):
        bit = ((masks >> np.uint64(b)) & np.uint64(1)).astype(bool)
        a[:, ii[b], jj[b]] = bit
        a[:, jj[b], ii[b]] = bit
    return a


_PAIR_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _PAIR_CACHE:
        p = pairs(n)
        _PAIR_CACHE[n] = (np.array([i for i, _ in p], dtype=np.intp), np.array([j for _, j in p], dtype=np.intp))
    return _PAIR_CACHE[n]


def distances(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Level-synchronous BFS from every source in every graph.

    Returns ``(dist, reach)``: ``dist`` is int16 with -1 where unreachable.
    """
    bsz, n, _ = a.shape
    eye = np.broadcast_to(np.eye(n, dtype=bool), a.shape)
    reach = eye.copy()
    dist = np.where(eye, 0, -1).astype(np.int16)
    frontier = reach.copy()
    af = a.astype(np.float32)
    for level in range(1, n):
        nxt = np.matmul(frontier.astype(np.float32), af) > 0
        nxt &= ~reach
        if not nxt.any():
            break
        dist[nxt] = level
        reach |= nxt
        frontier = nxt
    return dist, reach


@dataclass
class BatchIndices:
    n: int
    adjacency: np.ndarray  # (B, n, n) bool
    dist: np.ndarray  # (B, n, n) int16, -1 unreachable
    reach: np.ndarray  # (B, n, n) bool
    degrees: np.ndarray  # (B, n)
    edge: np.ndarray  # (B, P) bool, pairs in graph6 order
    n_ij: np.ndarray  # (B, P) closer to the smaller-id endpoint
    n_ji: np.ndarray
    mo: np.ndarray  # (B,)
    mo_star: np.ndarray
    irr: np.ndarray
    sigma: np.ndarray  # (B, n)
    connected: np.ndarray  # (B,)
    diameter: np.ndarray  # (B,), meaningful where connected


def _unbalance_counts(dist: np.ndarray, reach: np.ndarray, ii: np.ndarray, jj: np.ndarray):
    di = dist[:, :, ii]
    dj = dist[:, :, jj]
    r = reach[:, :, ii]
    n_ij = ((di < dj) & r).sum(axis=1, dtype=np.int64)
    n_ji = ((dj < di) & r).sum(axis=1, dtype=np.int64)
    return n_ij, n_ji


def batch_indices(a: np.ndarray) -> BatchIndices:
    a = np.asarray(a, dtype=bool)
    n = a.shape[1]
    ii, jj = _pair_arrays(n)
    dist, reach = distances(a)
    deg = a.sum(axis=2, dtype=np.int64)
    edge = a[:, ii, jj]
    n_ij, n_ji = _unbalance_counts(dist, reach, ii, jj)
    mo = (np.abs(n_ij - n_ji) * edge).sum(axis=1)
    di, dj = deg[:, ii], deg[:, jj]
    mo_star = ((n - np.minimum(di, dj)) * edge).sum(axis=1)
    irr = (np.abs(di - dj) * edge).sum(axis=1)
    sigma = np.where(reach, dist, 0).sum(axis=2, dtype=np.int64)
    connected = reach.all(axis=(1, 2))
    diameter = dist.max(axis=(1, 2)).astype(np.int64)
    return BatchIndices(n, a, dist, reach, deg, edge, n_ij, n_ji, mo, mo_star, irr, sigma, connected, diameter)


def batch_mostar(a: np.ndarray, max_elements: int = 1 << 22) -> np.ndarray:
    """Mostar index of each graph in the stack, chunked to bound memory."""
    a = np.asarray(a, dtype=bool)
    bsz, n, _ = a.shape
    ii, jj = _pair_arrays(n)
    step = max(1, max_elements // max(1, n * len(ii)))
    out = np.empty(bsz, dtype=np.int64)
    for lo in range(0, bsz, step):
        chunk = a[lo : lo + step]
        dist, reach = distances(chunk)
        n_ij, n_ji = _unbalance_counts(dist, reach, ii, jj)
        out[lo : lo + step] = (np.abs(n_ij - n_ji) * chunk[:, ii, jj]).sum(axis=1)
    return out


def _closure(m: np.ndarray) -> np.ndarray:
    n = m.shape[1]
    r = m | np.eye(n, dtype=bool)
    steps = 1
    while steps < n:
        rf = r.astype(np.float32)
        r = r | (np.matmul(rf, rf) > 0)
        steps *= 2
    return r


def _degseq_bounds(deg: np.ndarray, n: int) -> np.ndarray:
    d = np.sort(deg, axis=1)
    p = np.arange(n)
    e_minus = np.maximum(0, d - p)
    e_plus = np.minimum(d, n - 1 - p)
    m = deg.sum(axis=1) // 2
    plus_prefix = np.cumsum(e_plus, axis=1)
    minus_suffix = e_minus.sum(axis=1, keepdims=True) - np.cumsum(e_minus, axis=1)
    ok = m[:, None] <= plus_prefix + minus_suffix
    k = ok.argmax(axis=1) + 1  # 1-based; ok[:, -1] always holds for real degree sequences
    use_plus = p[None, :] < (k - 1)[:, None]
    s = np.where(use_plus, e_plus * d, e_minus * d).sum(axis=1)
    return n * m - s


def _forward_edge_mo_star(a: np.ndarray, deg: np.ndarray, n: int) -> np.ndarray:
    order = np.argsort(deg, axis=1, kind="stable")
    rows = np.take_along_axis(a, order[:, :, None], axis=1)
    ap = np.take_along_axis(rows, order[:, None, :], axis=2)
    later = np.triu(np.ones((n, n), dtype=bool), 1)
    e = (ap & later).sum(axis=2)
    ds = np.take_along_axis(deg, order, axis=1)
    return (e * (n - ds)).sum(axis=1)


def check_invariants(bi: BatchIndices, checks=INVARIANTS) -> dict[str, np.ndarray]:
    """Per-invariant boolean arrays, True where the graph violates it."""
    n = bi.n
    ii, jj = _pair_arrays(n)
    out = {}
    v = bi.mo_star
    if "mo_le_mo_star" in checks:
        out["mo_le_mo_star"] = bi.mo > v
    if "sigma_identity" in checks:
        lhs = bi.n_ij - bi.n_ji
        rhs = bi.sigma[:, jj] - bi.sigma[:, ii]
        out["sigma_identity"] = (bi.edge & (lhs != rhs)).any(axis=1)
    if "diameter2_mo_eq_irr" in checks:
        out["diameter2_mo_eq_irr"] = bi.connected & (bi.diameter <= 2) & (bi.mo != bi.irr)
    if "orientation_acyclic" in checks:
        diff = bi.n_ij - bi.n_ji
        oriented = np.zeros_like(bi.adjacency)
        # n_ij > n_ji: tail j -> head i
        toward_i = bi.edge & (diff > 0)
        toward_j = bi.edge & (diff < 0)
        level = bi.edge & (diff == 0)
        oriented[:, jj, ii] = toward_i
        oriented[:, ii, jj] = toward_j
        mixed = oriented.copy()
        mixed[:, ii, jj] |= level
        mixed[:, jj, ii] |= level
        r = _closure(mixed)
        out["orientation_acyclic"] = (oriented & np.swapaxes(r, 1, 2)).any(axis=(1, 2))
    if "bound_trivial" in checks:
        out["bound_trivial"] = ~(2 * v < n**3)
    if "bound_global" in checks:
        out["bound_global"] = 3 * (v + n**3) ** 2 > 4 * n**6
    if "bound_maxdeg" in checks:
        dmax = bi.degrees.max(axis=1)
        big_a = 2 * dmax * dmax * n + dmax * n * n - v
        ok = np.where(
            dmax == 0,
            v <= 0,
            (big_a >= 0) & (4 * dmax * dmax * n * n * (dmax * dmax + dmax * n) <= big_a * big_a),
        )
        out["bound_maxdeg"] = ~ok
    if "bound_degseq" in checks:
        out["bound_degseq"] = v > _degseq_bounds(bi.degrees, n)
    if "forward_edge_mo_star" in checks:
        out["forward_edge_mo_star"] = _forward_edge_mo_star(bi.adjacency, bi.degrees, n) != v
    return out
