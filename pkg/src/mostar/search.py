"""Exhaustive scans, graph6 corpus scans and edge-flip local search.

Scans reduce per-chunk results in chunk order, keeping the earliest graph on
ties, so maxima and witnesses do not depend on the worker count.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from . import kernels
from .constructions import best_split_mostar
from .graph_core import MAX_ENUM_ORDER, Graph, GraphFormatError, from_edge_mask, pair_index, pairs, parse_graph6, write_graph6
from .indices import mostar, mostar_star, partial_orientation, zero_degree_pairs

__all__ = [
    "INVARIANTS",
    "ScanResult",
    "CorpusScanResult",
    "LocalSearchConfig",
    "LocalSearchResult",
    "default_workers",
    "exhaustive_scan",
    "scan_graphs",
    "corpus_scan",
    "local_search_max_mo",
]

log = logging.getLogger(__name__)

INVARIANTS = kernels.INVARIANTS
CHUNK = 1 << 16


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("MOSTAR_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class ScanResult:
    n: int
    graphs_scanned: int = 0
    max_mo: int | None = None
    max_mo_witness: str | None = None
    max_mo_star: int | None = None
    max_mo_star_witness: str | None = None
    violations: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "graphs_scanned": self.graphs_scanned,
            "max_mo": self.max_mo,
            "max_mo_witness": self.max_mo_witness,
            "max_mo_star": self.max_mo_star,
            "max_mo_star_witness": self.max_mo_star_witness,
            "violations": [list(v) for v in self.violations],
        }


@dataclass
class CorpusScanResult:
    by_order: dict[int, ScanResult] = field(default_factory=dict)
    parse_failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def graphs_scanned(self) -> int:
        return sum(r.graphs_scanned for r in self.by_order.values())

    @property
    def violations(self) -> list[tuple[str, str]]:
        return [v for n in sorted(self.by_order) for v in self.by_order[n].violations]

    def to_dict(self) -> dict:
        return {
            "graphs_scanned": self.graphs_scanned,
            "by_order": [self.by_order[n].to_dict() for n in sorted(self.by_order)],
            "parse_failures": [list(p) for p in self.parse_failures],
        }


# A chunk summary: (count, (mo, key), (mo_star, key), [(invariant, key)]).
# key is the graph's position in the scan (edge mask or input sequence number).


def _summarize(a: np.ndarray, keys: np.ndarray, checks) -> tuple:
    bi = kernels.batch_indices(a)
    flags = kernels.check_invariants(bi, checks)
    i_mo = int(np.argmax(bi.mo))
    i_star = int(np.argmax(bi.mo_star))
    bad = []
    for name in INVARIANTS:
        if name in flags:
            bad.extend((name, int(keys[i])) for i in np.flatnonzero(flags[name]))
    return (
        len(keys),
        (int(bi.mo[i_mo]), int(keys[i_mo])),
        (int(bi.mo_star[i_star]), int(keys[i_star])),
        bad,
    )


def _better(a, b):
    """Larger value wins, earlier key on ties."""
    if a is None:
        return b
    if b is None:
        return a
    return b if (b[0], -b[1]) > (a[0], -a[1]) else a


def _merge(parts: Iterable[tuple]):
    count, best_mo, best_star, bad = 0, None, None, []
    for c, mo, star, v in parts:
        count += c
        best_mo = _better(best_mo, mo)
        best_star = _better(best_star, star)
        bad.extend(v)
    bad.sort(key=lambda t: (t[1], INVARIANTS.index(t[0])))
    return count, best_mo, best_star, bad


def _mask_chunk(args) -> tuple:
    n, lo, hi, checks = args
    masks = np.arange(lo, hi, dtype=np.uint64)
    return _summarize(kernels.adjacency_from_masks(n, masks), masks, checks)


def _map(func, jobs: list, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs))


def _verify_witness(g6: str, mo_value: int | None = None, mo_star_value: int | None = None) -> None:
    g = parse_graph6(g6)
    if mo_value is not None and mostar(g) != mo_value:
        raise RuntimeError(f"witness {g6} does not reproduce Mo={mo_value}")
    if mo_star_value is not None and mostar_star(g) != mo_star_value:
        raise RuntimeError(f"witness {g6} does not reproduce Mo*={mo_star_value}")


def exhaustive_scan(n: int, checks=INVARIANTS, workers: int | None = None, chunk: int = CHUNK) -> ScanResult:
    """Run every invariant on all 2^(n(n-1)/2) labeled graphs of order n."""
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"exhaustive scan supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")
    unknown = set(checks) - set(INVARIANTS)
    if unknown:
        raise ValueError(f"unknown invariants: {sorted(unknown)}")
    total = 1 << (n * (n - 1) // 2)
    jobs = [(n, lo, min(lo + chunk, total), tuple(checks)) for lo in range(0, total, chunk)]
    workers = default_workers() if workers is None else workers
    log.info("exhaustive scan n=%d: %d graphs in %d chunks, %d workers", n, total, len(jobs), workers)
    count, best_mo, best_star, bad = _merge(_map(_mask_chunk, jobs, workers))

    def g6(mask: int) -> str:
        return write_graph6(from_edge_mask(n, mask))

    res = ScanResult(
        n=n,
        graphs_scanned=count,
        max_mo=best_mo[0],
        max_mo_witness=g6(best_mo[1]),
        max_mo_star=best_star[0],
        max_mo_star_witness=g6(best_star[1]),
        violations=[(name, g6(mask)) for name, mask in bad],
    )
    _verify_witness(res.max_mo_witness, mo_value=res.max_mo)
    _verify_witness(res.max_mo_star_witness, mo_star_value=res.max_mo_star)
    return res


def _rows_to_matrix(g: Graph) -> np.ndarray:
    return g.to_numpy().astype(bool)


def scan_graphs(graphs: Iterable[Graph], checks=INVARIANTS) -> dict[int, ScanResult]:
    """Same checks as the exhaustive scan over arbitrary graphs, grouped by order."""
    pending: dict[int, list[tuple[int, Graph]]] = {}
    parts: dict[int, list[tuple]] = {}
    witnesses: dict[int, dict[int, Graph]] = {}

    def flush(n: int) -> None:
        batch = pending.pop(n, [])
        if not batch:
            return
        a = np.stack([_rows_to_matrix(g) for _, g in batch])
        keys = np.array([seq for seq, _ in batch], dtype=np.int64)
        part = _summarize(a, keys, checks)
        parts.setdefault(n, []).append(part)
        keep = {part[1][1], part[2][1]} | {k for _, k in part[3]}
        witnesses.setdefault(n, {}).update((seq, g) for seq, g in batch if seq in keep)

    for seq, g in enumerate(graphs):
        pending.setdefault(g.n, []).append((seq, g))
        if len(pending[g.n]) >= _batch_size(g.n):
            flush(g.n)
    for n in list(pending):
        flush(n)

    out = {}
    for n in sorted(parts):
        count, best_mo, best_star, bad = _merge(parts[n])
        w = witnesses[n]
        res = ScanResult(
            n=n,
            graphs_scanned=count,
            max_mo=best_mo[0],
            max_mo_witness=write_graph6(w[best_mo[1]]),
            max_mo_star=best_star[0],
            max_mo_star_witness=write_graph6(w[best_star[1]]),
            violations=[(name, write_graph6(w[seq])) for name, seq in bad],
        )
        _verify_witness(res.max_mo_witness, mo_value=res.max_mo)
        _verify_witness(res.max_mo_star_witness, mo_star_value=res.max_mo_star)
        out[n] = res
    return out


def _batch_size(n: int) -> int:
    p = max(1, n * (n - 1) // 2)
    return max(1, min(CHUNK, (1 << 22) // (n * p)))


def corpus_scan(path: str | os.PathLike, checks=INVARIANTS) -> CorpusScanResult:
    """Scan a graph6 file; malformed lines are recorded and skipped."""
    failures: list[tuple[int, str]] = []

    def graphs():
        with open(Path(path), encoding="ascii", errors="replace") as fh:
            for lineno, line in enumerate(fh, 1):
                text = line.strip()
                if not text:
                    continue
                try:
                    yield parse_graph6(text)
                except GraphFormatError as exc:
                    log.warning("line %d: %s", lineno, exc)
                    failures.append((lineno, str(exc)))

    by_order = scan_graphs(graphs(), checks)
    return CorpusScanResult(by_order, failures)


@dataclass(frozen=True)
class LocalSearchConfig:
    n: int
    restarts: int = 20
    seed: int = 0
    max_steps: int = 10_000
    orientation_hint: bool = False

    def __post_init__(self):
        if not 4 <= self.n <= 60:
            raise ValueError(f"local search supports 4 <= n <= 60, got {self.n}")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


@dataclass(frozen=True)
class LocalSearchResult:
    config: LocalSearchConfig
    best_mo: int
    witness: str
    best_restart: int
    restart_values: tuple[int, ...]
    baseline_k: int
    baseline_mo: int

    @property
    def ratio(self) -> float:
        return self.best_mo / self.baseline_mo if self.baseline_mo else float("nan")

    def to_dict(self) -> dict:
        c = self.config
        return {
            "n": c.n,
            "restarts": c.restarts,
            "seed": c.seed,
            "max_steps": c.max_steps,
            "orientation_hint": c.orientation_hint,
            "best_mo": self.best_mo,
            "witness": self.witness,
            "best_restart": self.best_restart,
            "restart_values": list(self.restart_values),
            "baseline_k": self.baseline_k,
            "baseline_mo": self.baseline_mo,
            "ratio": self.ratio,
        }


def _climb(args) -> tuple[int, int]:
    """One seeded restart; returns (Mo, edge mask) of the local optimum."""
    config, restart = args
    n = config.n
    plist = pairs(n)
    ii = np.array([i for i, _ in plist])
    jj = np.array([j for _, j in plist])
    rng = np.random.default_rng(config.seed + restart)
    a = np.zeros((n, n), dtype=bool)
    bits = rng.random(len(plist)) < 0.5
    a[ii, jj] = bits
    a[jj, ii] = bits
    current = int(kernels.batch_mostar(a[None])[0])
    idx = np.arange(len(plist))
    for _ in range(config.max_steps):
        nb = np.repeat(a[None], len(plist), axis=0)
        nb[idx, ii, jj] ^= True
        nb[idx, jj, ii] ^= True
        values = kernels.batch_mostar(nb)
        best = int(values.max())
        if best <= current:
            break
        candidates = np.flatnonzero(values == best)
        pick = int(candidates[0])
        if config.orientation_hint and len(candidates) > 1:
            pick = _hinted(a, plist, candidates, pick)
        i, j = plist[pick]
        a[i, j] = a[j, i] = not a[i, j]
        current = best
    mask = 0
    for b, (i, j) in enumerate(plist):
        if a[i, j]:
            mask |= 1 << b
    return current, mask


def _hinted(a: np.ndarray, plist, candidates, default: int) -> int:
    """Prefer a tied flip that adds an edge from a zero-outdegree to a zero-indegree vertex."""
    n = a.shape[0]
    g = Graph(n, tuple(int(sum(1 << v for v in np.flatnonzero(a[u]))) for u in range(n)))
    preferred = {pair_index(x, y) for x, y in zero_degree_pairs(partial_orientation(g), g)}
    for c in candidates:
        if int(c) in preferred:
            return int(c)
    return default


def local_search_max_mo(config: LocalSearchConfig, workers: int | None = None) -> LocalSearchResult:
    workers = default_workers() if workers is None else workers
    runs = _map(_climb, [(config, r) for r in range(config.restarts)], workers)
    best_r = max(range(len(runs)), key=lambda r: (runs[r][0], -r))
    value, mask = runs[best_r]
    witness = write_graph6(from_edge_mask(config.n, mask))
    _verify_witness(witness, mo_value=value)
    k, base = best_split_mostar(config.n)
    return LocalSearchResult(config, value, witness, best_r, tuple(v for v, _ in runs), k, base)
