"""Counterexample search for the conjecture that a graph has at least d_c(G)
inclusion-minimal independent sets of positive difference.

Small graphs (``n <= FAST_MAX_N``) go through :func:`batch_invariants`, a
numpy kernel that evaluates a whole batch of graphs at once by scanning all
``2**n`` vertex subsets.  Larger graphs use the polynomial pipeline (ker by
shrinking, then enumeration inside ker).  Every record can be replayed from
its graph6 string through the polynomial pipeline.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .critical import critical_difference, ker_by_shrinking
from .graph import Graph, format_edge_list, parse_graph6, read_graph6_lines, to_graph6
from .minimal import minimal_positive_masks

FAST_MAX_N = 10
MAX_EXHAUSTIVE_N = 8
CSV_HEADER = ("graph6", "n", "m", "d_c", "count", "margin", "holds")
VIOLATION_EXIT_CODE = 3


@dataclass(frozen=True)
class ConjectureRecord:
    graph6: str
    n: int
    m: int
    d_c: int | None
    count_minimal_positive: int | None
    skipped: str | None = None

    @property
    def margin(self) -> int | None:
        if self.skipped is not None:
            return None
        return self.count_minimal_positive - self.d_c

    @property
    def holds(self) -> bool | None:
        if self.skipped is not None:
            return None
        return holds(self.count_minimal_positive, self.d_c)

    def csv_row(self) -> tuple:
        if self.skipped is not None:
            return (self.graph6, self.n, self.m, "", "", "", "skipped")
        return (
            self.graph6, self.n, self.m, self.d_c, self.count_minimal_positive,
            self.margin, "true" if self.holds else "false",
        )


def holds(count: int, d_c: int) -> bool:
    """The conjectured inequality; vacuous when d_c = 0."""
    return count >= d_c


@dataclass(frozen=True)
class CorpusSpec:
    """Where the graphs come from.

    ``source`` is ``"exhaustive"`` (all labelled graphs for each n in
    ``n_min..n_max``), ``"random"`` (``count`` samples of G(n, p) from
    ``seed``) or ``"graph6"`` (one graph per line of ``path``).
    """

    source: str
    n_min: int = 1
    n_max: int = 1
    p: float = 0.5
    seed: int = 0
    count: int = 0
    path: str | None = None
    connected_only: bool = False
    filter_n_min: int | None = None
    filter_n_max: int | None = None
    allow_n8: bool = False

    def __post_init__(self):
        if self.source not in ("exhaustive", "random", "graph6"):
            raise ValueError(f"unknown corpus source {self.source!r}")
        if self.source == "exhaustive":
            top = MAX_EXHAUSTIVE_N if self.allow_n8 else MAX_EXHAUSTIVE_N - 1
            if not 0 <= self.n_min <= self.n_max:
                raise ValueError("exhaustive range must satisfy 0 <= n_min <= n_max")
            if self.n_max > top:
                hint = "" if self.allow_n8 else " (n=8 needs allow_n8)"
                raise ValueError(f"exhaustive scans are limited to n <= {top}{hint}")
        if self.source == "random" and not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.source == "graph6" and not self.path:
            raise ValueError("graph6 corpus needs a path")

    def accepts(self, G: Graph) -> bool:
        if self.filter_n_min is not None and G.n < self.filter_n_min:
            return False
        if self.filter_n_max is not None and G.n > self.filter_n_max:
            return False
        return not self.connected_only or G.is_connected()


# -- graph generators ----------------------------------------------------------


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    """Bit ``k`` of ``mask`` is the k-th pair of ``(0,1), (0,2), ..., (n-2,n-1)``."""
    adj = [0] * n
    for k, (i, j) in enumerate(_pairs(n)):
        if mask >> k & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def generate_exhaustive(n: int, allow_n8: bool = False) -> Iterator[Graph]:
    """All ``2**(n(n-1)/2)`` labelled graphs on ``n`` vertices, in edge-mask order."""
    top = MAX_EXHAUSTIVE_N if allow_n8 else MAX_EXHAUSTIVE_N - 1
    if n > top or n < 0:
        raise ValueError(f"exhaustive generation supports 0 <= n <= {top}")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_edge_mask(n, mask)


def _exhaustive_adjacency(n: int, start: int, stop: int) -> np.ndarray:
    """Adjacency masks, shape ``(n, stop - start)``, of edge masks start..stop-1."""
    masks = np.arange(start, stop, dtype=np.int64)
    adj = np.zeros((n, len(masks)), dtype=np.int64)
    for k, (i, j) in enumerate(_pairs(n)):
        bit = (masks >> k) & 1
        adj[i] |= bit << j
        adj[j] |= bit << i
    return adj


def generate_random(n: int, p: float, seed: int, count: int) -> Iterator[Graph]:
    """``count`` samples of G(n, p).

    Uses numpy's PCG64 bit generator seeded with ``seed``; for each graph one
    uniform double is drawn per vertex pair in lexicographic pair order and
    the edge is kept when the draw is ``< p``.  The stream is identical on
    every platform for a fixed ``(n, p, seed, count)``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = _pairs(n)
    for _ in range(count):
        draws = rng.random(len(pairs))
        yield Graph.from_edges(n, (pr for pr, x in zip(pairs, draws) if x < p))


# -- the batch kernel ------------------------------------------------------------

_POPCOUNT = np.array([bin(i).count("1") for i in range(1 << FAST_MAX_N)], dtype=np.int16)


@dataclass
class BatchResult:
    d_c: np.ndarray
    count: np.ndarray
    ker: np.ndarray
    union: np.ndarray
    m: np.ndarray


def batch_invariants(adj: np.ndarray) -> BatchResult:
    """d_c, ker and the number of minimal positive sets for a batch of graphs.

    ``adj`` has shape ``(n, B)``: row ``v`` holds the neighbour masks of
    vertex ``v`` across the batch.  Works by brute force over all vertex
    subsets; ker is the intersection of the critical independent sets and
    ``union`` the union of the minimal positive sets.
    """
    n, B = adj.shape
    if n > FAST_MAX_N:
        raise ValueError(f"batch kernel supports n <= {FAST_MAX_N}")
    S = 1 << n
    adj = adj.astype(np.int64)
    nb = np.zeros((S, B), dtype=np.int64)
    for mask in range(1, S):
        low = mask & -mask
        nb[mask] = nb[mask ^ low] | adj[low.bit_length() - 1]
    masks = np.arange(S, dtype=np.int64)[:, None]
    indep = (nb & masks) == 0
    d = _POPCOUNT[:S, None] - _POPCOUNT[nb]
    d_ind = np.where(indep, d, np.int16(-S))
    d_c = d_ind.max(axis=0)

    full = np.int64(S - 1)
    crit = d_ind == d_c[None, :]
    ker = np.bitwise_and.reduce(np.where(crit, masks, full), axis=0)

    positive = indep & (d > 0)
    has_pos = np.zeros((S, B), dtype=bool)  # some subset (itself included) is positive
    minimal = np.zeros((S, B), dtype=bool)
    for mask in range(S):
        below = np.zeros(B, dtype=bool)
        rest = mask
        while rest:
            low = rest & -rest
            below |= has_pos[mask ^ low]
            rest ^= low
        minimal[mask] = positive[mask] & ~below
        has_pos[mask] = positive[mask] | below
    count = minimal.sum(axis=0)
    union = np.bitwise_or.reduce(np.where(minimal, masks, 0), axis=0)
    m = _POPCOUNT[adj & (S - 1)].sum(axis=0) // 2
    return BatchResult(d_c.astype(np.int64), count.astype(np.int64), ker, union, m.astype(np.int64))


def batch_graph6(adj: np.ndarray) -> list[str]:
    """graph6 strings for a batch of adjacency masks shaped ``(n, B)``."""
    n, B = adj.shape
    bits = [(adj[u] >> v) & 1 for v in range(1, n) for u in range(v)]
    nbytes = (len(bits) + 5) // 6
    out = np.zeros((B, 1 + nbytes), dtype=np.uint8)
    out[:, 0] = n + 63
    for k, col in enumerate(bits):
        out[:, 1 + k // 6] |= (col << (5 - k % 6)).astype(np.uint8)
    out[:, 1:] += 63
    raw = out.tobytes()
    width = 1 + nbytes
    return [raw[i * width:(i + 1) * width].decode("ascii") for i in range(B)]


def _check_batch(res: BatchResult) -> None:
    if not np.array_equal(res.union, res.ker):
        raise AssertionError("union of minimal positive sets differs from ker in batch kernel")
    zero_count = res.count == 0
    if not (np.array_equal(zero_count, res.d_c == 0) and np.array_equal(zero_count, res.ker == 0)):
        raise AssertionError("count == 0, d_c == 0 and ker == {} disagree in batch kernel")


def _records_from_batch(adj: np.ndarray) -> list[ConjectureRecord]:
    res = batch_invariants(adj)
    _check_batch(res)
    names = batch_graph6(adj)
    n = adj.shape[0]
    return [
        ConjectureRecord(g6, n, m, dc, c)
        for g6, m, dc, c in zip(names, res.m.tolist(), res.d_c.tolist(), res.count.tolist())
    ]


def _adjacency_array(graphs: Sequence[Graph]) -> np.ndarray:
    n = graphs[0].n
    return np.array([G.adj for G in graphs], dtype=np.int64).reshape(len(graphs), n).T


def record_for(G: Graph, caps: Caps = DEFAULT_CAPS, graph6: str | None = None) -> ConjectureRecord:
    """One record through the polynomial pipeline."""
    g6 = graph6 if graph6 is not None else to_graph6(G)
    d_c = critical_difference(G)
    K = ker_by_shrinking(G)
    try:
        count = len(minimal_positive_masks(G.adj, K.mask, caps.enumeration))
    except CapExceeded as exc:
        return ConjectureRecord(g6, G.n, G.m, None, None, skipped=str(exc))
    if (count == 0) != (d_c == 0) or (d_c == 0) != (not K):
        raise AssertionError(f"{g6}: count, d_c and ker disagree on emptiness")
    return ConjectureRecord(g6, G.n, G.m, d_c, count)


def records_for_graphs(graphs: Sequence[Graph], caps: Caps = DEFAULT_CAPS) -> list[ConjectureRecord]:
    """Records in input order; small graphs are batched through the kernel."""
    out: list[ConjectureRecord | None] = [None] * len(graphs)
    by_n: dict[int, list[int]] = {}
    for i, G in enumerate(graphs):
        if 1 <= G.n <= FAST_MAX_N:
            by_n.setdefault(G.n, []).append(i)
        else:
            out[i] = record_for(G, caps)
    for n, idx in by_n.items():
        recs = _records_from_batch(_adjacency_array([graphs[i] for i in idx]))
        for i, rec in zip(idx, recs):
            out[i] = rec
    return out  # type: ignore[return-value]


def replay(record: ConjectureRecord, caps: Caps = DEFAULT_CAPS) -> ConjectureRecord:
    """Recompute a record from its graph6 string via the polynomial pipeline."""
    return record_for(parse_graph6(record.graph6), caps, graph6=record.graph6)


# -- scanning --------------------------------------------------------------------

_EXHAUSTIVE_CHUNK = 1 << 14


def _work_items(spec: CorpusSpec, caps: Caps) -> Iterator[tuple]:
    if spec.source == "exhaustive":
        for n in range(spec.n_min, spec.n_max + 1):
            total = 1 << (n * (n - 1) // 2)
            for start in range(0, total, _EXHAUSTIVE_CHUNK):
                yield ("exhaustive", n, start, min(total, start + _EXHAUSTIVE_CHUNK), spec, caps)
        return
    if spec.source == "random":
        stream = generate_random(spec.n_min, spec.p, spec.seed, spec.count)
    else:
        stream = iter(read_graph6_lines(Path(spec.path).read_text()))
    while True:
        block = list(islice(stream, 2048))
        if not block:
            return
        yield ("graphs", [to_graph6(G) for G in block], spec, caps)


def _run_item(item: tuple) -> list[ConjectureRecord]:
    if item[0] == "exhaustive":
        _, n, start, stop, spec, caps = item
        if n == 0:
            recs = [ConjectureRecord(to_graph6(Graph.empty(0)), 0, 0, 0, 0)]
        else:
            recs = _records_from_batch(_exhaustive_adjacency(n, start, stop))
        if spec.connected_only or spec.filter_n_min is not None or spec.filter_n_max is not None:
            recs = [r for r in recs if spec.accepts(parse_graph6(r.graph6))]
        return recs
    _, names, spec, caps = item
    graphs = [parse_graph6(g6) for g6 in names]
    graphs = [G for G in graphs if spec.accepts(G)]
    zero = [i for i, G in enumerate(graphs) if G.n == 0]
    recs = records_for_graphs([G for G in graphs if G.n > 0], caps)
    for i in zero:
        recs.insert(i, ConjectureRecord(to_graph6(graphs[i]), 0, 0, 0, 0))
    return recs


def scan(spec: CorpusSpec, caps: Caps = DEFAULT_CAPS, jobs: int = 1) -> Iterator[ConjectureRecord]:
    """Yield one record per graph of the corpus, in corpus order.

    With ``jobs > 1`` work chunks run in a process pool; output order is
    preserved.
    """
    items = _work_items(spec, caps)
    if jobs <= 1:
        for item in items:
            yield from _run_item(item)
        return
    import multiprocessing

    with multiprocessing.get_context("spawn").Pool(jobs) as pool:
        for recs in pool.imap(_run_item, items):
            yield from recs


@dataclass
class ScanSummary:
    graphs: int = 0
    scanned: int = 0
    skipped: int = 0
    violations: int = 0
    min_margin: int | None = None
    margin_histogram: Counter = field(default_factory=Counter)
    d_c_histogram: Counter = field(default_factory=Counter)
    violation_graphs: list[str] = field(default_factory=list)
    skipped_graphs: list[str] = field(default_factory=list)

    def add(self, rec: ConjectureRecord) -> None:
        self.graphs += 1
        if rec.skipped is not None:
            self.skipped += 1
            self.skipped_graphs.append(rec.graph6)
            return
        self.scanned += 1
        margin = rec.margin
        self.margin_histogram[margin] += 1
        self.d_c_histogram[rec.d_c] += 1
        if self.min_margin is None or margin < self.min_margin:
            self.min_margin = margin
        if not rec.holds:
            self.violations += 1
            self.violation_graphs.append(rec.graph6)

    def to_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "scanned": self.scanned,
            "skipped": self.skipped,
            "violations": self.violations,
            "min_margin": self.min_margin,
            "margin_histogram": {str(k): v for k, v in sorted(self.margin_histogram.items())},
            "d_c_histogram": {str(k): v for k, v in sorted(self.d_c_histogram.items())},
            "violation_graphs": list(self.violation_graphs),
            "skipped_graphs": list(self.skipped_graphs),
        }


def write_counterexample(rec: ConjectureRecord, directory: str | os.PathLike, index: int) -> Path:
    """Dump a violating graph as a replayable ``.edges`` file."""
    G = parse_graph6(rec.graph6)
    path = Path(directory) / f"counterexample_{index:06d}.edges"
    comment = (
        f"conjecture violation: graph6 {rec.graph6}\n"
        f"d_c={rec.d_c} minimal_positive_sets={rec.count_minimal_positive}"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(G, comment))
    return path


def run_scan(
    spec: CorpusSpec,
    csv_out: io.TextIOBase | None,
    violations_dir: str | os.PathLike,
    caps: Caps = DEFAULT_CAPS,
    jobs: int = 1,
) -> ScanSummary:
    """Scan, streaming CSV rows and writing each violation as soon as it appears."""
    summary = ScanSummary()
    writer = None
    if csv_out is not None:
        writer = csv.writer(csv_out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
    for index, rec in enumerate(scan(spec, caps, jobs)):
        summary.add(rec)
        if writer is not None:
            writer.writerow(rec.csv_row())
        if rec.holds is False:
            write_counterexample(rec, violations_dir, index)
            if csv_out is not None:
                csv_out.flush()
    return summary


def summary_json(summary: ScanSummary) -> str:
    return json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n"


def record_from_row(row: Iterable[str]) -> ConjectureRecord:
    g6, n, m, d_c, count, _margin, status = list(row)
    if status == "skipped":
        return ConjectureRecord(g6, int(n), int(m), None, None, skipped="skipped")
    return ConjectureRecord(g6, int(n), int(m), int(d_c), int(count))


__all__ = [
    "BatchResult",
    "ConjectureRecord",
    "CorpusSpec",
    "ScanSummary",
    "batch_graph6",
    "batch_invariants",
    "generate_exhaustive",
    "generate_random",
    "graph_from_edge_mask",
    "holds",
    "record_for",
    "record_from_row",
    "records_for_graphs",
    "replay",
    "run_scan",
    "scan",
    "summary_json",
    "write_counterexample",
]
