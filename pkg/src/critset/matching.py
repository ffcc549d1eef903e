"""Bipartite matching and Hall-condition machinery.

:func:`max_matching` is Hopcroft-Karp over a :class:`BipartiteGraph`.  The
graph-level helpers (:func:`saturating_matching`, :func:`tight_set`) build
the bipartite instance formed by the edges of a graph between two disjoint
vertex sets and answer with either a matching or a Hall violator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .graph import Graph, SetLike, VertexSet, as_mask, is_independent, neighborhood_mask, popcount


class ContractError(ValueError):
    """A documented precondition of an operation does not hold."""


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices ``0..left_size-1``, right vertices ``0..right_size-1``;
    ``adj[u]`` lists the right neighbours of left vertex ``u`` in ascending order."""

    left_size: int
    right_size: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.left_size:
            raise ValueError("adjacency must have one row per left vertex")
        for u, row in enumerate(self.adj):
            if list(row) != sorted(set(row)):
                raise ValueError(f"left vertex {u}: neighbours must be sorted and distinct")
            if row and (row[0] < 0 or row[-1] >= self.right_size):
                raise ValueError(f"left vertex {u}: right id out of range")

    @classmethod
    def from_edges(cls, left_size: int, right_size: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows: list[set[int]] = [set() for _ in range(left_size)]
        for u, r in edges:
            rows[u].add(r)
        return cls(left_size, right_size, tuple(tuple(sorted(s)) for s in rows))

    @cached_property
    def right_adj(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.right_size)]
        for u, row in enumerate(self.adj):
            for r in row:
                rows[r].append(u)
        return tuple(tuple(r) for r in rows)

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self.adj)

    def has_edge(self, u: int, r: int) -> bool:
        row = self.adj[u]
        return r in row

    def edges(self) -> list[tuple[int, int]]:
        return [(u, r) for u, row in enumerate(self.adj) for r in row]

    def to_graph(self) -> Graph:
        """The same bipartite graph as a :class:`Graph`; right vertex ``r``
        becomes vertex ``left_size + r``."""
        L = self.left_size
        return Graph.from_edges(L + self.right_size, ((u, L + r) for u, r in self.edges()))


@dataclass(frozen=True)
class Matching:
    """A set of disjoint ``(left, right)`` pairs, kept sorted."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))
        lefts = [a for a, _ in self.pairs]
        rights = [b for _, b in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("matching repeats a vertex")

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    @cached_property
    def left_to_right(self) -> dict[int, int]:
        return dict(self.pairs)

    @cached_property
    def right_to_left(self) -> dict[int, int]:
        return {b: a for a, b in self.pairs}

    def replace(self, old: tuple[int, int], new: tuple[int, int]) -> "Matching":
        if old not in self.pairs:
            raise KeyError(f"{old} is not in the matching")
        return Matching(tuple(p for p in self.pairs if p != old) + (new,))

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


@dataclass(frozen=True)
class HallViolator:
    """A nonempty source set ``witness`` whose neighbourhood among the targets,
    ``neighbors``, is smaller than it."""

    witness: VertexSet
    neighbors: VertexSet

    def __post_init__(self):
        if not self.witness or len(self.neighbors) >= len(self.witness):
            raise AssertionError(
                f"not a Hall violator: |B|={len(self.witness)}, |N(B)|={len(self.neighbors)}"
            )

    @property
    def deficiency(self) -> int:
        return len(self.witness) - len(self.neighbors)


def _hopcroft_karp(L: int, adj: Sequence[Sequence[int]], R: int) -> tuple[list[int], list[int]]:
    match_l = [-1] * L
    match_r = [-1] * R
    inf = L + 1
    while True:
        dist = [inf] * L
        queue = deque()
        for u in range(L):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
        reachable_free = False
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                w = match_r[r]
                if w < 0:
                    reachable_free = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not reachable_free:
            return match_l, match_r

        ptr = [0] * L
        for s in range(L):
            if match_l[s] >= 0:
                continue
            stack = [s]
            rights: list[int] = []
            while stack:
                u = stack[-1]
                row = adj[u]
                moved = False
                while ptr[u] < len(row):
                    r = row[ptr[u]]
                    ptr[u] += 1
                    w = match_r[r]
                    if w < 0:
                        rights.append(r)
                        for uu, rr in zip(stack, rights):
                            match_l[uu] = rr
                            match_r[rr] = uu
                        stack = []
                        moved = True
                        break
                    if dist[w] == dist[u] + 1:
                        rights.append(r)
                        stack.append(w)
                        moved = True
                        break
                if not moved:
                    dist[u] = inf
                    stack.pop()
                    if rights:
                        rights.pop()


def max_matching(B: BipartiteGraph) -> Matching:
    """A maximum-cardinality matching of ``B`` (deterministic)."""
    match_l, _ = _hopcroft_karp(B.left_size, B.adj, B.right_size)
    M = Matching(tuple((u, r) for u, r in enumerate(match_l) if r >= 0))
    if has_augmenting_path(B, M):
        raise AssertionError("Hopcroft-Karp returned a non-maximum matching")
    return M


def alternating_reach(B: BipartiteGraph, M: Matching, starts: Iterable[int]) -> tuple[set[int], set[int]]:
    """Left and right vertices reachable from the left vertices ``starts`` by
    paths that leave the left side on non-matching edges and return on
    matching edges."""
    r2l = M.right_to_left
    seen_l = set(starts)
    seen_r: set[int] = set()
    queue = deque(sorted(seen_l))
    while queue:
        u = queue.popleft()
        for r in B.adj[u]:
            if r in seen_r:
                continue
            seen_r.add(r)
            w = r2l.get(r)
            if w is not None and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return seen_l, seen_r


def has_augmenting_path(B: BipartiteGraph, M: Matching) -> bool:
    for u, r in M:
        if not B.has_edge(u, r):
            raise ValueError(f"pair {(u, r)} is not an edge")
    free = [u for u in range(B.left_size) if u not in M.left_to_right]
    _, reach_r = alternating_reach(B, M, free)
    return any(r not in M.right_to_left for r in reach_r)


def koenig_cover(B: BipartiteGraph, M: Matching | None = None) -> tuple[set[int], set[int]]:
    """Minimum vertex cover ``(left part, right part)`` from a maximum matching."""
    if M is None:
        M = max_matching(B)
    free = [u for u in range(B.left_size) if u not in M.left_to_right]
    reach_l, reach_r = alternating_reach(B, M, free)
    cover_l = set(range(B.left_size)) - reach_l
    if len(cover_l) + len(reach_r) != len(M):
        raise AssertionError("Koenig cover size differs from the matching size")
    return cover_l, reach_r


# -- matchings between vertex sets of a graph ---------------------------------


def _instance(G: Graph, sources: SetLike, targets: SetLike) -> tuple[list[int], list[int], BipartiteGraph]:
    smask = as_mask(G, sources)
    tmask = as_mask(G, targets)
    if smask & tmask:
        raise ContractError("sources and targets must be disjoint")
    src = list(VertexSet.from_mask(smask))
    tgt = list(VertexSet.from_mask(tmask))
    index = {v: i for i, v in enumerate(tgt)}
    rows = tuple(
        tuple(index[w] for w in G.neighbor_lists[v] if tmask >> w & 1) for v in src
    )
    return src, tgt, BipartiteGraph(len(src), len(tgt), rows)


def saturating_matching(G: Graph, sources: SetLike, targets: SetLike) -> Matching | HallViolator:
    """A matching of ``G``'s edges that covers every source and ends in the
    targets, or a Hall violator proving that none exists.

    Pairs of the returned matching are ``(source, target)`` in graph ids.
    The violator is the set of sources reachable by alternating paths from the
    lowest-id unsaturated source of a maximum matching.
    """
    src, tgt, B = _instance(G, sources, targets)
    M = max_matching(B)
    if len(M) == len(src):
        return Matching(tuple((src[u], tgt[r]) for u, r in M))
    first_free = min(u for u in range(len(src)) if u not in M.left_to_right)
    reach_l, reach_r = alternating_reach(B, M, [first_free])
    return HallViolator(
        VertexSet(src[u] for u in reach_l), VertexSet(tgt[r] for r in reach_r)
    )


def validate_saturating(G: Graph, M: Matching, sources: SetLike, targets: SetLike) -> list[str]:
    """Edge-by-edge re-check of a claimed saturating matching; returns the
    list of problems (empty when valid)."""
    smask = as_mask(G, sources)
    tmask = as_mask(G, targets)
    problems = []
    covered = 0
    used = 0
    for a, b in M:
        if not (smask >> a & 1):
            problems.append(f"{a} is not a source")
        if not (tmask >> b & 1):
            problems.append(f"{b} is not a target")
        if not G.has_edge(a, b):
            problems.append(f"{a}{b} is not an edge")
        if covered >> a & 1 or used >> b & 1:
            problems.append(f"pair ({a}, {b}) reuses a vertex")
        covered |= 1 << a
        used |= 1 << b
    if covered != smask:
        missing = VertexSet.from_mask(smask & ~covered).to_list()
        problems.append(f"sources {missing} are not saturated")
    return problems


def validate_violator(G: Graph, V: HallViolator, sources: SetLike, targets: SetLike) -> list[str]:
    smask = as_mask(G, sources)
    tmask = as_mask(G, targets)
    problems = []
    if V.witness.mask & ~smask:
        problems.append("witness is not inside the sources")
    actual = neighborhood_mask(G.adj, V.witness.mask) & tmask
    if actual != V.neighbors.mask:
        problems.append("recorded neighbourhood differs from N(B) among targets")
    if not V.witness or popcount(actual) >= len(V.witness):
        problems.append("witness satisfies Hall's condition")
    return problems


def tight_set(G: Graph, A: SetLike) -> VertexSet | None:
    """A nonempty ``B`` inside ``N(A)`` with exactly ``|B|`` neighbours in ``A``,
    or ``None`` if there is none.

    ``A`` must be independent with a matching from ``N(A)`` into ``A`` (every
    critical independent set qualifies).  Tries ``N(A) -> A - v`` for each
    ``v`` of ``A`` in ascending order; the first Hall violator is tight.
    """
    amask = as_mask(G, A)
    if not is_independent(G, A):
        raise ContractError("tight_set needs an independent set")
    nmask = neighborhood_mask(G.adj, amask)
    if isinstance(saturating_matching(G, VertexSet.from_mask(nmask), VertexSet.from_mask(amask)), HallViolator):
        raise ContractError("no matching from N(A) into A")
    for v in VertexSet.from_mask(amask):
        res = saturating_matching(
            G, VertexSet.from_mask(nmask), VertexSet.from_mask(amask & ~(1 << v))
        )
        if isinstance(res, HallViolator):
            B = res.witness
            if popcount(neighborhood_mask(G.adj, B.mask) & amask) != len(B):
                raise AssertionError("Hall violator is not tight in A")
            return B
    return None
