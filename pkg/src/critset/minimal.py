"""Inclusion-minimal independent sets of positive difference.

Every such set lies inside ker(G), and their union is ker(G), so the family
is enumerated over subsets of ker(G) only.  Since ker(G) is independent,
every subset is independent and the search reduces to subset sums of
neighbourhoods.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .critical import ker_by_shrinking
from .graph import (
    Graph,
    SetLike,
    VertexSet,
    as_mask,
    difference,
    is_independent,
    neighborhood,
    neighborhood_mask,
    popcount,
    to_graph6,
)
from .matching import (
    BipartiteGraph,
    ContractError,
    HallViolator,
    Matching,
    max_matching,
    validate_saturating,
)


class EnumerationRefused(CapExceeded):
    """|ker(G)| is above the enumeration bound."""

    def __init__(self, ker_size: int, bound: int):
        super().__init__("minimal positive set enumeration (|ker|)", ker_size, bound)


@dataclass(frozen=True)
class MinimalPositiveFamily:
    graph_id: str
    ker: VertexSet
    sets: tuple[VertexSet, ...]
    differences: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def union(self) -> VertexSet:
        mask = 0
        for S in self.sets:
            mask |= S.mask
        return VertexSet.from_mask(mask)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_id,
            "ker": self.ker.to_list(),
            "sets": [S.to_list() for S in self.sets],
            "differences": list(self.differences),
        }


def minimal_positive_masks(adj, ker_mask: int, bound: int = DEFAULT_CAPS.enumeration) -> list[int]:
    """Bitmask core of :func:`minimal_positive_sets`.

    Candidates are visited by increasing size; a positive candidate is
    minimal iff it contains no minimal set found earlier.
    """
    members = [v for v in range(len(adj)) if ker_mask >> v & 1]
    if len(members) > bound:
        raise EnumerationRefused(len(members), bound)
    found: list[int] = []
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            mask = 0
            nb = 0
            for v in combo:
                mask |= 1 << v
                nb |= adj[v]
            if popcount(mask) <= popcount(nb):
                continue
            if any(m & mask == m for m in found):
                continue
            found.append(mask)
    return sorted(found)


def minimal_positive_sets(
    G: Graph,
    caps: Caps = DEFAULT_CAPS,
    ker_set: SetLike | None = None,
    graph_id: str | None = None,
) -> MinimalPositiveFamily:
    """All inclusion-minimal independent sets ``S`` with ``d(S) > 0``.

    Raises :class:`EnumerationRefused` when ``|ker(G)|`` exceeds
    ``caps.enumeration``.  Each member is checked to have difference exactly
    one, and the union of the family is checked to equal ker(G).
    """
    K = VertexSet(ker_by_shrinking(G) if ker_set is None else ker_set)
    masks = minimal_positive_masks(G.adj, K.mask, caps.enumeration)
    sets = tuple(VertexSet.from_mask(m) for m in masks)
    diffs = tuple(difference(G, S) for S in sets)
    if any(d != 1 for d in diffs):
        raise AssertionError(f"minimal positive set with difference != 1: {diffs}")
    family = MinimalPositiveFamily(graph_id or to_graph6(G), K, sets, diffs)
    if family.union != K:
        raise AssertionError(f"union of minimal positive sets {family.union} differs from ker {K}")
    return family


def check_union_formula(G: Graph, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff the minimal positive sets cover exactly ker(G)."""
    K = ker_by_shrinking(G)
    masks = minimal_positive_masks(G.adj, K.mask, caps.enumeration)
    union = 0
    for m in masks:
        union |= m
    return union == K.mask


def mn_closure(G: Graph, v: int, M: Matching, ker_set: SetLike | None = None) -> VertexSet:
    """Grow ``X = {v}`` by ``X <- X | M(N(X))`` until it stops changing.

    ``M`` must match ``N(ker)`` into ``ker - {v}`` (pairs are
    ``(neighbour, ker vertex)``).  The fixpoint is independent, contains
    ``v`` and has difference exactly one.
    """
    K = VertexSet(ker_by_shrinking(G) if ker_set is None else ker_set)
    if v not in K:
        raise ContractError(f"vertex {v} is not in ker(G)")
    NK = neighborhood(G, K)
    problems = validate_saturating(G, M, NK, K.discard(v))
    if problems:
        raise ContractError("matching does not saturate N(ker) into ker-v: " + "; ".join(problems))
    partner = M.left_to_right
    X = 1 << v
    while True:
        grown = X
        for u in VertexSet.from_mask(neighborhood_mask(G.adj, X)):
            grown |= 1 << partner[u]
        if grown == X:
            break
        X = grown
    out = VertexSet.from_mask(X)
    if difference(G, out) != 1:
        raise AssertionError(f"closure {out} has difference {difference(G, out)}")
    return out


def _best_subset_difference(G: Graph, W: int, anchor: int | None = None) -> int:
    """max d(T) over ``T`` inside the independent set ``W`` (with ``anchor``
    in ``T`` when given), via the deficiency form of Koenig's theorem:
    max over T of |T| - |N(T)| equals |W| - mu(W, N(W))."""
    base = 0
    if anchor is not None:
        base = 1 - popcount(G.adj[anchor])
        W &= ~(1 << anchor)
        forbidden = G.adj[anchor]
    else:
        forbidden = 0
    src = list(VertexSet.from_mask(W))
    tmask = neighborhood_mask(G.adj, W) & ~forbidden
    tgt = list(VertexSet.from_mask(tmask))
    index = {t: i for i, t in enumerate(tgt)}
    rows = tuple(tuple(index[u] for u in G.neighbor_lists[s] if tmask >> u & 1) for s in src)
    mu = len(max_matching(BipartiteGraph(len(src), len(tgt), rows)))
    return base + len(src) - mu


def minimalize(G: Graph, S: SetLike, anchor: int | None = None) -> VertexSet:
    """Shrink a positive independent set to an inclusion-minimal positive one.

    Vertices are dropped in descending id order whenever what remains still
    has a positive subset (containing ``anchor``, if given).
    """
    mask = as_mask(G, S)
    if not is_independent(G, VertexSet.from_mask(mask)):
        raise ValueError("minimalize needs an independent set")
    if difference(G, VertexSet.from_mask(mask)) <= 0:
        raise ValueError("minimalize needs a set of positive difference")
    if anchor is not None and not mask >> anchor & 1:
        raise ValueError(f"anchor {anchor} is not in the set")
    T = mask
    for v in sorted(VertexSet.from_mask(mask), reverse=True):
        if v == anchor:
            continue
        if _best_subset_difference(G, T & ~(1 << v), anchor) > 0:
            T &= ~(1 << v)
    out = VertexSet.from_mask(T)
    if difference(G, out) <= 0:
        raise AssertionError("minimalize lost positivity")
    if anchor is not None and any(_best_subset_difference(G, T & ~(1 << v)) > 0 for v in out):
        raise ValueError(
            f"the smallest positive subsets containing {anchor} are not inclusion-minimal"
        )
    return out


def is_minimal_positive(G: Graph, S: SetLike) -> bool:
    """Exact test: ``S`` is independent, positive, and no proper subset is."""
    mask = as_mask(G, S)
    if not is_independent(G, VertexSet.from_mask(mask)):
        return False
    if difference(G, VertexSet.from_mask(mask)) <= 0:
        return False
    return all(_best_subset_difference(G, mask & ~(1 << v)) <= 0 for v in VertexSet.from_mask(mask))


def passes_single_removal_test(G: Graph, S: SetLike) -> bool:
    """The weaker test ``d(S - v) <= 0`` for every ``v``; not equivalent to
    minimality (an isolated vertex beside two twins is a counterexample)."""
    S = VertexSet(S)
    return difference(G, S) > 0 and all(difference(G, S.discard(v)) <= 0 for v in S)


__all__ = [
    "EnumerationRefused",
    "MinimalPositiveFamily",
    "check_union_formula",
    "is_minimal_positive",
    "minimal_positive_masks",
    "minimal_positive_sets",
    "minimalize",
    "mn_closure",
    "passes_single_removal_test",
]
