"""Polynomial computation of the critical difference, a maximum critical
independent set, and ker(G).

The critical difference comes from the bipartite double cover ``B(G)``:
for any ``X`` the set ``X`` (left copy) plus ``V - N(X)`` (right copy) is
independent in ``B(G)``, and conversely, so ``d_c(G) = alpha(B(G)) - n =
n - mu(B(G))``.  ker(G) is computed two independent ways: by vertex
deletion probes and by shrinking a critical independent set until it has no
tight set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .caps import DEFAULT_CAPS, Caps
from .graph import (
    Graph,
    SetLike,
    VertexSet,
    as_mask,
    delete_vertex,
    difference,
    is_independent,
    lift,
    neighborhood,
    neighborhood_mask,
    popcount,
)
from .matching import (
    BipartiteGraph,
    ContractError,
    HallViolator,
    Matching,
    koenig_cover,
    max_matching,
    saturating_matching,
    tight_set,
    validate_saturating,
)


class InternalConsistencyError(AssertionError):
    """A polynomial routine produced a result that contradicts the theory."""


def double_cover(G: Graph) -> BipartiteGraph:
    """Left and right copies of ``V``; ``(u, v')`` is an edge iff ``uv`` is."""
    return BipartiteGraph(G.n, G.n, G.neighbor_lists)


def _restricted_cover(G: Graph, allowed: int) -> tuple[list[int], BipartiteGraph]:
    idx = list(VertexSet.from_mask(allowed))
    pos = {v: i for i, v in enumerate(idx)}
    rows = tuple(tuple(pos[u] for u in G.neighbor_lists[v] if u in pos) for v in idx)
    return idx, BipartiteGraph(len(idx), len(idx), rows)


def critical_difference(G: Graph) -> int:
    """d_c(G) = max over X of |X| - |N(X)|, computed as n - mu(B(G))."""
    return G.n - len(max_matching(double_cover(G)))


def _koenig_critical_set(G: Graph) -> int:
    # vertices with both copies outside a minimum cover of B(G)
    cover_l, cover_r = koenig_cover(double_cover(G))
    mask = 0
    for v in range(G.n):
        if v not in cover_l and v not in cover_r:
            mask |= 1 << v
    return mask


def _extendable(G: Graph, T: int, target: int) -> bool:
    """Is there a maximum independent set of B(G) containing both copies of
    every vertex of ``T``?  Equivalent to: some critical independent set
    contains ``T``."""
    allowed = ((1 << G.n) - 1) & ~neighborhood_mask(G.adj, T)
    idx, B = _restricted_cover(G, allowed)
    return 2 * len(idx) - len(max_matching(B)) == target


def max_critical_independent_set(G: Graph, caps: Caps = DEFAULT_CAPS) -> VertexSet:
    """A critical independent set of maximum cardinality.

    Starts from the set read off a Koenig cover of ``B(G)`` and greedily adds
    vertices (ascending id) while some critical independent set still
    contains the current one.
    """
    d_c = critical_difference(G)
    target = G.n + d_c
    S = _koenig_critical_set(G)
    for v in range(G.n):
        if S >> v & 1 or G.adj[v] & S:
            continue
        if _extendable(G, S | 1 << v, target):
            S |= 1 << v
    result = VertexSet.from_mask(S)
    if is_independent(G, result) and difference(G, result) == d_c:
        return result
    if G.n <= caps.independent:
        from .oracle import critical_independent_masks

        _, masks = critical_independent_masks(G, caps)
        return VertexSet.from_mask(max(masks, key=lambda m: (popcount(m), -m)))
    raise InternalConsistencyError(f"extracted set {result} is not critical (d_c={d_c})")


def deletion_deltas(G: Graph) -> list[int]:
    """``d_c(G - v) - d_c(G)`` for every vertex ``v``."""
    base = critical_difference(G)
    return [critical_difference(delete_vertex(G, v)[0]) - base for v in range(G.n)]


def ker_by_deletion(G: Graph) -> VertexSet:
    """ker(G) as the vertices whose deletion lowers d_c by exactly one."""
    return VertexSet(v for v, delta in enumerate(deletion_deltas(G)) if delta == -1)


@dataclass(frozen=True)
class ShrinkStep:
    tight: VertexSet  # B inside N(A)
    removed: VertexSet  # N(B) & A


def shrink_to_ker(G: Graph, A: SetLike | None = None) -> tuple[VertexSet, list[ShrinkStep]]:
    """Shrink a critical independent set to ker(G), recording each step."""
    if A is None:
        A = max_critical_independent_set(G)
    A = VertexSet(A)
    steps: list[ShrinkStep] = []
    d0 = difference(G, A)
    while True:
        B = tight_set(G, A)
        if B is None:
            return A, steps
        removed = neighborhood(G, B) & A
        A = A - removed
        steps.append(ShrinkStep(B, removed))
        if difference(G, A) < d0:
            raise InternalConsistencyError("shrinking step lowered the difference")


def ker_by_shrinking(G: Graph) -> VertexSet:
    """ker(G) as the fixed point of removing ``N(B) & A`` for tight sets ``B``."""
    return shrink_to_ker(G)[0]


ker = ker_by_shrinking


@dataclass
class KerCheck:
    """Outcome of :func:`is_ker`; truthy iff the set is ker(G)."""

    is_ker: bool
    reason: str = ""
    matchings: dict[int, Matching] = field(default_factory=dict)
    failed_at: int | None = None
    violator: HallViolator | None = None

    def __bool__(self) -> bool:
        return self.is_ker


def is_ker(G: Graph, A: SetLike) -> KerCheck:
    """Decide ``A == ker(G)`` for a critical independent ``A`` by checking that
    ``N(A)`` matches into ``A - v`` for every ``v`` in ``A``.

    The certificate holds one matching per vertex of ``A``; on failure it
    names the vertex and the Hall violator.
    """
    A = VertexSet.from_mask(as_mask(G, A))
    if not is_independent(G, A):
        return KerCheck(False, "set is not independent")
    d_c = critical_difference(G)
    if difference(G, A) != d_c:
        return KerCheck(False, f"set has difference {difference(G, A)}, not d_c={d_c}")
    NA = neighborhood(G, A)
    matchings: dict[int, Matching] = {}
    for v in A:
        res = saturating_matching(G, NA, A.discard(v))
        if isinstance(res, HallViolator):
            return KerCheck(False, f"no matching from N(A) into A-{v}", matchings, v, res)
        matchings[v] = res
    return KerCheck(True, "", matchings)


def corollary_matchings(G: Graph, e: tuple[int, int], ker_set: SetLike | None = None) -> tuple[Matching, Matching]:
    """Two matchings from ``N(ker)`` into ``ker``: one using edge ``e``, one not.

    ``e`` joins a vertex of ker(G) to a vertex of N(ker(G)), in either order.
    Pairs are ``(neighbour, ker vertex)``.
    """
    K = VertexSet(ker_by_shrinking(G) if ker_set is None else ker_set)
    NK = neighborhood(G, K)
    a, b = e
    if a in K and b in NK:
        x, y = a, b
    elif b in K and a in NK:
        x, y = b, a
    else:
        raise ValueError(f"edge {e} does not join ker(G) to N(ker(G))")
    if not G.has_edge(x, y):
        raise ValueError(f"{e} is not an edge")
    M = saturating_matching(G, NK, K.discard(x))
    if isinstance(M, HallViolator):
        raise InternalConsistencyError(f"no matching from N(ker) into ker-{x}")
    z = M.left_to_right[y]
    with_e = M.replace((y, z), (y, x))
    for match in (with_e, M):
        if validate_saturating(G, match, NK, K):
            raise InternalConsistencyError("corollary matching failed validation")
    return with_e, M


@dataclass
class CriticalReport:
    """d_c, a maximum critical independent set, ker, and their certificates."""

    d_c: int
    crit_set: VertexSet
    ker: VertexSet
    ker_matching: Matching  # from N(ker) into ker
    deletion_deltas: list[int]

    def to_dict(self) -> dict:
        return {
            "d_c": self.d_c,
            "crit_set": self.crit_set.to_list(),
            "ker": self.ker.to_list(),
            "ker_matching": self.ker_matching.to_list(),
            "deletion_deltas": list(self.deletion_deltas),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CriticalReport":
        return cls(
            data["d_c"],
            VertexSet(data["crit_set"]),
            VertexSet(data["ker"]),
            Matching(tuple(tuple(p) for p in data["ker_matching"])),
            list(data["deletion_deltas"]),
        )


def critical_report(G: Graph, caps: Caps = DEFAULT_CAPS) -> CriticalReport:
    d_c = critical_difference(G)
    crit = max_critical_independent_set(G, caps)
    K, _ = shrink_to_ker(G, crit)
    deltas = deletion_deltas(G)
    by_deletion = VertexSet(v for v, delta in enumerate(deltas) if delta == -1)
    if by_deletion != K:
        raise InternalConsistencyError(
            f"ker by deletion {by_deletion} differs from ker by shrinking {K}"
        )
    M = saturating_matching(G, neighborhood(G, K), K)
    if isinstance(M, HallViolator):
        raise InternalConsistencyError("no matching from N(ker) into ker")
    return CriticalReport(d_c, crit, K, M, deltas)


def ker_after_deletion(G: Graph, v: int) -> VertexSet:
    """ker(G - v) expressed in the ids of ``G``."""
    H, mapping = delete_vertex(G, v)
    return lift(mapping, ker_by_shrinking(H))


__all__ = [
    "ContractError",
    "CriticalReport",
    "InternalConsistencyError",
    "KerCheck",
    "corollary_matchings",
    "critical_difference",
    "critical_report",
    "deletion_deltas",
    "double_cover",
    "is_ker",
    "ker",
    "ker_after_deletion",
    "ker_by_deletion",
    "ker_by_shrinking",
    "max_critical_independent_set",
    "shrink_to_ker",
]
