"""Exponential brute-force ground truth for small graphs.

Nothing here uses matchings or any of the structural results the rest of the
package relies on: every value is obtained by literally scanning independent
sets (or all vertex subsets) and applying the definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .graph import Graph, VertexSet, popcount


def _check(what: str, n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(what, n, cap)


def independent_masks(G: Graph) -> Iterator[tuple[int, int]]:
    """Yield ``(mask, N(mask))`` for every independent set, the empty set included.

    Branches on the lowest remaining candidate: exclude it, or include it and
    drop its neighbours from the candidates.
    """
    adj = G.adj
    stack = [(0, (1 << G.n) - 1, 0)]
    while stack:
        chosen, cand, nb = stack.pop()
        if not cand:
            yield chosen, nb
            continue
        low = cand & -cand
        a = adj[low.bit_length() - 1]
        stack.append((chosen, cand ^ low, nb))
        stack.append((chosen | low, cand & ~low & ~a, nb | a))


def enumerate_independent_sets(G: Graph, caps: Caps = DEFAULT_CAPS) -> Iterator[VertexSet]:
    """Every independent set of ``G`` exactly once, starting with the empty set."""
    _check("independent-set enumeration", G.n, caps.independent)
    for mask, _ in independent_masks(G):
        yield VertexSet.from_mask(mask)


def count_independent_sets(G: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    _check("independent-set enumeration", G.n, caps.independent)
    return sum(1 for _ in independent_masks(G))


def subset_neighborhoods(G: Graph, caps: Caps = DEFAULT_CAPS) -> list[int]:
    """``N(mask)`` for all ``2**n`` masks, indexed by mask."""
    _check("all-subsets scan", G.n, caps.all_subsets)
    nb = [0] * (1 << G.n)
    adj = G.adj
    for mask in range(1, 1 << G.n):
        low = mask & -mask
        nb[mask] = nb[mask ^ low] | adj[low.bit_length() - 1]
    return nb


def critical_independent_masks(G: Graph, caps: Caps = DEFAULT_CAPS) -> tuple[int, list[int]]:
    """``(id_c, masks)``: the critical independence difference and every
    independent set attaining it."""
    _check("independent-set enumeration", G.n, caps.independent)
    best = None
    found: list[int] = []
    for mask, nb in independent_masks(G):
        d = popcount(mask) - popcount(nb)
        if best is None or d > best:
            best, found = d, [mask]
        elif d == best:
            found.append(mask)
    return best, sorted(found)


def critical_independence_difference(G: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    return critical_independent_masks(G, caps)[0]


def critical_difference_all_subsets(G: Graph, caps: Caps = DEFAULT_CAPS) -> tuple[int, list[int]]:
    """``(d_c, masks)`` over all vertex subsets, independent or not."""
    nb = subset_neighborhoods(G, caps)
    best = 0
    found = [0]
    for mask in range(1, 1 << G.n):
        d = popcount(mask) - popcount(nb[mask])
        if d > best:
            best, found = d, [mask]
        elif d == best:
            found.append(mask)
    return best, found


def oracle_ker(G: Graph, caps: Caps = DEFAULT_CAPS) -> VertexSet:
    """Intersection of all critical independent sets."""
    _, masks = critical_independent_masks(G, caps)
    inter = (1 << G.n) - 1
    for mask in masks:
        inter &= mask
    return VertexSet.from_mask(inter)


def minimal_critical_independent_sets(G: Graph, caps: Caps = DEFAULT_CAPS) -> list[VertexSet]:
    """Inclusion-minimal members of the family of critical independent sets."""
    _, masks = critical_independent_masks(G, caps)
    masks.sort(key=lambda m: (popcount(m), m))
    minimal: list[int] = []
    for mask in masks:
        if not any(m & mask == m for m in minimal):
            minimal.append(mask)
    return [VertexSet.from_mask(m) for m in sorted(minimal)]


def maximum_independent_sets(G: Graph, caps: Caps = DEFAULT_CAPS) -> tuple[int, list[int]]:
    """``(alpha, masks of all maximum independent sets)``."""
    _check("maximum independent set scan", G.n, caps.core)
    best = -1
    found: list[int] = []
    for mask, _ in independent_masks(G):
        k = popcount(mask)
        if k > best:
            best, found = k, [mask]
        elif k == best:
            found.append(mask)
    return best, sorted(found)


def oracle_core(G: Graph, caps: Caps = DEFAULT_CAPS) -> VertexSet:
    _, masks = maximum_independent_sets(G, caps)
    inter = (1 << G.n) - 1
    for mask in masks:
        inter &= mask
    return VertexSet.from_mask(inter)


def matching_number(G: Graph, caps: Caps = DEFAULT_CAPS) -> int:
    """mu(G) of a general graph by memoised branching on the lowest vertex."""
    _check("matching number", G.n, caps.core)
    adj = G.adj
    memo: dict[int, int] = {0: 0}

    def best(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        rest = mask ^ low
        value = best(rest)
        cand = adj[low.bit_length() - 1] & rest
        while cand:
            u = cand & -cand
            value = max(value, 1 + best(rest ^ u))
            cand ^= u
        memo[mask] = value
        return value

    return best((1 << G.n) - 1)


def oracle_minimal_positive_sets(G: Graph, caps: Caps = DEFAULT_CAPS) -> list[VertexSet]:
    """Inclusion-minimal independent sets of positive difference, found by
    scanning every independent set of ``G`` (no restriction to ker)."""
    _check("independent-set enumeration", G.n, caps.independent)
    positive = [
        mask for mask, nb in independent_masks(G) if popcount(mask) > popcount(nb)
    ]
    positive.sort(key=lambda m: (popcount(m), m))
    minimal: list[int] = []
    for mask in positive:
        if not any(m & mask == m for m in minimal):
            minimal.append(mask)
    return [VertexSet.from_mask(m) for m in sorted(minimal)]


@dataclass
class OracleReport:
    """Brute-force invariants of one graph; ``None`` marks a field over its cap
    (the reason is recorded in ``absent``)."""

    n: int
    alpha: int | None = None
    mu: int | None = None
    id_c: int | None = None
    d_c_all_subsets: int | None = None
    ker_as_intersection: VertexSet | None = None
    ker_over_all_critical_sets: VertexSet | None = None
    core: VertexSet | None = None
    omega_count: int | None = None
    absent: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        def conv(x):
            return x.to_list() if isinstance(x, VertexSet) else x

        out = {
            k: conv(getattr(self, k))
            for k in (
                "n", "alpha", "mu", "id_c", "d_c_all_subsets", "ker_as_intersection",
                "ker_over_all_critical_sets", "core", "omega_count",
            )
        }
        out["absent"] = dict(sorted(self.absent.items()))
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "OracleReport":
        sets = {"ker_as_intersection", "ker_over_all_critical_sets", "core"}
        kwargs = {
            k: (VertexSet(v) if k in sets and v is not None else v)
            for k, v in data.items()
            if k != "absent"
        }
        return cls(absent=dict(data.get("absent", {})), **kwargs)


def oracle_report(G: Graph, caps: Caps = DEFAULT_CAPS) -> OracleReport:
    """Fill every field whose cap admits ``G``."""
    rep = OracleReport(n=G.n)
    if G.n > caps.independent:
        raise CapExceeded("oracle report", G.n, caps.independent)

    rep.id_c, masks = critical_independent_masks(G, caps)
    inter = (1 << G.n) - 1
    for mask in masks:
        inter &= mask
    rep.ker_as_intersection = VertexSet.from_mask(inter)

    if G.n <= caps.all_subsets:
        rep.d_c_all_subsets, crit = critical_difference_all_subsets(G, caps)
        inter = (1 << G.n) - 1
        for mask in crit:
            inter &= mask
        rep.ker_over_all_critical_sets = VertexSet.from_mask(inter)
    else:
        reason = f"n={G.n} exceeds all_subsets cap {caps.all_subsets}"
        rep.absent["d_c_all_subsets"] = reason
        rep.absent["ker_over_all_critical_sets"] = reason

    if G.n <= caps.core:
        rep.alpha, omega = maximum_independent_sets(G, caps)
        rep.omega_count = len(omega)
        inter = (1 << G.n) - 1
        for mask in omega:
            inter &= mask
        rep.core = VertexSet.from_mask(inter)
        rep.mu = matching_number(G, caps)
    else:
        reason = f"n={G.n} exceeds core cap {caps.core}"
        for key in ("alpha", "omega_count", "core", "mu"):
            rep.absent[key] = reason
    return rep
