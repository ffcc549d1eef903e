"""Run every structural result about critical independent sets as a named,
certificated check on one graph.

Verdict ids are stable and form part of the JSON output contract::

    {"graph": <name or graph6>, "verdicts": [{"id", "status", "reason"?,
     "certificate"?, "ms"?}, ...]}

``ms`` is emitted only when timing is requested, so default output is
byte-stable.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Any, Callable

import numpy as np

from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .critical import (
    corollary_matchings,
    critical_difference,
    deletion_deltas,
    is_ker,
    ker_after_deletion,
    max_critical_independent_set,
    shrink_to_ker,
)
from .graph import Graph, VertexSet, difference, is_independent, neighborhood, neighborhood_mask, popcount, to_graph6
from .matching import HallViolator, Matching, saturating_matching, tight_set, validate_saturating
from .minimal import EnumerationRefused, is_minimal_positive, minimal_positive_sets
from . import oracle

THEOREM_IDS = (
    "T3", "T4i", "T4ii", "T4iii", "P5i", "P5ii", "T6", "C7",
    "T8", "P9", "P10", "P12", "BIP-KER-CORE", "KER-SUBSET-CORE",
)

# critical independent sets listed by the oracle beyond this many are not
# individually certified; certificates report the number checked
_MAX_ORACLE_SETS = 2000


class Skip(Exception):
    pass


class Fail(Exception):
    def __init__(self, reason: str, payload: dict | None = None):
        super().__init__(reason)
        self.payload = payload or {}


@dataclass
class TheoremVerdict:
    id: str
    status: str  # "pass" | "fail" | "skipped"
    reason: str | None = None
    certificate: dict | None = None
    ms: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        out: dict[str, Any] = {"id": self.id, "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if timing and self.ms is not None:
            out["ms"] = round(self.ms, 3)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TheoremVerdict":
        return cls(data["id"], data["status"], data.get("reason"), data.get("certificate"), data.get("ms"))


def _ids(X) -> list[int]:
    return VertexSet(X).to_list()


def _pairs(M: Matching) -> list[list[int]]:
    return M.to_list()


class _Context:
    """Lazily computed quantities shared by the checks."""

    def __init__(self, G: Graph, caps: Caps, seed: int):
        self.G = G
        self.caps = caps
        self.seed = seed

    @cached_property
    def d_c(self) -> int:
        return critical_difference(self.G)

    @cached_property
    def crit(self) -> VertexSet:
        return max_critical_independent_set(self.G, self.caps)

    @cached_property
    def ker(self) -> VertexSet:
        return shrink_to_ker(self.G, self.crit)[0]

    @cached_property
    def deltas(self) -> list[int]:
        return deletion_deltas(self.G)

    @cached_property
    def oracle_critical(self) -> tuple[int, list[int]]:
        return oracle.critical_independent_masks(self.G, self.caps)

    @cached_property
    def core(self) -> VertexSet:
        return oracle.oracle_core(self.G, self.caps)

    @cached_property
    def family(self):
        return minimal_positive_sets(self.G, self.caps, self.ker)

    def listed_critical_sets(self) -> tuple[list[int], int | None]:
        """Critical independent sets to certify individually: the computed ones
        plus, within the all-subsets cap, the oracle's full list."""
        masks = [self.crit.mask, self.ker.mask]
        total = None
        if self.G.n <= self.caps.all_subsets:
            _, found = self.oracle_critical
            total = len(found)
            masks.extend(found[:_MAX_ORACLE_SETS])
        return sorted(set(masks)), total


def _check_t3(c: _Context) -> dict:
    id_c, _ = c.oracle_critical
    cert = {"d_c": c.d_c, "id_c": id_c, "crit_set_difference": difference(c.G, c.crit)}
    if c.G.n <= c.caps.all_subsets:
        cert["d_c_all_subsets"], _ = oracle.critical_difference_all_subsets(c.G, c.caps)
    else:
        cert["d_c_all_subsets"] = None
    values = {v for k, v in cert.items() if v is not None}
    if len(values) != 1:
        raise Fail("critical difference values disagree", cert)
    return cert


def _random_masks(n: int, count: int, seed: int) -> list[int]:
    rng = np.random.Generator(np.random.PCG64(seed))
    bits = rng.random((count, n)) < 0.5
    weights = [1 << v for v in range(n)]
    return [sum(w for w, b in zip(weights, row) if b) for row in bits.tolist()]


def _check_t4i(c: _Context) -> dict:
    G = c.G
    samples = c.caps.supermodular_samples
    full = 1 << G.n
    if full * full <= samples:
        pairs = [(a, b) for a in range(full) for b in range(full)]
        mode = "exhaustive"
    else:
        xs = _random_masks(G.n, 2 * samples, c.seed)
        pairs = list(zip(xs[:samples], xs[samples:]))
        mode = "sampled"

    def d(mask: int) -> int:
        return popcount(mask) - popcount(neighborhood_mask(G.adj, mask))

    min_slack = None
    for a, b in pairs:
        slack = d(a | b) + d(a & b) - d(a) - d(b)
        if slack < 0:
            raise Fail("supermodular inequality violated", {"A": _ids(VertexSet.from_mask(a)), "B": _ids(VertexSet.from_mask(b)), "slack": slack})
        if min_slack is None or slack < min_slack:
            min_slack = slack
    return {"mode": mode, "pairs": len(pairs), "seed": c.seed, "min_slack": min_slack}


def _check_t4ii(c: _Context) -> dict:
    minimal = oracle.minimal_critical_independent_sets(c.G, c.caps)
    cert = {"minimal_critical_independent_sets": [_ids(S) for S in minimal], "ker": _ids(c.ker)}
    if len(minimal) != 1 or minimal[0] != c.ker:
        raise Fail("minimal critical independent set is not unique or differs from ker", cert)
    return cert


def _check_t4iii(c: _Context) -> dict:
    masks, total = c.listed_critical_sets()
    named = {}
    for mask in masks:
        S = VertexSet.from_mask(mask)
        if not is_independent(c.G, S) or difference(c.G, S) != c.d_c:
            raise Fail("listed set is not critical independent", {"set": _ids(S)})
        NS = neighborhood(c.G, S)
        M = saturating_matching(c.G, NS, S)
        if isinstance(M, HallViolator):
            raise Fail("no matching from N(S) into S", {"set": _ids(S), "violator": _ids(M.witness)})
        problems = validate_saturating(c.G, M, NS, S)
        if problems:
            raise Fail("matching failed re-validation", {"set": _ids(S), "problems": problems})
        if mask == c.ker.mask:
            named["ker"] = _pairs(M)
        if mask == c.crit.mask:
            named["crit_set"] = _pairs(M)
    return {"checked": len(masks), "critical_independent_sets": total, "matchings": named}


def _check_p5i(c: _Context) -> dict:
    cert = {"deletion_deltas": c.deltas, "ker": _ids(c.ker)}
    for v, delta in enumerate(c.deltas):
        if delta < -1:
            raise Fail(f"deleting {v} lowered d_c by more than one", cert)
        if (delta == -1) != (v in c.ker):
            raise Fail(f"vertex {v}: deletion delta {delta} but ker membership {v in c.ker}", cert)
    return cert


def _check_p5ii(c: _Context) -> dict:
    after = {}
    for v in c.ker:
        K2 = ker_after_deletion(c.G, v)
        after[str(v)] = _ids(K2)
        if not K2 <= c.ker.discard(v):
            raise Fail(f"ker(G-{v}) is not inside ker(G)-{v}", {"vertex": v, "ker_after": _ids(K2), "ker": _ids(c.ker)})
    return {"ker": _ids(c.ker), "ker_after_deletion": after}


def _check_t6(c: _Context) -> dict:
    masks, total = c.listed_critical_sets()
    ker_matchings = {}
    non_ker = []
    for mask in masks:
        A = VertexSet.from_mask(mask)
        is_the_ker = A == c.ker
        B = tight_set(c.G, A)
        check = is_ker(c.G, A)
        statement = {"set": _ids(A), "equals_ker": is_the_ker, "no_tight_set": B is None, "matchings_into_A_minus_v": bool(check)}
        if not (is_the_ker == (B is None) == bool(check)):
            raise Fail("the three characterisations of ker disagree", statement)
        NA = neighborhood(c.G, A)
        for v, M in check.matchings.items():
            problems = validate_saturating(c.G, M, NA, A.discard(v))
            if problems:
                raise Fail("matching into A-v failed re-validation", {"set": _ids(A), "v": v, "problems": problems})
        if is_the_ker:
            ker_matchings = {str(v): _pairs(M) for v, M in check.matchings.items()}
        else:
            tight_nb = neighborhood(c.G, B) & A
            if len(tight_nb) != len(B):
                raise Fail("tight set witness is not tight", {"set": _ids(A), "B": _ids(B)})
            non_ker.append({"set": _ids(A), "tight": _ids(B), "failed_at": check.failed_at})
    return {"checked": len(masks), "critical_independent_sets": total, "ker_matchings": ker_matchings, "non_ker_witnesses": non_ker[:20]}


def _check_c7(c: _Context) -> dict:
    NK = neighborhood(c.G, c.ker)
    rows = []
    for x in c.ker:
        for y in c.G.neighbors(x):
            with_e, without_e = corollary_matchings(c.G, (x, y), c.ker)
            for M in (with_e, without_e):
                problems = validate_saturating(c.G, M, NK, c.ker)
                if problems:
                    raise Fail("corollary matching failed re-validation", {"edge": [x, y], "problems": problems})
            if (y, x) not in with_e or (y, x) in without_e:
                raise Fail("edge membership of corollary matchings is wrong", {"edge": [x, y]})
            rows.append({"edge": [x, y], "with": _pairs(with_e), "without": _pairs(without_e)})
    return {"edges": len(rows), "matchings": rows}


def _family(c: _Context):
    try:
        return c.family
    except EnumerationRefused as exc:
        raise Skip(str(exc)) from None


def _check_t8(c: _Context) -> dict:
    fam = _family(c)
    cert = {"sets": [_ids(S) for S in fam.sets], "ker": _ids(c.ker), "union": _ids(fam.union)}
    if fam.union != c.ker:
        raise Fail("union of minimal positive sets differs from ker", cert)
    if c.G.n <= c.caps.all_subsets:
        brute = oracle.oracle_minimal_positive_sets(c.G, c.caps)
        cert["oracle_agrees"] = [S.mask for S in brute] == [S.mask for S in fam.sets]
        if not cert["oracle_agrees"]:
            cert["oracle_sets"] = [_ids(S) for S in brute]
            raise Fail("enumeration inside ker misses minimal positive sets", cert)
    return cert


def _check_p9(c: _Context) -> dict:
    fam = _family(c)
    if not fam.sets:
        return {"vacuous": True}
    smallest = min(len(S) for S in fam.sets)
    bound = len(c.ker) - c.d_c + 1
    cert = {"min_size": smallest, "bound": bound, "ker_size": len(c.ker), "d_c": c.d_c}
    if smallest > bound:
        raise Fail("smallest minimal positive set exceeds |ker| - d_c + 1", cert)
    return cert


def _check_p10(c: _Context) -> dict:
    fam = _family(c)
    for S, d in zip(fam.sets, fam.differences):
        if d != 1:
            raise Fail("minimal positive set with difference other than 1", {"set": _ids(S), "d": d})
        if not is_minimal_positive(c.G, S):
            raise Fail("enumerated set is not inclusion-minimal", {"set": _ids(S)})
    return {"sets": len(fam.sets), "differences": list(fam.differences)}


def _check_p12(c: _Context) -> dict:
    fam = _family(c)
    masks = [S.mask for S in fam.sets]
    f = len(masks)
    budget = c.caps.p12_subfamilies
    max_k = 1
    used = 0
    for k in range(2, min(4, f) + 1):
        if used + comb(f, k) > budget:
            break
        used += comb(f, k)
        max_k = k
    table = []
    checked = 0
    for k in range(2, max_k + 1):
        for idx in combinations(range(f), k):
            ok = True
            for i in idx:
                others = 0
                for j in idx:
                    if j != i:
                        others |= masks[j]
                if masks[i] & ~others == 0:
                    ok = False
                    break
            if not ok:
                continue
            union = 0
            for i in idx:
                union |= masks[i]
            d = popcount(union) - popcount(neighborhood_mask(c.G.adj, union))
            checked += 1
            if d < k:
                raise Fail("union of k minimal positive sets has difference below k", {"sets": [_ids(VertexSet.from_mask(masks[i])) for i in idx], "d": d})
            table.append({"sets": [_ids(VertexSet.from_mask(masks[i])) for i in idx], "union": _ids(VertexSet.from_mask(union)), "d": d})
    cert: dict[str, Any] = {"family_size": f, "max_k": max_k, "checked": checked}
    if len(table) <= 200:
        cert["table"] = table
    else:
        cert["min_excess"] = min(row["d"] - len(row["sets"]) for row in table)
    return cert


def _check_bip(c: _Context) -> dict:
    if not c.G.is_bipartite():
        raise Skip("graph is not bipartite")
    cert = {"ker": _ids(c.ker), "core": _ids(c.core)}
    if c.core != c.ker:
        raise Fail("ker differs from core on a bipartite graph", cert)
    return cert


def _check_ker_core(c: _Context) -> dict:
    cert = {"ker": _ids(c.ker), "core": _ids(c.core)}
    if not c.ker <= c.core:
        raise Fail("ker is not inside core", cert)
    return cert


_CHECKS: dict[str, Callable[[_Context], dict]] = {
    "T3": _check_t3,
    "T4i": _check_t4i,
    "T4ii": _check_t4ii,
    "T4iii": _check_t4iii,
    "P5i": _check_p5i,
    "P5ii": _check_p5ii,
    "T6": _check_t6,
    "C7": _check_c7,
    "T8": _check_t8,
    "P9": _check_p9,
    "P10": _check_p10,
    "P12": _check_p12,
    "BIP-KER-CORE": _check_bip,
    "KER-SUBSET-CORE": _check_ker_core,
}


def verify_all(G: Graph, caps: Caps = DEFAULT_CAPS, seed: int = 0) -> list[TheoremVerdict]:
    """One verdict per theorem id, in the fixed order of ``THEOREM_IDS``."""
    ctx = _Context(G, caps, seed)
    verdicts = []
    g6 = to_graph6(G)
    for tid in THEOREM_IDS:
        start = time.perf_counter()
        try:
            cert = _CHECKS[tid](ctx)
            verdict = TheoremVerdict(tid, "pass", certificate=cert)
        except Skip as exc:
            verdict = TheoremVerdict(tid, "skipped", reason=str(exc))
        except CapExceeded as exc:
            verdict = TheoremVerdict(tid, "skipped", reason=str(exc))
        except Fail as exc:
            verdict = TheoremVerdict(tid, "fail", reason=str(exc), certificate={"graph6": g6, **exc.payload})
        except Exception as exc:  # a crash inside a check is reported as a failure
            verdict = TheoremVerdict(tid, "fail", reason=f"{type(exc).__name__}: {exc}", certificate={"graph6": g6})
        verdict.ms = (time.perf_counter() - start) * 1000.0
        verdicts.append(verdict)
    return verdicts


def verdicts_to_json(graph: str, verdicts: list[TheoremVerdict], timing: bool = False) -> dict:
    return {"graph": graph, "verdicts": [v.to_dict(timing) for v in verdicts]}


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)
