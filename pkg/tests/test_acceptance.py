"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL
line (collected again in the terminal summary)."""

import csv
import io
import random
import subprocess
import sys
import time
from itertools import combinations

import numpy as np
import pytest

from critset import cli, conjecture, oracle
from critset.conjecture import CorpusSpec, generate_exhaustive, generate_random, record_from_row, replay, run_scan
from critset.critical import (
    critical_difference,
    ker_after_deletion,
    ker_by_deletion,
    ker_by_shrinking,
)
from critset.fixtures import FIXTURE_NAMES, load_fixture, load_graph
from critset.graph import Graph, delete_vertex, difference, is_independent, parse_edge_list
from critset.minimal import minimal_positive_sets
from critset.verify import verify_all

RESULTS: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _ids(G, labels):
    return G.ids(labels)


def _family(G):
    return sorted(sorted(G.names(S)) for S in minimal_positive_sets(G).sets)


def test_criterion_1_fig1():
    t0 = time.perf_counter()
    fx = load_fixture("fig1")
    G = fx.graph
    X = _ids(G, ["v1", "v2", "v3", "v4"])
    I = _ids(G, ["v1", "v2", "v3", "v6", "v7"])
    checks = [
        critical_difference(G) == fx.value("d_c") == 1,
        ker_by_shrinking(G) == _ids(G, fx.value("ker")),
        oracle.oracle_core(G) == _ids(G, fx.value("core")),
        difference(G, X) == 1,
        is_independent(G, I) and difference(G, I) == 1,
    ]
    elapsed = time.perf_counter() - t0
    report(1, all(checks) and elapsed < 1.0, f"fig1 d_c/ker/core/d(X)/d(I) exact, {elapsed:.3f} s (< 1 s)")


def test_criterion_2_fig2():
    G1, G2, G3 = (load_graph(n) for n in ("fig2_g1", "fig2_g2", "fig2_g3"))
    core3 = oracle.oracle_core(G3)
    checks = [
        ker_by_shrinking(G1) == _ids(G1, ["a", "b"]) == oracle.oracle_core(G1),
        ker_by_shrinking(G2) == _ids(G2, ["x", "y", "z"]),
        oracle.oracle_core(G2) == _ids(G2, ["q", "x", "y", "z"]),
        ker_by_shrinking(G2) < oracle.oracle_core(G2),
        ker_by_shrinking(G3) == _ids(G3, ["u", "v"]),
        core3 == _ids(G3, ["t", "u", "v", "w"]),
        difference(G3, core3) < critical_difference(G3),
    ]
    report(2, all(checks), f"G1/G2/G3 ker and core exact; d(core(G3))={difference(G3, core3)} < d_c={critical_difference(G3)}")


def test_criterion_3_fig3():
    G, H = load_graph("fig3_g"), load_graph("fig3_h")
    S1, S2, S3 = (_ids(H, p) for p in (["v1", "v2"], ["v2", "v3"], ["v3", "v4"]))
    famH = minimal_positive_sets(H)
    checks = [
        critical_difference(G) == 2,
        ker_by_shrinking(G) == _ids(G, ["x", "y", "u", "v", "w"]),
        _family(G) == [["u", "v", "w"], ["x", "y"]],
        critical_difference(H) == 3,
        len(famH) == 6,
        all(S in famH.sets for S in (S1, S2, S3)),
        difference(H, S1 | S2) == 2,
        difference(H, S1 | S3) == 3,
    ]
    report(3, all(checks), "fig3_g d_c=2, ker, family {{x,y},{u,v,w}}; star: d_c=3, 6 sets, d(S1|S2)=2, d(S1|S3)=3")


def test_criterion_4_k32_and_c4():
    K, C = load_graph("k32"), load_graph("c4")
    A = _ids(K, ["a1", "a2", "a3"])
    checks = [ker_by_shrinking(K) == A, ker_by_deletion(K) == A]
    checks += [ker_after_deletion(K, v) == set() for v in A]
    checks += [ker_by_shrinking(C) == set()]
    for v in range(4):
        P3, mapping = delete_vertex(C, v)
        ends = {mapping[u] for u in range(3) if P3.degree(u) == 1}
        checks.append(ker_after_deletion(C, v) == ends)
    report(4, all(checks), "ker(K32)=A, ker(K32-v)={} for v in A, ker(C4)={}, ker(C4-v)=ends of P3")


def test_criterion_5_two_algorithm_agreement():
    t0 = time.perf_counter()
    graphs = [load_graph(n) for n in FIXTURE_NAMES]
    ps = [round(0.1 * k, 1) for k in range(1, 10)]
    for i, p in enumerate(ps):
        for n in range(1, 11):
            graphs.extend(generate_random(n, p, seed=1000 * i + n, count=23))
    random_count = len(graphs) - len(FIXTURE_NAMES)
    bad = [
        G for G in graphs
        if not (ker_by_deletion(G) == ker_by_shrinking(G) == oracle.oracle_ker(G))
    ]
    elapsed = time.perf_counter() - t0
    ok = not bad and random_count >= 2000 and elapsed < 120
    report(5, ok, f"{len(FIXTURE_NAMES)} fixtures + {random_count} random graphs, {len(bad)} disagreements, {elapsed:.1f} s (< 120 s)")


def test_criterion_6_critical_difference_three_ways():
    graphs = [G for n in range(1, 6) for G in generate_exhaustive(n)]
    exhaustive = len(graphs)
    rng = np.random.Generator(np.random.PCG64(606))
    for _ in range(500):
        n = int(rng.integers(1, 13))
        p = float(rng.uniform(0.05, 0.95))
        graphs.extend(generate_random(n, p, int(rng.integers(2**31)), 1))
    bad = 0
    for G in graphs:
        all_subsets, _ = oracle.critical_difference_all_subsets(G)
        id_c = oracle.critical_independence_difference(G)
        if not all_subsets == id_c == critical_difference(G):
            bad += 1
    ok = exhaustive == 1 + 2 + 8 + 64 + 1024 and bad == 0
    report(6, ok, f"{exhaustive} exhaustive (n<=5) + 500 random (n<=12): max-over-subsets = id_c = d_c, {bad} disagreements")


def _random_connected_bipartite(rng, n):
    while True:
        a = int(rng.integers(1, n)) if n > 1 else 1
        edges = [(u, v) for u in range(a) for v in range(a, n) if rng.random() < 0.35]
        G = Graph.from_edges(n, edges)
        if G.is_connected():
            return G


def test_criterion_7_property_suite():
    rng = np.random.Generator(np.random.PCG64(707))
    general = [load_graph(n) for n in FIXTURE_NAMES]
    for _ in range(300):
        n = int(rng.integers(1, 13))
        general.extend(generate_random(n, float(rng.uniform(0.1, 0.9)), int(rng.integers(2**31)), 1))
    bipartite = [_random_connected_bipartite(rng, int(rng.integers(2, 15))) for _ in range(200)]
    failures = []
    passes = 0
    for G in general + bipartite:
        for v in verify_all(G, seed=7):
            if v.status == "fail":
                failures.append((v.id, v.reason))
            elif v.status == "pass":
                passes += 1
    bip_ok = all(
        {v.id: v.status for v in verify_all(G, seed=7)}["BIP-KER-CORE"] == "pass" for G in bipartite
    )
    ok = not failures and bip_ok
    report(7, ok, f"{len(general)} graphs + 200 connected bipartite (n<=14): {passes} passing checks, {len(failures)} failures, ker=core on all bipartite: {bip_ok}")


def _scan(spec, tmp):
    out = io.StringIO()
    summary = run_scan(spec, out, tmp, jobs=1)
    return summary, out.getvalue()


def test_criterion_8_conjecture_scan(tmp_path, monkeypatch):
    t0 = time.perf_counter()
    small, small_csv = _scan(CorpusSpec("exhaustive", n_min=1, n_max=6), tmp_path / "a")
    t_small = time.perf_counter() - t0
    again, again_csv = _scan(CorpusSpec("exhaustive", n_min=1, n_max=6), tmp_path / "b")

    t0 = time.perf_counter()
    code = cli.main(["conjecture", "--exhaustive", "7", "--out", str(tmp_path / "n7")])
    t_seven = time.perf_counter() - t0
    n7_summary = (tmp_path / "n7" / "summary.json").read_text()
    rows = list(csv.reader(open(tmp_path / "n7" / "records.csv")))[1:]

    # self-certifying records: a sample replays through the polynomial pipeline
    sample = random.Random(8).sample(rows, 300) + list(csv.reader(io.StringIO(small_csv)))[1::97]
    replay_bad = sum(replay(record_from_row(r)) != record_from_row(r) for r in sample)

    # the violation path: a forced failure must land on disk and exit 3
    monkeypatch.setattr(conjecture, "holds", lambda count, d_c: d_c < 3)
    forced = cli.main(["conjecture", "--exhaustive", "3", "--jobs", "1", "--out", str(tmp_path / "forced")])
    dumped = parse_edge_list((tmp_path / "forced" / "counterexample_000000.edges").read_text())
    monkeypatch.undo()

    ok = (
        small.graphs == 1 + 2 + 8 + 64 + 1024 + 32768
        and small.violations == 0
        and t_small < 60
        and (again_csv, again.to_dict()) == (small_csv, small.to_dict())
        and code == 0
        and len(rows) == 2**21
        and '"violations": 0' in n7_summary
        and t_seven < 1800
        and replay_bad == 0
        and forced == 3
        and dumped == Graph.empty(3)
    )
    report(
        8,
        ok,
        f"n<=6: {small.graphs} graphs, {small.violations} violations, {t_small:.1f} s; "
        f"n=7: {len(rows)} graphs, exit {code}, {t_seven:.1f} s; {len(sample)} replays, {replay_bad} mismatches; "
        f"reruns identical; forced violation -> exit {forced} + .edges",
    )


CLI_RUNS = [
    ["analyze", "--fixture", "fig1"],
    ["analyze", "--fixture", "fig3_h", "--format", "json"],
    ["verify", "--fixture", "fig2_g2"],
    ["verify", "--random", "n=10,p=0.3,seed=7,count=100", "--format", "json"],
    ["minimal-sets", "--fixture", "fig3_g", "--format", "json"],
    ["oracle-check", "--fixture", "fig1"],
    ["oracle-check", "--random", "n=9,p=0.5,seed=2,count=30", "--format", "json"],
    ["conjecture", "--exhaustive", "5"],
    ["conjecture", "--random", "n=10,p=0.4,seed=3,count=500"],
]


def test_criterion_9_determinism():
    def run(args):
        p = subprocess.run([sys.executable, "-m", "critset.cli", *args], capture_output=True)
        return p.returncode, p.stdout, p.stderr

    differing = [" ".join(a) for a in CLI_RUNS if run(a) != run(a)]
    report(9, not differing, f"{len(CLI_RUNS)} CLI invocations rerun byte-identically; differing: {differing or 'none'}")
