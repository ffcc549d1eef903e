"""Command line front end.

Exit codes: 0 success, 1 operational error (bad input, unreadable file),
2 a theorem check or oracle cross-check failed, 3 the conjecture scan found
a counterexample.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Iterable

from .caps import Caps, CapExceeded
from .conjecture import VIOLATION_EXIT_CODE, CorpusSpec, run_scan, summary_json
from .critical import critical_report, ker_by_deletion, ker_by_shrinking
from .fixtures import FIXTURE_NAMES, load_graph
from .graph import Graph, GraphFormatError, VertexSet, parse_edge_list, read_graph6_lines, to_graph6
from .conjecture import generate_random
from .minimal import EnumerationRefused, minimal_positive_sets
from . import oracle
from .verify import THEOREM_IDS, dumps, verdicts_to_json, verify_all

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 2


class UsageError(Exception):
    pass


def _fmt_set(G: Graph, X: Iterable[int] | None) -> str:
    if X is None:
        return "n/a"
    return "{" + ", ".join(G.names(VertexSet(X))) + "}"


def parse_kv(text: str, required: Iterable[str] = ()) -> dict[str, str]:
    """``"n=10,p=0.3"`` -> ``{"n": "10", "p": "0.3"}``."""
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {item!r}")
        out[key.strip()] = value.strip()
    missing = [k for k in required if k not in out]
    if missing:
        raise UsageError(f"missing {', '.join(missing)} in {text!r}")
    return out


def _random_spec(text: str, default_seed: int) -> tuple[int, float, int, int]:
    kv = parse_kv(text, ("n", "p", "count"))
    unknown = set(kv) - {"n", "p", "seed", "count"}
    if unknown:
        raise UsageError(f"unknown random-spec keys: {', '.join(sorted(unknown))}")
    return int(kv["n"]), float(kv["p"]), int(kv.get("seed", default_seed)), int(kv["count"])


def load_inputs(args) -> list[tuple[str, Graph]]:
    if getattr(args, "fixture", None):
        return [(args.fixture, load_graph(args.fixture))]
    if getattr(args, "edges", None):
        return [(args.edges, parse_edge_list(Path(args.edges).read_text()))]
    if getattr(args, "graph6", None):
        return [(to_graph6(G), G) for G in read_graph6_lines(Path(args.graph6).read_text())]
    if getattr(args, "random", None):
        n, p, seed, count = _random_spec(args.random, args.seed)
        return [(to_graph6(G), G) for G in generate_random(n, p, seed, count)]
    raise UsageError("no input given (use --fixture, --edges, --graph6 or --random)")


def _emit(doc, fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(dumps(doc) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


# -- analyze ---------------------------------------------------------------------


def analyze_graph(name: str, G: Graph, caps: Caps) -> tuple[dict, list[str]]:
    rep = critical_report(G, caps)
    doc = {
        "graph": name,
        "n": G.n,
        "m": G.m,
        "labels": list(G.labels) if G.labels is not None else None,
        "critical": rep.to_dict(),
    }
    lines = [
        f"graph {name}: n={G.n} m={G.m}",
        f"d_c = {rep.d_c}",
        f"ker = {_fmt_set(G, rep.ker)}",
        f"max critical independent set = {_fmt_set(G, rep.crit_set)} (size {len(rep.crit_set)})",
        "matching N(ker) -> ker: "
        + (", ".join(f"{G.label(a)}-{G.label(b)}" for a, b in rep.ker_matching) or "(empty)"),
        "deletion deltas: " + " ".join(f"{G.label(v)}:{d:+d}" for v, d in enumerate(rep.deletion_deltas)),
    ]
    try:
        fam = minimal_positive_sets(G, caps, rep.ker, graph_id=name)
        doc["minimal_positive_sets"] = [S.to_list() for S in fam.sets]
        lines.append(f"minimal positive sets ({len(fam)}): " + (" ".join(_fmt_set(G, S) for S in fam.sets) or "none"))
    except EnumerationRefused as exc:
        doc["minimal_positive_sets"] = None
        doc["minimal_positive_sets_skipped"] = str(exc)
        lines.append(f"minimal positive sets: skipped ({exc})")
    try:
        orc = oracle.oracle_report(G, caps)
        doc["oracle"] = orc.to_dict()
        lines.append(
            f"core = {_fmt_set(G, orc.core)}, alpha = {orc.alpha if orc.alpha is not None else 'n/a'}, "
            f"mu = {orc.mu if orc.mu is not None else 'n/a'}, |Omega| = {orc.omega_count if orc.omega_count is not None else 'n/a'}"
        )
        for key, reason in sorted(orc.absent.items()):
            lines.append(f"oracle {key}: skipped ({reason})")
    except CapExceeded as exc:
        doc["oracle"] = None
        doc["oracle_skipped"] = str(exc)
        lines.append(f"oracle: skipped ({exc})")
    return doc, lines


def cmd_analyze(args, caps: Caps) -> int:
    docs, lines = [], []
    for name, G in load_inputs(args):
        doc, text = analyze_graph(name, G, caps)
        docs.append(doc)
        if lines:
            lines.append("")
        lines.extend(text)
    _emit(docs[0] if len(docs) == 1 else docs, args.format, lines)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def cmd_verify(args, caps: Caps) -> int:
    docs, lines = [], []
    failed = False
    tally = {"pass": 0, "fail": 0, "skipped": 0}
    for name, G in load_inputs(args):
        verdicts = verify_all(G, caps, seed=args.seed)
        docs.append(verdicts_to_json(name, verdicts, timing=args.timing))
        lines.append(f"graph {name}")
        for v in verdicts:
            tally[v.status] += 1
            extra = f"  ({v.reason})" if v.reason else ""
            timing = f"  {v.ms:.1f} ms" if args.timing else ""
            lines.append(f"  {v.id:<16}{v.status}{extra}{timing}")
            failed |= v.status == "fail"
    lines.append(f"summary: {tally['pass']} pass, {tally['fail']} fail, {tally['skipped']} skipped")
    _emit(docs[0] if len(docs) == 1 else docs, args.format, lines)
    return EXIT_FAIL if failed else EXIT_OK


# -- minimal-sets ----------------------------------------------------------------


def cmd_minimal_sets(args, caps: Caps) -> int:
    docs, lines = [], []
    for name, G in load_inputs(args):
        fam = minimal_positive_sets(G, caps, graph_id=name)
        docs.append(fam.to_dict())
        lines.append(f"graph {name}: ker = {_fmt_set(G, fam.ker)}, {len(fam)} minimal positive sets")
        lines.extend(f"  {_fmt_set(G, S)}  d={d}" for S, d in zip(fam.sets, fam.differences))
    _emit(docs[0] if len(docs) == 1 else docs, args.format, lines)
    return EXIT_OK


# -- oracle-check ----------------------------------------------------------------


def cmd_oracle_check(args, caps: Caps) -> int:
    docs, lines = [], []
    bad = False
    for name, G in load_inputs(args):
        orc = oracle.oracle_report(G, caps)
        rep = critical_report(G, caps)
        by_del = ker_by_deletion(G)
        by_shrink = ker_by_shrinking(G)
        brute_min = oracle.oracle_minimal_positive_sets(G, caps)
        try:
            fam = [S.to_list() for S in minimal_positive_sets(G, caps, by_shrink).sets]
        except EnumerationRefused:
            fam = None
        checks = {
            "d_c == id_c": rep.d_c == orc.id_c,
            "ker_by_deletion == oracle ker": by_del == orc.ker_as_intersection,
            "ker_by_shrinking == oracle ker": by_shrink == orc.ker_as_intersection,
            "minimal sets == oracle minimal sets": fam == [S.to_list() for S in brute_min],
        }
        if orc.d_c_all_subsets is not None:
            checks["d_c == max over all subsets"] = rep.d_c == orc.d_c_all_subsets
            checks["ker == intersection of all critical sets"] = rep.ker == orc.ker_over_all_critical_sets
        if orc.core is not None:
            checks["ker <= core"] = rep.ker <= orc.core
        ok = all(checks.values())
        bad |= not ok
        docs.append({"graph": name, "agree": ok, "checks": checks, "oracle": orc.to_dict(), "critical": rep.to_dict()})
        lines.append(f"graph {name}: {'agree' if ok else 'DISAGREE'}")
        lines.extend(f"  {'ok  ' if v else 'FAIL'} {k}" for k, v in checks.items())
    _emit(docs[0] if len(docs) == 1 else docs, args.format, lines)
    return EXIT_FAIL if bad else EXIT_OK


# -- conjecture ------------------------------------------------------------------


def _corpus_spec(args) -> CorpusSpec:
    common = dict(
        connected_only=args.connected_only,
        filter_n_min=args.min_n,
        filter_n_max=args.max_n,
        allow_n8=args.allow_n8,
    )
    if args.exhaustive:
        lo, sep, hi = args.exhaustive.partition("-")
        lo_n = int(lo)
        hi_n = int(hi) if sep else lo_n
        return CorpusSpec("exhaustive", n_min=lo_n, n_max=hi_n, **common)
    if args.random:
        n, p, seed, count = _random_spec(args.random, args.seed)
        return CorpusSpec("random", n_min=n, n_max=n, p=p, seed=seed, count=count, **common)
    if args.graph6:
        if not Path(args.graph6).is_file():
            raise FileNotFoundError(args.graph6)
        return CorpusSpec("graph6", path=args.graph6, **common)
    raise UsageError("conjecture needs --exhaustive, --random or --graph6")


def cmd_conjecture(args, caps: Caps) -> int:
    spec = _corpus_spec(args)
    jobs = args.jobs or os.cpu_count() or 1
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "records.csv", "w", newline="") as fh:
            summary = run_scan(spec, fh, out, caps, jobs)
        (out / "summary.json").write_text(summary_json(summary))
        sys.stdout.write(
            f"scanned {summary.scanned} graphs ({summary.skipped} skipped), "
            f"{summary.violations} violations, min margin {summary.min_margin}\n"
        )
    elif args.format == "json":
        summary = run_scan(spec, None, Path("."), caps, jobs)
        sys.stdout.write(summary_json(summary))
    else:
        summary = run_scan(spec, sys.stdout, Path("."), caps, jobs)
        sys.stderr.write(summary_json(summary))
    return VIOLATION_EXIT_CODE if summary.violations else EXIT_OK


# -- argument parsing ------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, allow_random: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", choices=FIXTURE_NAMES, help="bundled example graph")
    g.add_argument("--edges", metavar="PATH", help="edge-list file")
    g.add_argument("--graph6", metavar="PATH", help="graph6 file, one graph per line")
    if allow_random:
        g.add_argument("--random", metavar="n=N,p=P,seed=S,count=C", help="seeded G(n, p) sample")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--caps", default=None, metavar="k=v,...", help="override size caps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critset",
        description="Critical independent sets, ker(G) and minimal positive-difference sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="d_c, ker, a maximum critical independent set, core, alpha, mu")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the theorem suite: " + ", ".join(THEOREM_IDS))
    _add_input(p)
    _add_common(p)
    p.add_argument("--timing", action="store_true", help="include per-check timings (not byte-stable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimal-sets", help="list inclusion-minimal independent sets with d > 0")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_minimal_sets)

    p = sub.add_parser("oracle-check", help="cross-check polynomial results against brute force")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("conjecture", help="scan a corpus for counterexamples")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--exhaustive", metavar="N|A-B", help="all labelled graphs on N (or A..B) vertices")
    g.add_argument("--random", metavar="n=N,p=P,seed=S,count=C")
    g.add_argument("--graph6", metavar="PATH")
    _add_common(p)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--min-n", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--allow-n8", action="store_true", help="permit the 2^28-graph exhaustive scan at n=8")
    p.add_argument("--out", metavar="DIR", help="write records.csv, summary.json and counterexamples here")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        caps = Caps.parse(args.caps)
        return args.func(args, caps)
    except (GraphFormatError, UsageError, ValueError, KeyError, OSError, CapExceeded) as exc:
        sys.stderr.write(f"critset: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
