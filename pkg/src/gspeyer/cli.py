"""Command-line entry point: ``gspeyer {compute,family,decompose,verify,stats}``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .graphcore import Graph, family, parse_graph6, write_graph6
from .matroid import GraphicMatroid
from .poly import Poly, format_poly, parse_poly
from .speyer import (
    closed_form, closed_form_names, closed_form_status, g_recursive, schubert_decomposition,
    to_n_expansion, uniform,
)

log = logging.getLogger("gspeyer")

# family names that differ from their closed-form key
_FORM_ALIASES = {"moebius_ladder": "moebius", "mobius": "moebius"}


# records -------------------------------------------------------------------------

def record(g6: str, g: Graph, poly: Poly) -> str:
    """``graph6,v,e,N2,g`` with the polynomial last and no spaces."""
    n = to_n_expansion(poly) if poly else []
    n2 = n[2] if len(n) > 2 else 0
    return f"{g6},{g.vertex_count},{g.m},{n2},{format_poly(poly) or '0'}"


def compute_line(g6: str) -> str:
    g = parse_graph6(g6)
    return record(g6, g, g_recursive(GraphicMatroid(g)) if g.m else Poly())


def _safe(item: tuple[int, str]) -> tuple[int, str, str | None]:
    lineno, g6 = item
    try:
        return lineno, compute_line(g6), None
    except Exception as exc:  # noqa: BLE001  per-graph failures go to the sidecar
        return lineno, "", f"{type(exc).__name__}: {exc}"


def parse_record(line: str) -> tuple[str, int, int, int, Poly]:
    parts = line.strip().split(",")
    if len(parts) != 5:
        raise ValueError(f"expected 5 fields, got {len(parts)}")
    g6, v, e, n2, poly = parts
    return g6, int(v), int(e), int(n2), parse_poly(poly)


# commands ------------------------------------------------------------------------

def cmd_compute(args: argparse.Namespace) -> int:
    try:
        with open(args.input, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    items = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    threads = max(1, args.threads)
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(threads) as pool:
            results = list(pool.map(_safe, items, chunksize=max(1, len(items) // (8 * threads))))
    else:
        results = [_safe(it) for it in items]
    failures = [(ln, err) for ln, _, err in results if err]
    log.info("computed %d of %d graphs", len(items) - len(failures), len(items))
    with open(args.output, "w", encoding="ascii", newline="\n") as out:
        for _, text, err in results:
            if err is None:
                out.write(text + "\n")
    sidecar = args.output + ".errors"
    if failures:
        with open(sidecar, "w", encoding="utf-8") as fh:
            for ln, err in failures:
                fh.write(f"line {ln}: {err}\n")
        print(f"{len(failures)} of {len(items)} lines failed, see {sidecar}", file=sys.stderr)
        return 1
    if os.path.exists(sidecar):
        os.remove(sidecar)
    return 0


def _family_params(text: str | None) -> tuple:
    if not text:
        return ()
    if ":" in text:
        n, jumps = text.split(":", 1)
        return int(n), [int(j) for j in jumps.split(",")]
    return tuple(int(p) for p in text.split(","))


def cmd_family(args: argparse.Namespace) -> int:
    name = args.name.lower().replace("-", "_")
    params = _family_params(args.param)
    if name == "uniform":
        poly = g_recursive(uniform(*params))
        print(f"U({params[0]},{params[1]}): {format_poly(poly)}")
    else:
        try:
            g = family(name, *params)
        except (ValueError, TypeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        g6 = write_graph6(g)
        poly = g_recursive(GraphicMatroid(g))
        print(g6 if args.emit == "g6" else record(g6, g, poly))
    key = _FORM_ALIASES.get(name, name)
    if key in closed_form_names():
        try:
            form = closed_form(key, *params)
        except ValueError as exc:
            print(f"closed form: n/a ({exc})")
            return 0
        print(f"closed form ({closed_form_status(key, *params)}): {format_poly(form)}")
        print("MATCH" if form == poly else "MISMATCH")
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    g = parse_graph6(args.graph)
    print(schubert_decomposition(GraphicMatroid(g)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import findings_csv, suite_findings, summarize

    if args.suite != "all" and args.suite not in _suite_names():
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return 2
    try:
        with open(args.input, encoding="ascii") as fh:
            graphs = [parse_graph6(ln) for ln in fh.read().split()]
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    findings = [f for g in graphs for f in suite_findings(args.suite, g)]
    sys.stdout.write(findings_csv(findings))
    for cid, c in sorted(summarize(findings).items()):
        print(f"{cid}: {c['agrees']} agree, {c['violates']} violate, {c['skipped']} skipped",
              file=sys.stderr)
    return 0


def _suite_names() -> tuple[str, ...]:
    from .verify import SUITES
    return SUITES


def cmd_stats(args: argparse.Namespace) -> int:
    hist: dict[int, int] = {}
    lo = hi = None
    try:
        with open(args.input, encoding="ascii") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    g6, _, _, n2, _ = parse_record(line)
                except ValueError as exc:
                    print(f"error: {args.input}:{lineno}: {exc}", file=sys.stderr)
                    return 2
                hist[n2] = hist.get(n2, 0) + 1
                if lo is None or n2 < lo[0]:
                    lo = (n2, g6)
                if hi is None or n2 > hi[0]:
                    hi = (n2, g6)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("N2\tcount")
    for k in sorted(hist):
        print(f"{k}\t{hist[k]}")
    if lo is not None:
        print(f"min\t{lo[0]}\t{lo[1]}")
        print(f"max\t{hi[0]}\t{hi[1]}")
    return 0


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gspeyer", description="Speyer g-polynomials of graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="graph6 file -> CSV of v, e, N2, g")
    c.add_argument("--input", required=True)
    c.add_argument("--output", required=True)
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_compute)

    f = sub.add_parser("family", help="build a named family member and compare closed forms")
    f.add_argument("--name", required=True)
    f.add_argument("--param", help="integer, comma list, or n:j1,j2 for circulants")
    f.add_argument("--emit", choices=("g6", "csv"), default="csv")
    f.set_defaults(func=cmd_family)

    d = sub.add_parser("decompose", help="print the Schubert expansion of a graph")
    d.add_argument("--graph", required=True)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="run a relation suite over a graph6 file")
    v.add_argument("--suite", required=True)
    v.add_argument("--input", required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="N2 histogram of a compute CSV")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
