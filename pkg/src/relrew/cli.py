"""Command-line front end.

Subcommands::

    relrew reduce FILE TERM [--kind seq|par|full] [--bound N]
                            [--format dot|json|text] [--output PATH]
    relrew check-laws [CONFIG.json] [--seed N] [--samples N] [--density F]
                      [--law ID ...] [--output PATH]
    relrew analyze FILE {confluence,weak,cr,cp,spectrum}
                   [--depth N] [--bound N] [--format json|text]

Exit codes: 0 success / property holds; 1 property fails; 2 unconfirmed
(truncated evaluation or reduction bound hit); 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .analysis import (
    FAILS,
    HOLDS,
    UNCONFIRMED,
    check_cp,
    exhaustive_church_rosser,
    exhaustive_confluence,
    exhaustive_weak_confluence,
    seed_terms,
    spectrum_survey,
)
from .laws import SampleConfig, reports_to_json, run_all
from .rewrite import TRS, graph_to_dot, graph_to_json, parse_trs, reduction_graph
from .syntax import TermError, format_term

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_UNCONFIRMED = 2
EXIT_INPUT = 3


@dataclass(frozen=True)
class TrsFile:
    """A parsed rewrite-system file plus enough source information for
    diagnostics (the line number of each rule, in rule order)."""

    trs: TRS
    path: str
    rule_lines: Tuple[int, ...]


def load_trs(path: str) -> TrsFile:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    trs = parse_trs(text)
    rule_lines = tuple(
        lineno
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if raw.split("#", 1)[0].strip().startswith("rule ")
    )
    return TrsFile(trs, path, rule_lines)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_reduce(args: argparse.Namespace) -> int:
    tf = load_trs(args.file)
    term = tf.trs.parse(args.term)
    g = reduction_graph(tf.trs, [term], kind=args.kind, bound=args.bound)
    if args.format == "dot":
        _emit(graph_to_dot(g), args.output)
    elif args.format == "json":
        _emit(graph_to_json(g), args.output)
    else:
        lines = [
            f"seed: {format_term(term)}",
            f"kind: {args.kind}",
            f"nodes: {len(g.nodes)}",
            f"edges: {len(g.edges)}",
            f"exhausted: {g.exhausted}",
            "normal forms: "
            + (", ".join(format_term(t) for t in g.normal_forms()) or "(none found)"),
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if g.exhausted else EXIT_UNCONFIRMED


def cmd_check_laws(args: argparse.Namespace) -> int:
    overrides = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as f:
            overrides = json.load(f)
        if not isinstance(overrides, dict):
            raise ValueError("law-suite config must be a JSON object")
    for key in ("seed", "samples", "density"):
        val = getattr(args, key)
        if val is not None:
            overrides[key] = val
    cfg = SampleConfig.from_dict(overrides)
    reports = run_all(cfg, law_ids=args.law or None)
    _emit(reports_to_json(reports), args.output)
    return EXIT_FAILS if any(r.verdict == "fail" for r in reports) else EXIT_OK


def _verdict_exit(verdict: str) -> int:
    return {HOLDS: EXIT_OK, FAILS: EXIT_FAILS, UNCONFIRMED: EXIT_UNCONFIRMED}[verdict]


def cmd_analyze(args: argparse.Namespace) -> int:
    tf = load_trs(args.file)
    trs = tf.trs
    if args.check == "cp":
        report = check_cp(trs, depth=args.depth if args.depth is not None else 2)
        payload = report.to_json()
        checks = [report.cp1, report.cp2, report.cp1_prime]
        if any(c.verdict == FAILS for c in checks):
            code = EXIT_FAILS
        elif any(c.verdict == UNCONFIRMED for c in checks):
            code = EXIT_UNCONFIRMED
        else:
            code = EXIT_OK
    else:
        seeds = seed_terms(trs, args.depth if args.depth is not None else 3)
        if args.check == "spectrum":
            sreport = spectrum_survey(trs, seeds)
            payload = sreport.to_json()
            code = EXIT_OK if sreport.ok else EXIT_FAILS
        else:
            fn = {
                "confluence": exhaustive_confluence,
                "weak": lambda t, s: exhaustive_weak_confluence(
                    t, s, join_depth=args.bound if args.bound is not None else 12
                ),
                "cr": exhaustive_church_rosser,
            }[args.check]
            preport = fn(trs, seeds)
            payload = preport.to_json()
            code = _verdict_exit(preport.verdict)
    if args.format == "json":
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
    else:
        lines = [f"check: {args.check}"]
        for key in sorted(payload):
            if key != "checks":
                lines.append(f"{key}: {payload[key]}")
        for sub in payload.get("checks", []):
            lines.append(f"  {sub['property']}: {sub['verdict']}"
                         + (f" witnesses={sub['witnesses']}" if sub["witnesses"] else ""))
        _emit("\n".join(lines) + "\n", args.output)
    return code


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relrew",
        description="Term rewriting via an algebra of term relations: "
        "reductions, law checking, confluence analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_red = sub.add_parser("reduce", help="explore a reduction graph from a seed term")
    p_red.add_argument("file", help="rewrite-system file")
    p_red.add_argument("term", help="seed term, e.g. 'A(S(0),S(0))'")
    p_red.add_argument("--kind", choices=("seq", "par", "full"), default="seq")
    p_red.add_argument("--bound", type=int, default=None,
                       help="maximum number of BFS layers")
    p_red.add_argument("--format", choices=("dot", "json", "text"), default="text")
    p_red.add_argument("--output", default=None, help="write output to a file")
    p_red.set_defaults(fn=cmd_reduce)

    p_laws = sub.add_parser("check-laws", help="run the algebraic law suites")
    p_laws.add_argument("config", nargs="?", default=None,
                        help="JSON file with SampleConfig fields")
    p_laws.add_argument("--seed", type=int, default=None)
    p_laws.add_argument("--samples", type=int, default=None)
    p_laws.add_argument("--density", type=float, default=None)
    p_laws.add_argument("--law", action="append", default=None,
                        help="restrict to a law id (repeatable)")
    p_laws.add_argument("--output", default=None, help="write the JSON report here")
    p_laws.set_defaults(fn=cmd_check_laws)

    p_an = sub.add_parser("analyze", help="confluence-family analyses of a TRS")
    p_an.add_argument("file", help="rewrite-system file")
    p_an.add_argument("check",
                      choices=("confluence", "weak", "cr", "cp", "spectrum"))
    p_an.add_argument("--depth", type=int, default=None,
                      help="seed/universe depth (default 3, cp default 2)")
    p_an.add_argument("--bound", type=int, default=None,
                      help="join-search depth for weak confluence (default 12)")
    p_an.add_argument("--format", choices=("json", "text"), default="text")
    p_an.add_argument("--output", default=None, help="write output to a file")
    p_an.set_defaults(fn=cmd_analyze)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TermError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
