"""Command-line front end: ``distlam <command> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 fuel or node cap exhausted,
3 cycle detected, 4 type error or failed ``--expect``, 5 a suite found a
counterexample, 6 types are not isomorphic.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from dataclasses import replace
from typing import Optional, Sequence

from .parser import ParseError, ShadowedBindingWarning, parse_context, parse_term, parse_type
from .rewrite import CORE, EXTENDED, CycleDetected, FuelExhausted, NormalForm, build_graph, reduce
from .syntax import dump, dump_type, pretty, pretty_type
from .typesys import TypeCheckError, infer, type_nf, types_iso

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FUEL = 2
EXIT_CYCLE = 3
EXIT_TYPE = 4
EXIT_SUITE = 5
EXIT_NOT_ISO = 6

DEFAULT_SEED = 0
RULES = {"core": CORE, "extended": EXTENDED}
STRATEGY_NAMES = {"lo": "lo", "first": "first", "rand": "random", "random": "random"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("DISTLAM_COLOR", "1") == "0" or not stream.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _read(arg: str) -> str:
    """The argument itself, or the contents of the file named after ``@``."""
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as err:
            raise UsageError(f"cannot read {arg[1:]}: {err.strerror}") from err
    return arg


def _seed(text: Optional[str]) -> int:
    if text is None:
        return DEFAULT_SEED
    if text == "now":
        seed = random.SystemRandom().getrandbits(63)
        print(f"seed {seed}", file=sys.stderr)
        return seed
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"seed must be an integer or 'now', got {text!r}") from None


def _context(text: str):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ShadowedBindingWarning)
        ctx = parse_context(_read(text))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return ctx


def _steps(n: int) -> str:
    return "1 step" if n == 1 else f"{n} steps"


# ----------------------------------------------------------------------------
# Commands


def cmd_reduce(args) -> int:
    rules = RULES[args.rules]
    strategy = STRATEGY_NAMES[args.strategy] if args.strategy else None
    if strategy == "lo" and rules is EXTENDED:
        raise UsageError("leftmost-outermost reduction is only defined for the core rules")
    if strategy is None:
        strategy = "lo" if rules is CORE else "first"
    if args.fuel <= 0:
        raise UsageError("--fuel must be positive")
    t = parse_term(_read(args.term))
    out = reduce(t, strategy, args.fuel, rules, _seed(args.seed))
    if args.trace:
        for step in out.trace:
            print(step)
    print(pretty(out.term))
    if isinstance(out, NormalForm):
        return EXIT_OK
    if isinstance(out, FuelExhausted):
        print(f"fuel exhausted after {_steps(len(out.trace))}", file=sys.stderr)
        return EXIT_FUEL
    assert isinstance(out, CycleDetected)
    print(f"cycle detected after {_steps(len(out.trace))}", file=sys.stderr)
    return EXIT_CYCLE


def cmd_typecheck(args) -> int:
    ctx = _context(args.ctx)
    t = parse_term(_read(args.term))
    expected = parse_type(_read(args.expect)) if args.expect is not None else None
    try:
        ty = infer(ctx, t)
    except TypeCheckError as err:
        print(f"type error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_TYPE
    print(pretty_type(ty))
    if expected is not None and not types_iso(ty, expected):
        print(f"type mismatch: expected {pretty_type(expected)} "
              f"(normal form {pretty_type(type_nf(expected))})", file=sys.stderr)
        return EXIT_TYPE
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = parse_type(_read(args.left)), parse_type(_read(args.right))
    print(pretty_type(type_nf(a)))
    print(pretty_type(type_nf(b)))
    if types_iso(a, b):
        print(_color("yes", "32", sys.stdout))
        return EXIT_OK
    print(_color("no", "31", sys.stdout))
    return EXIT_NOT_ISO


def cmd_graph(args) -> int:
    if args.max_nodes <= 0:
        raise UsageError("--max-nodes must be positive")
    t = parse_term(_read(args.term))
    g = build_graph(t, RULES[args.rules], args.max_nodes)
    dot = g.to_dot()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    state = "exhausted" if g.exhausted else f"stopped at {args.max_nodes} nodes"
    print(f"{len(g.nodes)} nodes, {len(g.edges)} edges, {state}", file=sys.stderr)
    return EXIT_OK if g.exhausted else EXIT_FUEL


def cmd_check(args) -> int:
    from .harness.report import GenConfig
    from .harness.suites import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.size < 1:
        raise UsageError("--size must be at least 1")
    cfg = replace(GenConfig(), seed=_seed(args.seed), trials=args.trials, max_size=args.size)
    reports = []
    for name in names:
        report = run_suite(name, cfg, args.fuel, args.node_cap)
        reports.append(report)
        text = report.to_text(with_time=not args.no_time)
        status = "PASS" if report.ok else "FAIL"
        text = text.replace(status, _color(status, "32" if report.ok else "31", sys.stdout), 1)
        print(text)
        sys.stdout.flush()
    ok = all(r.ok for r in reports)
    if args.json:
        doc = {"ok": ok, "seed": cfg.seed, "suites": [r.to_dict() for r in reports]}
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_SUITE


def cmd_parse(args) -> int:
    text = _read(args.text)
    if args.type:
        a = parse_type(text)
        print(dump_type(a))
        print(pretty_type(a))
    elif args.context:
        ctx = _context(args.text)
        for name, ty in ctx.items():
            print(f"{name} : {dump_type(ty)}")
    else:
        t = parse_term(text)
        print(dump(t))
        print(pretty(t))
    return EXIT_OK


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .harness.suites import SUITES

    parser = _Parser(prog="distlam", description="Distributive lambda-calculus workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="reduce a term")
    p.add_argument("term", help="term text, or @file")
    p.add_argument("--strategy", choices=sorted(STRATEGY_NAMES),
                   help="default: lo for core rules, first for extended")
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--rules", choices=sorted(RULES), default="core")
    p.add_argument("--trace", action="store_true", help="print every step")
    p.add_argument("--seed", help="seed for the random strategy, or 'now'")
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("typecheck", help="infer the type of an annotated term")
    p.add_argument("term")
    p.add_argument("--ctx", default="", help="typing context, e.g. 'x:A, f:A -> B'")
    p.add_argument("--expect", help="fail unless the type is isomorphic to this one")
    p.set_defaults(run=cmd_typecheck)

    p = sub.add_parser("iso", help="decide whether two types are isomorphic")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_iso)

    p = sub.add_parser("graph", help="write the reduction graph as DOT")
    p.add_argument("term")
    p.add_argument("--max-nodes", "--fuel", dest="max_nodes", type=int, default=20000)
    p.add_argument("--rules", choices=sorted(RULES), default="core")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("check", help="run property suites")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", help=f"integer or 'now' (default {DEFAULT_SEED})")
    p.add_argument("--size", type=int, default=12, help="maximum generated term size")
    p.add_argument("--fuel", type=int, default=200)
    p.add_argument("--node-cap", type=int, default=20000)
    p.add_argument("--json", help="also write the reports as JSON to this path")
    p.add_argument("--no-time", action="store_true", help="omit wall times from the output")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("parse", help="echo the syntax tree")
    p.add_argument("text")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--type", action="store_true", help="parse a type")
    kind.add_argument("--context", action="store_true", help="parse a typing context")
    p.set_defaults(run=cmd_parse)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as err:
        print(f"parse error: {err.render()}", file=sys.stderr)
    except UsageError as err:
        print(f"distlam: error: {err}", file=sys.stderr)
    except OSError as err:
        print(f"distlam: error: {err}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
