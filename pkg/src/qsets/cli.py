"""Command-line front end.

Exit codes: 0 success (for ``check``: the suite passed), 1 suite failed,
2 parse or name-resolution error, 3 formula not Δ0, 4 invalid universe file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import harness, logic
from .evaluate import (
    Environment, Evaluator, NotDelta0Error, SemanticsMode, UnboundNameError, describe,
)
from .formula import FormulaError, parse
from .universe import QSet, check_ordinal, qset_commutator, restrict
from .universe_file import UniverseError, dump_universe, qset_to_json, read_universe

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_NOT_DELTA0 = 3
EXIT_UNIVERSE = 4


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str | None, dim: int) -> Environment:
    if path is None:
        return Environment(dim)
    try:
        return read_universe(path)
    except (UniverseError, ValueError) as exc:
        raise CommandError(f"invalid universe: {exc}", EXIT_UNIVERSE) from exc


def _qsets(env: Environment, names: str) -> list[QSet]:
    out = []
    for name in filter(None, (n.strip() for n in names.split(","))):
        try:
            out.append(env.lookup(name))
        except UnboundNameError as exc:
            raise CommandError(str(exc), EXIT_PARSE) from exc
    if not out:
        raise CommandError("no quantum sets given", EXIT_PARSE)
    return out


def _projection(env: Environment, name: str) -> logic.Projection:
    if name == "full":
        return logic.one(env.dim)
    if name == "zero":
        return logic.zero(env.dim)
    if name in env.projections:
        return env.projections[name]
    raise CommandError(f"unknown projection {name!r}", EXIT_PARSE)


def qset_text(u: QSet, env: Environment | None = None) -> str:
    """Nested ``{<key, value>, ...}`` rendering with 1, 0 or projection names."""

    def value(p: logic.Projection) -> str:
        if p.is_one:
            return "1"
        if p.is_zero:
            return "0"
        name = env.projection_name(p) if env is not None else None
        return name or describe(p, show_span=True).split(" ", 1)[1]

    def go(x: QSet) -> str:
        return "{" + ", ".join(f"<{go(k)}, {value(v)}>" for k, v in x.entries) + "}"

    return go(u)


# -- commands --------------------------------------------------------------------

def cmd_eval(args) -> int:
    env = _load(args.universe, args.dim)
    text = args.formula
    if text.startswith("@"):
        if text[1:] not in env.formulas:
            raise CommandError(f"no formula named {text[1:]!r} in the universe", EXIT_PARSE)
        text = env.formulas[text[1:]]
    try:
        f = parse(text)
        value = Evaluator(SemanticsMode(args.semantics)).evaluate(f, env)
    except NotDelta0Error as exc:
        raise CommandError(str(exc), EXIT_NOT_DELTA0) from exc
    except FormulaError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from exc
    print(describe(value, env, show_span=args.show_span))
    return EXIT_OK


def cmd_demo(args) -> int:
    env = harness.counterexample_environment()
    vals = harness.counterexample_values()
    p = env.projections["P"]
    print("dimension 2, P = span{(1,0)}, Q = span{(1,1)}")
    print("u = {<check:0, P>}, v = {<check:0, Q>}, phi(x) = !(x in v)")
    rows = [("[E x in u . !phi(x)]", "exists_not_phi"), ("[!(A x in u . phi(x))]", "not_forall_phi"),
            ("[A x in u . !phi(x)]", "forall_not_phi"), ("[!(E x in u . phi(x))]", "not_exists_phi")]
    for mode in ("takeuti", "reformed"):
        print(f"\n{mode}:")
        for label, key in rows:
            print(f"  {label:<26} = {describe(vals[mode][key], env, show_span=True)}")
    t, r = vals["takeuti"], vals["reformed"]
    assert t["exists_not_phi"].is_zero and t["not_forall_phi"] is p
    assert r["exists_not_phi"] is r["not_forall_phi"] is p
    print("\ntakeuti: 0 = [E x in u . !phi] < [!(A x in u . phi)] = P  (De Morgan fails)")
    print("reformed: both sides equal P  (De Morgan holds)")
    return EXIT_OK


def cmd_check(args) -> int:
    kw: dict = {"seed": args.seed}
    if args.cases is not None:
        kw["cases"] = args.cases
    if args.dim is not None:
        lo, hi = args.dim
        if lo is None:
            lo = 1 if args.suite == "eqv" else min(2, hi)
        kw["dims"] = (lo, hi)
    if args.rank is not None:
        if args.suite == "eqv":
            kw["hf_rank_cap"] = args.rank
        elif args.suite not in ("kernel", "commutators"):
            kw["rank_cap"] = args.rank
    if args.suite == "transfer" and args.conditional:
        kw["conditional"] = args.conditional
    try:
        report = harness.RUNNERS[args.suite](**kw)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from exc
    if args.format == "summary":
        print(json.dumps(report.summary(), sort_keys=True))
    elif args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_commutator(args) -> int:
    env = _load(args.universe, args.dim)
    us = _qsets(env, args.sets)
    print(describe(qset_commutator(us), env, show_span=True))
    return EXIT_OK


def cmd_embed(args) -> int:
    if args.n < 0:
        raise CommandError("n must be non-negative", EXIT_PARSE)
    u = check_ordinal(args.n, args.dim)
    if args.format == "json":
        print(json.dumps(qset_to_json(u, name=f"check{args.n}"), indent=2))
    else:
        print(qset_text(u))
    return EXIT_OK


def cmd_restrict(args) -> int:
    env = _load(args.universe, args.dim)
    (u,) = _qsets(env, args.set)
    p = _projection(env, args.proj)
    r = restrict(u, p)
    name = args.as_name or f"{args.set}_r"
    out = env.with_qsets({name: r})
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(dump_universe(out), fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.output} with {name} = {args.set}|{args.proj}")
    else:
        print(qset_text(r, env))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def dim_range(text: str) -> tuple[int | None, int]:
    """``"4"`` gives (None, 4): the suite picks the lower end. ``"2-4"`` gives (2, 4)."""
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
        else:
            lo, hi = None, int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension {text!r}") from None
    if not 1 <= (lo or 1) <= hi <= logic.MAX_DIM:
        raise argparse.ArgumentTypeError(f"dimensions must lie in 1..{logic.MAX_DIM}")
    return lo, hi

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def universe_flags(p, required=False):
        p.add_argument("--universe", required=required, help="JSON universe file")
        p.add_argument("--dim", type=int, default=2,
                       help="dimension when no universe file is given (default 2)")

    p = sub.add_parser("eval", help="truth value of a closed bounded formula")
    universe_flags(p)
    p.add_argument("--formula", required=True, help="formula text, or @name from the universe")
    p.add_argument("--semantics", choices=[m.value for m in SemanticsMode], default="reformed")
    p.add_argument("--show-span", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("demo", help="walkthrough demos")
    p.add_argument("name", choices=["counterexample"])
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("suite", choices=harness.SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int)
    p.add_argument("--dim", type=dim_range,
                   help="largest dimension sampled, or a range LO-HI")
    p.add_argument("--rank", type=int, help="rank cap (HF rank cap for eqv)")
    p.add_argument("--conditional", choices=sorted(logic.CONDITIONALS),
                   help="transfer only: conditional used by the evaluator (non-Sasaki is exploratory)")
    p.add_argument("--format", choices=["text", "summary", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("commutator", help="commutator of quantum sets")
    universe_flags(p, required=True)
    p.add_argument("--sets", required=True, help="comma-separated quantum set names")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("embed", help="the check embedding of the ordinal n")
    p.add_argument("n", type=int)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("restrict", help="restrict a quantum set by a projection")
    universe_flags(p, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--proj", required=True, help="projection name, 'full' or 'zero'")
    p.add_argument("--as", dest="as_name", help="name for the restricted set (default <set>_r)")
    p.add_argument("--output", help="write the universe extended by the restricted set")
    p.set_defaults(func=cmd_restrict)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except logic.DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNIVERSE


if __name__ == "__main__":
    sys.exit(main())
