"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 scale refusal.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import generate, hardness, io
from .fairness import audit
from .model import (
    FairAllocError,
    PublicGoodsInstance,
    ScaleError,
    UnsupportedError,
)
from .reductions import PRIVATE_TO_PUBLIC, PUBLIC_TO_DECISIONS, reduce, verify_roundtrip
from .solvers import DEFAULT_MAX_TYPES, dp_const_agent_types, enum_const_good_types, solve

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_SCALE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _index_sets(text: str, flag: str) -> list[list[int]]:
    """'1,2;3' -> [[0, 1], [2]] (1-based on the command line)."""
    if text is None:
        raise UsageError(f"{flag} is required")
    if not text.strip():
        return []
    try:
        return [[int(tok) - 1 for tok in part.split(",") if tok.strip()] for part in text.split(";")]
    except ValueError:
        raise UsageError(f"{flag}: expected e.g. '1,2;3'") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> str:
    if args.gadget:
        return io.dumps(io.gadget_to_doc(_gadget(args)))
    _need(args, "agents", "goods")
    n, m = args.agents, args.goods
    V = generate.parse_values_spec(args.values)
    meta = {"seed": args.seed, "values": args.values}
    if args.model == "private":
        inst = generate.random_private(args.seed, n, m, V)
    elif args.model == "decisions":
        inst = generate.random_decisions(args.seed, n, m, V, args.alternatives)
    else:
        if (args.k is None) == (args.budget is None):
            raise UsageError("public model needs exactly one of --k or --budget")
        cmax = 1
        if args.budget is not None:
            cmax = generate.parse_values_spec(args.costs)
            meta["costs"] = args.costs
        inst = generate.random_public(args.seed, n, m, V, k=args.k, budget=args.budget, cmax=cmax)
    return io.serialize_instance(inst, meta)


def _gadget(args):
    g = args.gadget
    if g == "setcover":
        _need(args, "universe", "k")
        return hardness.from_set_cover(args.universe, _index_sets(args.sets, "--sets"), args.k)
    if g == "ersp":
        _need(args, "elements", "d", "r")
        return hardness.from_ersp(args.elements, _index_sets(args.sets, "--sets"), args.d, args.r)
    if g == "eqsp":
        _need(args, "numbers")
        try:
            a = [int(t) for t in args.numbers.split(",") if t.strip()]
        except ValueError:
            raise UsageError("--numbers: expected e.g. '1,3,2,2'") from None
        return hardness.from_eqsp(a, "maxmin" if args.maxmin else "mnw")
    _need(args, "variables", "c")
    return hardness.from_monotone_sat(args.variables, _index_sets(args.clauses, "--clauses"), args.c)


def _safe_audit(instance, result, alpha):
    if not isinstance(instance, PublicGoodsInstance) or not instance.is_cardinality:
        return None
    try:
        return audit(instance, result.allocation, alpha)
    except ScaleError:
        return audit(instance, result.allocation, alpha, pareto=False)


def cmd_solve(args) -> str:
    instance = io.parse_instance(_read(args.input))
    start = time.perf_counter()
    if args.method == "dp-agent-types":
        result = dp_const_agent_types(instance, args.objective, args.max_types)
    elif args.method == "enum-good-types":
        result = enum_const_good_types(instance, args.objective, args.max_types)
    else:
        result = solve(instance, args.objective, args.method)
    elapsed = time.perf_counter() - start
    fairness = None if args.no_audit else _safe_audit(instance, result, args.alpha)
    doc = io.result_to_doc(instance, result, fairness)
    if args.timing:
        doc["timing_seconds"] = round(elapsed, 6)
    return io.dumps(doc)


def cmd_audit(args) -> str:
    instance = io.parse_instance(_read(args.input))
    if not isinstance(instance, PublicGoodsInstance):
        raise UnsupportedError("audit applies to public goods instances")
    alloc = io.parse_allocation(instance, _read(args.alloc))
    report = audit(instance, alloc, args.alpha)
    doc = {
        "allocation": io.allocation_to_doc(instance, instance.check_allocation(alloc)),
        "alpha": io.exact(args.alpha),
        "fairness": io.fairness_to_doc(report),
    }
    return io.dumps(doc)


_ROUTES = {("public", "decisions"): PUBLIC_TO_DECISIONS, ("private", "public"): PRIVATE_TO_PUBLIC}


def cmd_reduce(args) -> str:
    route = _ROUTES.get((args.source_model, args.to))
    if route is None:
        raise UsageError(f"no reduction from {args.source_model} to {args.to}")
    source = io.parse_instance(_read(args.input))
    artifact = reduce(source, route, args.objective)
    return io.dumps(io.artifact_to_doc(artifact))


def cmd_verify(args) -> str:
    source = io.parse_instance(_read(args.input))
    report = verify_roundtrip(reduce(source, args.reduction, args.objective))
    return io.dumps(io.roundtrip_to_doc(report))


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("alpha must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairalloc", description="Fair selection of indivisible public goods.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random or gadget instance")
    p.add_argument("--model", choices=["public", "private", "decisions"], default="public")
    p.add_argument("--agents", type=int)
    p.add_argument("--goods", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--costs", default="uniform:3", help="cost range for --budget, uniform:C")
    p.add_argument("--values", default="uniform:3", help="binary or uniform:V")
    p.add_argument("--alternatives", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gadget", choices=["setcover", "ersp", "eqsp", "msat"])
    p.add_argument("--universe", type=int, help="setcover: number of elements")
    p.add_argument("--elements", type=int, help="ersp: number of elements")
    p.add_argument("--sets", help="setcover/ersp: sets as '1,2;2,3'")
    p.add_argument("--d", type=int, help="ersp: set size")
    p.add_argument("--r", type=int, help="ersp: packing size")
    p.add_argument("--numbers", help="eqsp: multiset as '1,3,2,2'")
    p.add_argument("--maxmin", action="store_true", help="eqsp: max-min threshold instead of MNW")
    p.add_argument("--variables", type=int, help="msat: number of variables")
    p.add_argument("--clauses", help="msat: clauses as '1;1,2'")
    p.add_argument("--c", type=int, help="msat: max true variables")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="compute an MNW or leximin allocation")
    p.add_argument("--objective", choices=["mnw", "leximin"], default="mnw")
    p.add_argument("--method", choices=["bruteforce", "dp-agent-types", "enum-good-types", "greedy"],
                   default="bruteforce")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--alpha", type=_fraction, default=Fraction(1))
    p.add_argument("--max-types", type=int, default=DEFAULT_MAX_TYPES)
    p.add_argument("--no-audit", action="store_true")
    p.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte-identity)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("audit", help="fairness report for a given allocation")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--alloc", required=True)
    p.add_argument("--alpha", type=_fraction, default=Fraction(1))
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("reduce", help="emit a reduction artifact")
    p.add_argument("--objective", choices=["mnw", "leximin"], default="mnw")
    p.add_argument("--from", dest="source_model", choices=["private", "public"], required=True)
    p.add_argument("--to", choices=["public", "decisions"], required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-roundtrip", help="check a reduction against brute force")
    p.add_argument("--objective", choices=["mnw", "leximin"], default="mnw")
    p.add_argument("--reduction", choices=[PUBLIC_TO_DECISIONS, PRIVATE_TO_PUBLIC], required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        _write(args.func(args), args.out)
    except UsageError as e:
        sys.stderr.write(f"fairalloc: {e}\n")
        return EXIT_USAGE
    except ScaleError as e:
        sys.stderr.write(f"fairalloc: scale refusal: {e}\n")
        return EXIT_SCALE
    except (io.ValidationError, UnsupportedError, FairAllocError, ValueError) as e:
        sys.stderr.write(f"fairalloc: invalid input: {e}\n")
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
