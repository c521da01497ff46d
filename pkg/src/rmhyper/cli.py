"""Command-line entry point.

Subcommands cover construction, girth computation, coloring searches, random
generation, the counting bound and format conversion.  Exit codes follow the
three-valued verdicts so shell pipelines can branch on them:

* 0 - witness found / operation succeeded
* 1 - property holds (search exhausted) / girth infinite
* 2 - budget or cap exceeded
* 3 - bad input (files, formats, arguments)
* 4 - size limit refusal / supplier failure

Artifacts embed the full parameters under "meta", so rerunning the recorded
command reproduces the file byte for byte.  Relative output paths are
resolved against $RMHYPER_OUTPUT_DIR when it is set.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import __version__
from .coloring import (
    VerdictStatus,
    find_good_coloring,
    find_part_rainbow_bad,
)
from .core import Hypergraph, HypergraphError, PartiteHypergraph
from .construct import (
    BuildLimits,
    ConstructionParams,
    SizeLimitError,
    SupplierError,
    build_part_rainbow_forced,
    build_rm_unavoidable,
    complete_partite_factor,
)
from .formats import FormatError, dumps, load_meta, load_path, to_dot
from .girth import girth
from .randgen import (
    ProbParams,
    counting_threshold,
    random_high_girth,
    random_search_unavoidable,
)

EXIT_WITNESS = 0
EXIT_HOLDS = 1
EXIT_BUDGET = 2
EXIT_BAD_INPUT = 3
EXIT_LIMIT = 4

_VERDICT_EXIT = {
    VerdictStatus.WITNESS_FOUND: EXIT_WITNESS,
    VerdictStatus.PROPERTY_HOLDS: EXIT_HOLDS,
    VerdictStatus.BUDGET_EXCEEDED: EXIT_BUDGET,
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2), which means budget
        raise CliError(message)


OUTPUT_DIR_ENV = "RMHYPER_OUTPUT_DIR"


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(text)


def _emit(h: Hypergraph | PartiteHypergraph, meta: dict[str, Any], out: str | None) -> None:
    _write_text(dumps(h, meta=meta), out)


def _load(path: str) -> Hypergraph | PartiteHypergraph:
    try:
        return load_path(path)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except FormatError as exc:
        raise CliError(f"{path}: {exc}")


def _params(args: argparse.Namespace) -> ConstructionParams:
    return ConstructionParams(
        seed=args.seed,
        limits=BuildLimits(max_vertices=args.max_vertices, max_edges=args.max_edges),
    )


def _cmd_construct(args: argparse.Namespace) -> int:
    params = _params(args)
    meta: dict[str, Any] = {
        "command": f"construct {args.kind}",
        "seed": args.seed,
        "max_vertices": args.max_vertices,
        "max_edges": args.max_edges,
    }
    try:
        if args.kind == "pr":
            meta.update({"r": args.r, "g": args.g})
            _emit(build_part_rainbow_forced(args.r, args.g, params), meta, args.output)
        elif args.kind == "h":
            meta.update({"r": args.r, "g": args.g})
            result, trace = build_rm_unavoidable(args.r, args.g, params)
            meta["trace"] = trace.to_dict()
            _emit(result, meta, args.output)
        else:  # factor
            loaded = _load(args.input)
            if not isinstance(loaded, PartiteHypergraph):
                raise CliError(f"{args.input}: factor needs a partite hypergraph (with 'parts')")
            meta.update({"parts": args.parts, "input": args.input})
            factor, _ = complete_partite_factor(loaded, args.parts)
            _emit(factor, meta, args.output)
    except SizeLimitError as exc:
        est = exc.estimate
        size = "astronomical" if est.astronomical else f"{est.vertices} vertices / {est.edges} edges"
        print(f"refused: {exc} [estimate: {size}]", file=sys.stderr)
        return EXIT_LIMIT
    except (SupplierError, HypergraphError, ValueError) as exc:
        raise CliError(str(exc), EXIT_LIMIT if isinstance(exc, SupplierError) else EXIT_BAD_INPUT)
    return EXIT_WITNESS


def _cmd_girth(args: argparse.Namespace) -> int:
    h = _load(args.file)
    base = h.base if isinstance(h, PartiteHypergraph) else h
    result = girth(base, cap=args.cap)
    report: dict[str, Any] = {"girth": str(result.girth), "cap": args.cap}
    if args.witness and result.witness is not None:
        order = {v: i for i, v in enumerate(base.vertices)}
        report["witness"] = {
            "edges": [sorted(e, key=order.__getitem__) for e in result.witness.edges],
            "vertices": list(result.witness.vertices),
        }
    _write_text(json.dumps(report, sort_keys=True, indent=2) + "\n", args.output)
    if result.girth.kind == "finite":
        return EXIT_WITNESS
    if result.girth.kind == "infinite":
        return EXIT_HOLDS
    return EXIT_BUDGET


def _cmd_solve(args: argparse.Namespace) -> int:
    loaded = _load(args.file)
    if args.kind == "good":
        base = loaded.base if isinstance(loaded, PartiteHypergraph) else loaded
        verdict = find_good_coloring(base, budget=args.budget)
    else:
        if not isinstance(loaded, PartiteHypergraph):
            raise CliError(f"{args.file}: part-rainbow search needs a partite hypergraph")
        verdict = find_part_rainbow_bad(loaded, budget=args.budget)
    report: dict[str, Any] = {
        "status": verdict.status.value,
        "nodes": verdict.nodes,
        "budget": args.budget,
    }
    if verdict.coloring is not None:
        report["coloring"] = {str(v): c for v, c in verdict.coloring.assignment.items()}
    _write_text(json.dumps(report, sort_keys=True, indent=2) + "\n", args.output)
    return _VERDICT_EXIT[verdict.status]


def _cmd_random(args: argparse.Namespace) -> int:
    if args.kind == "carrier":
        sample = random_high_girth(args.n, args.R, args.g, args.seed)
        meta = {
            "command": "random carrier",
            "n": args.n,
            "R": args.R,
            "g": args.g,
            "seed": args.seed,
            "edge_target": sample.edge_target,
            "edges_kept": sample.edges_kept,
            "target_met": sample.target_met,
            "edges_deleted": sample.edges_deleted,
        }
        _emit(sample.hypergraph, meta, args.output)
        if args.require_target and not sample.target_met:
            return EXIT_BUDGET
        return EXIT_WITNESS

    params = ProbParams(
        n=args.n, r=args.r, g=args.g, seed=args.seed, tries=args.tries, budget=args.budget
    )
    outcome = random_search_unavoidable(params)
    meta = {
        "command": "random search",
        "n": args.n,
        "r": args.r,
        "g": args.g,
        "seed": args.seed,
        "tries": args.tries,
        "budget": args.budget,
        "found": outcome.found,
        "try_index": outcome.try_index,
        "solver_nodes": outcome.verdict.nodes if outcome.verdict else None,
    }
    assert outcome.hypergraph is not None
    _emit(outcome.hypergraph, meta, args.output)
    if outcome.found:
        return EXIT_HOLDS  # the instance's unavoidability property holds
    if outcome.verdict and outcome.verdict.status is VerdictStatus.BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_WITNESS


def _cmd_bound(args: argparse.Namespace) -> int:
    try:
        result = counting_threshold(args.r, args.g)
    except (ValueError, ArithmeticError) as exc:
        raise CliError(str(exc))
    report = {
        "r": args.r,
        "g": args.g,
        "a": result.a,
        "threshold": result.n,
        "lhs": result.lhs,
        "rhs": result.rhs,
    }
    _write_text(json.dumps(report, sort_keys=True, indent=2) + "\n", args.output)
    return EXIT_WITNESS


def _cmd_convert(args: argparse.Namespace) -> int:
    h = _load(args.file)
    if args.format == "json":
        with open(args.file, "r", encoding="utf-8") as fp:
            meta = load_meta(fp.read())
        _emit(h, meta or None, args.output)
    elif args.format == "dot":
        _write_text(to_dot(h), args.output)
    else:
        raise CliError(f"unknown format {args.format!r}")
    return EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rmhyper", description=__doc__)
    parser.add_argument("--version", action="version", version=f"rmhyper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_construct = sub.add_parser("construct", help="build a construction and write JSON")
    p_construct.add_argument("kind", choices=["pr", "h", "factor"])
    p_construct.add_argument("--r", type=int, help="uniformity (pr, h)")
    p_construct.add_argument("--g", type=int, help="girth target (pr, h)")
    p_construct.add_argument("--input", help="partite hypergraph JSON (factor)")
    p_construct.add_argument("--parts", type=int, help="part count a (factor)")
    p_construct.add_argument("--seed", type=int, default=0)
    p_construct.add_argument("--max-vertices", type=int, default=BuildLimits().max_vertices)
    p_construct.add_argument("--max-edges", type=int, default=BuildLimits().max_edges)
    p_construct.add_argument("-o", "--output", default=None)
    p_construct.set_defaults(func=_cmd_construct)

    p_girth = sub.add_parser("girth", help="exact girth up to a cap")
    p_girth.add_argument("file")
    p_girth.add_argument("--cap", type=int, default=8)
    p_girth.add_argument("--witness", action="store_true")
    p_girth.add_argument("-o", "--output", default=None)
    p_girth.set_defaults(func=_cmd_girth)

    p_solve = sub.add_parser("solve", help="coloring searches")
    p_solve.add_argument("kind", choices=["good", "part-rainbow"])
    p_solve.add_argument("file")
    p_solve.add_argument("--budget", type=int, default=10_000_000)
    p_solve.add_argument("-o", "--output", default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_random = sub.add_parser("random", help="randomized generation")
    p_random.add_argument("kind", choices=["carrier", "search"])
    p_random.add_argument("--n", type=int, required=True)
    p_random.add_argument("--R", type=int, help="carrier uniformity (carrier)")
    p_random.add_argument("--r", type=int, help="target uniformity (search)")
    p_random.add_argument("--g", type=int, required=True)
    p_random.add_argument("--seed", type=int, default=0)
    p_random.add_argument("--tries", type=int, default=64)
    p_random.add_argument("--budget", type=int, default=2_000_000)
    p_random.add_argument("--require-target", action="store_true")
    p_random.add_argument("-o", "--output", default=None)
    p_random.set_defaults(func=_cmd_random)

    p_bound = sub.add_parser("bound", help="counting-inequality threshold")
    p_bound.add_argument("--r", type=int, required=True)
    p_bound.add_argument("--g", type=int, required=True)
    p_bound.add_argument("-o", "--output", default=None)
    p_bound.set_defaults(func=_cmd_bound)

    p_convert = sub.add_parser("convert", help="canonical JSON or DOT")
    p_convert.add_argument("file")
    fmt = p_convert.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--dot", dest="format", action="store_const", const="dot")
    p_convert.add_argument("-o", "--output", default=None)
    p_convert.set_defaults(func=_cmd_convert)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        missing = []
        if args.command == "construct":
            if args.kind in ("pr", "h"):
                missing = [n for n in ("r", "g") if getattr(args, n) is None]
            else:
                missing = [n for n in ("input", "parts") if getattr(args, n) is None]
        elif args.command == "random":
            if args.kind == "carrier" and args.R is None:
                missing = ["R"]
            if args.kind == "search" and args.r is None:
                missing = ["r"]
        if missing:
            raise CliError(f"missing required options: {', '.join('--' + m for m in missing)}")
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (HypergraphError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
