"""``ncres`` command line: cohomology, ext, verify, hilbert, list-scenarios.

Exit codes: 0 when every gating check passes, 1 on a check failure, 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from ..bbw import cohomology, ext_table
from ..lefschetz import FAIL, graded_algebra_dims, resolution_report, run_group
from ..lefschetz.tilting import LineTwist
from ..varieties import BundleSyntaxError, direct_sum, parse_bundle, parse_variety
from . import scenarios
from .render import cohomology_document, render, scenario_document, scenario_echo
from .scenario_file import ScenarioFileError, load_collection, load_scenario

__all__ = ["main", "build_parser", "resolve_scenario"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"scenario {args.scenario!r} needs {flags}")


def resolve_scenario(args):
    name = args.scenario
    if name == "veronese":
        _need(args, "n", "d")
        return scenarios.veronese(args.n, args.d)
    if name == "segre":
        _need(args, "m")
        return scenarios.segre(args.m)
    if name == "grassmannian_cone":
        _need(args, "m")
        return scenarios.grassmannian_cone(args.m, args.blocks_top)
    if name == "pfaffian":
        _need(args, "n")
        return scenarios.pfaffian(args.n)
    if name == "anticanonical":
        if args.collection is not None:
            X, gens = load_collection(args.collection)
            return scenarios.anticanonical(X, gens, name=f"anticanonical({Path(args.collection).stem})")
        _need(args, "variety")
        return scenarios.anticanonical(parse_variety(args.variety))
    if Path(name).is_file():
        return load_scenario(name)
    raise UsageError(f"unknown scenario {name!r}: not a builtin ({', '.join(scenarios.BUILTINS)}) or a file")


def _scenario_args(p: argparse.ArgumentParser):
    p.add_argument("scenario", help="builtin scenario name or path to a scenario file")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--blocks-top", type=int, dest="blocks_top")
    p.add_argument("--variety")
    p.add_argument("--collection")


def _format_arg(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncres", description="Verify categorical and noncommutative resolutions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="cohomology of a homogeneous bundle")
    p.add_argument("variety")
    p.add_argument("bundle")
    _format_arg(p)

    p = sub.add_parser("ext", help="Ext^*(E, F) between homogeneous bundles")
    p.add_argument("variety")
    p.add_argument("source")
    p.add_argument("target")
    _format_arg(p)

    p = sub.add_parser("verify", help="run the full hypothesis checklist for a scenario")
    _scenario_args(p)
    _format_arg(p)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("hilbert", help="graded dimensions of the resolution algebra")
    _scenario_args(p)
    _format_arg(p)
    p.add_argument("--t-max", type=int, default=3, dest="t_max")

    sub.add_parser("list-scenarios", help="list builtin scenarios")
    return parser


def _cmd_cohomology(args, out) -> int:
    X = parse_variety(args.variety)
    e = parse_bundle(args.bundle, X)
    out.write(render(cohomology_document(X, args.bundle, cohomology(X, e)), args.format))
    return EXIT_OK


def _cmd_ext(args, out) -> int:
    X = parse_variety(args.variety)
    E = parse_bundle(args.source, X)
    F = parse_bundle(args.target, X)
    doc = cohomology_document(X, f"Ext^*({args.source}, {args.target})", ext_table(X, E, F), key="ext")
    out.write(render(doc, args.format))
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    sc = resolve_scenario(args)
    report = resolution_report(sc, jobs=args.jobs)
    out.write(render(scenario_document(sc, report), args.format))
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_hilbert(args, out) -> int:
    if args.t_max < 0:
        raise UsageError("--t-max must be non-negative")
    sc = resolve_scenario(args)
    doc = {"scenario": scenario_echo(sc)}
    if not sc.E_generators and sc.tilting_bundle is None:
        raise UsageError(f"scenario {sc.name!r} has no bundle E")
    tilt = run_group("tilting", sc)
    entry = tilt.get("tilting")
    doc["tilting"] = entry.as_dict()
    if entry.status == FAIL:
        out.write(render(doc, args.format))
        return EXIT_FAIL
    variety = sc.tilting_variety or sc.spec.variety
    F = sc.tilting_bundle if sc.tilting_bundle is not None else direct_sum(*sc.E_generators)
    grading = sc.grading or LineTwist(sc.spec.L)
    dims = graded_algebra_dims(variety, F, grading, args.t_max)
    doc["graded_dims"] = {f"A_{t}": d for t, d in enumerate(dims)}
    out.write(render(doc, args.format))
    return EXIT_OK


def _cmd_list(args, out) -> int:
    for name, desc in scenarios.BUILTINS.items():
        out.write(f"{name}: {desc}\n")
    return EXIT_OK


COMMANDS = {
    "cohomology": _cmd_cohomology,
    "ext": _cmd_ext,
    "verify": _cmd_verify,
    "hilbert": _cmd_hilbert,
    "list-scenarios": _cmd_list,
}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, scenarios.ScenarioUsageError, ScenarioFileError, BundleSyntaxError) as exc:
        print(f"ncres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"ncres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
