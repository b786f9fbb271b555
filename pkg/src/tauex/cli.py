"""Command line entry point: ``tauex <command> --input FILE [options]``.

Exit codes: 0 success, 2 a checked statement failed, 3 a resource cap was
hit, 4 the input was invalid.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import config
from .algebra import load_algebra, validate_algebra
from .ar import g_vector, is_tau_rigid
from .errors import InputError, InvariantViolation, ResourceError, TauexError, UniverseError
from .indecs import build_universe
from .report import build_report, emit_report, sequences_json, universe_json
from .verify import STATEMENTS, all_sequences, verify_statements
from .sequences import FLAVORS, Level, enumerate_complete

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_INPUT = 0, 2, 3, 4


def fixture_names() -> list[str]:
    root = resources.files("tauex") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_input(source: str) -> dict:
    """Load a JSON document from a path, or from a bundled fixture by name."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        name = source[:-5] if source.endswith(".json") else source
        if name not in fixture_names():
            raise InputError(f"no such file or fixture: {source}")
        text = (resources.files("tauex") / "fixtures" / f"{name}.json").read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _bound(text):
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension bound {text!r}")
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("dimension bounds must be non-negative")
    return values


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="quiver JSON file or bundled fixture name")
    common.add_argument("--dim-bound", type=_bound, default=None,
                        help="per-vertex dimension cap, comma separated (default: declared by input)")
    common.add_argument("--max-subspaces", type=_positive, default=None)
    common.add_argument("--hom-budget", type=_positive, default=None)
    common.add_argument("--negate-theta", action="store_true",
                        help="use the opposite semistability sign convention on -theta")
    common.add_argument("--jobs", type=_positive, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="tauex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="build the algebra and check its axioms")
    sub.add_parser("indecs", parents=[common], help="list indecomposables of the universe")
    sub.add_parser("tau-rigids", parents=[common], help="list indecomposable tau-rigid modules")
    p = sub.add_parser("sequences", parents=[common], help="enumerate complete sequences")
    p.add_argument("--flavor", choices=FLAVORS, default="plain")
    p = sub.add_parser("verify", parents=[common], help="check one statement or all")
    p.add_argument("--statement", choices=STATEMENTS + ("all",), default="all")
    sub.add_parser("report", parents=[common], help="full report with every statement and sequence")
    return parser


def _header(universe):
    A = universe.algebra
    return {"algebra": A.name, "field": A.field.to_json(), "universe": universe_json(universe)}


def _dispatch(args) -> tuple[dict, int]:
    doc = read_input(args.input)
    A = load_algebra(doc)
    if args.command == "validate":
        summary = validate_algebra(A)
        out = {"algebra": A.name, "field": A.field.to_json(), "basis": list(A.labels)}
        out.update(summary)
        return out, EXIT_OK
    universe = build_universe(A, args.dim_bound, args.jobs)
    out = _header(universe)
    if args.command == "indecs":
        out["modules"] = [M.to_json() for M in universe]
        return out, EXIT_OK
    if args.command == "tau-rigids":
        mods = []
        for M in universe:
            if is_tau_rigid(M):
                entry = M.to_json()
                entry["g_vector"] = list(g_vector(M))
                mods.append(entry)
        out["modules"] = mods
        return out, EXIT_OK
    if args.command == "sequences":
        level = Level.from_universe(universe, allow_slice=not universe.certified)
        seqs = {args.flavor: enumerate_complete(level, args.flavor)}
        out["flavor"] = args.flavor
        out["sequences"] = sequences_json(seqs)
        return out, EXIT_OK
    statements = STATEMENTS if args.command == "report" or args.statement == "all" else (args.statement,)
    results, seqs = verify_statements(universe, statements, negate=args.negate_theta)
    if args.command == "report":
        seqs = seqs or all_sequences(universe)
        out = build_report(universe, results, seqs)
    else:
        out["statements"] = [r.to_json() for r in results]
    out["semistability_convention"] = "theta >= 0 on submodules of -theta" if args.negate_theta \
        else "theta <= 0 on submodules"
    code = EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK
    return out, code


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    overrides = dict(hom_budget=args.hom_budget, max_subspaces=args.max_subspaces,
                     jobs=args.jobs, seed=args.seed)
    try:
        with config.override(**overrides):
            out, code = _dispatch(args)
    except ResourceError as exc:
        print(f"tauex: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"tauex: invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, UniverseError, TauexError, OSError) as exc:
        print(f"tauex: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit_report(out, args.out)
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
