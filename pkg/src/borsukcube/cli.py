"""Command-line entry point.

Subcommands: trim, trim2, color, case, verify. Every report embeds a run
manifest (command, parameters, solver identity, input digests, timing) so
results are attributable and reproducible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time

from . import __version__, configs
from .coloring import is_colorable
from .cover import (cover_membership_check, verify_cover_10_4, verify_low_dim,
                    verify_n9)
from .cube import VertexSet, load_vertex_set, save_vertex_set
from .graph import build_distance_graph, trim, trim2
from .satbackend import SolverNotFoundError, find_solver, solver_banner
from .search import CASE_TABLE, load_case_spec, run_case, save_case_report

EXIT_COLORED = 0
EXIT_USAGE = 2
EXIT_UNSAT = 10
EXIT_TIMEOUT = 20
EXIT_NO_SOLVER = 64


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()[:16]


def _git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=5,
                             cwd=os.path.dirname(__file__))
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return f"package-{__version__}"


def make_manifest(args: argparse.Namespace, solver_path: str | None,
                  inputs: list[str]) -> dict:
    manifest = {
        "command": " ".join(sys.argv),
        "parameters": {k: v for k, v in sorted(vars(args).items())
                       if k != "func"},
        "version": _git_describe(),
        "started": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    if solver_path:
        manifest["solver"] = solver_path
        manifest["solver_banner"] = solver_banner(solver_path)
    if inputs:
        manifest["input_digests"] = {p: _digest(p) for p in inputs}
    return manifest


def _resolve_solver(args) -> str:
    try:
        return find_solver(getattr(args, "solver", None))
    except SolverNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NO_SOLVER)


def cmd_trim(args) -> int:
    vs = load_vertex_set(args.set)
    if len(vs) == 0:
        print("error: empty assumption set", file=sys.stderr)
        return EXIT_USAGE
    n = args.n or vs.dim
    result = trim(n, args.k, vs)
    save_vertex_set(args.out, result)
    print(f"{len(result)} vertices -> {args.out}")
    return 0


def cmd_trim2(args) -> int:
    assume = load_vertex_set(args.assume)
    if len(assume) == 0:
        print("error: empty assumption file", file=sys.stderr)
        return EXIT_USAGE
    family = configs.forbidden_family(args.forbid or ())
    pool = VertexSet(assume.dim, range(1 << assume.dim))
    if args.exclude:
        excluded = set(load_vertex_set(args.exclude).members)
        pool = VertexSet(assume.dim,
                         (v for v in pool.members if v not in excluded))
    result = trim2(pool, args.k, assume, family)
    save_vertex_set(args.out, result)
    print(f"{len(result)} vertices -> {args.out}")
    return 0


def cmd_color(args) -> int:
    vs = load_vertex_set(args.set)
    g = build_distance_graph(vs, args.k)
    solver_path = None
    if not args.greedy_only:
        solver_path = _resolve_solver(args)
    outcome = is_colorable(g, args.colors, timeout_ms=args.timeout_ms,
                           solver=solver_path, greedy_only=args.greedy_only,
                           seed=args.seed)
    manifest = make_manifest(args, solver_path, [args.set])
    report = {"vertices": len(vs), "k": args.k, "colors": args.colors,
              "outcome": outcome.status, "colors_used": outcome.colors_used,
              "route": outcome.route,
              "elapsed_s": round(outcome.elapsed_s, 3),
              "manifest": manifest}
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    if outcome.status == "colored":
        return EXIT_COLORED
    if outcome.status == "unsat":
        return EXIT_UNSAT
    return EXIT_TIMEOUT


def cmd_case(args) -> int:
    if args.spec:
        spec = load_case_spec(args.spec)
    elif args.row:
        spec = CASE_TABLE[args.row]
    else:
        print("error: need --row or --spec", file=sys.stderr)
        return EXIT_USAGE
    if args.timeout_ms:
        spec.timeout_ms = args.timeout_ms
    solver_path = _resolve_solver(args)
    report = run_case(spec, leaf_budget=args.leaf_budget, solver=solver_path,
                      seed=args.seed,
                      checkpoint_path=args.checkpoint, jobs=args.jobs,
                      progress=(print if args.verbose else None))
    manifest = make_manifest(args, solver_path,
                             [args.spec] if args.spec else [])
    out = args.out or f"case-row{spec.row}.json"
    save_case_report(out, report, manifest)
    print(json.dumps(report.to_json(), indent=2))
    print(f"report -> {out}")
    return 0 if not report.not_colored else EXIT_UNSAT


def cmd_verify(args) -> int:
    solver_path = None
    if args.target != "classify-cliques":
        solver_path = _resolve_solver(args)
    t0 = time.monotonic()
    if args.target == "cover-10-4":
        verdict = verify_cover_10_4(args.timeout_ms, solver_path)
        payload = verdict.to_json()
        ok = verdict.passed
    elif args.target == "n9":
        verdict = verify_n9(args.timeout_ms, solver_path)
        payload = verdict.to_json()
        ok = verdict.passed
    elif args.target == "low-dim":
        verdict = verify_low_dim(args.timeout_ms, solver_path)
        payload = verdict.to_json()
        ok = verdict.passed
    elif args.target == "cover-membership":
        report = cover_membership_check(args.samples, args.seed)
        payload = report.to_json()
        ok = report.passed
    elif args.target == "classify-cliques":
        report = verify_classification(args)
        payload = report
        ok = (report["K3"]["classes"] == 1 and report["K4"]["classes"] == 2
              and report["K4"].get("xor_separates")
              and report["K5"]["classes"] == 1
              and report["K6"]["classes"] == 1)
    else:
        print(f"error: unknown target {args.target}", file=sys.stderr)
        return EXIT_USAGE
    payload["manifest"] = make_manifest(args, solver_path, [])
    payload["elapsed_s"] = round(time.monotonic() - t0, 3)
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if ok else 1


def verify_classification(args) -> dict:
    return configs.verify_classification_claims(
        sample_count=args.samples,
        progress=(print if args.verbose else None))


def _add_common_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", help="SAT solver executable "
                   "(default: $SAT_SOLVER, a known solver on PATH, or the "
                   "bundled one)")
    p.add_argument("--timeout-ms", type=int, default=1000,
                   help="per-query solver budget (default 1000)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized heuristics (default 0)")
    p.add_argument("--out", help="write the report/result to this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="borsukcube",
        description="Partition verification machinery for subsets of the "
                    "Boolean cube under the Hamming metric.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trim", help="intersect distance-k balls around a set")
    p.add_argument("--n", type=int, help="cube dimension (default: inferred)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", required=True, help="seed vertex-set file")
    p.add_argument("--out", default="trim.txt")
    p.set_defaults(func=cmd_trim)

    p = sub.add_parser("trim2",
                       help="trim plus forbidden-configuration filtering")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--assume", required=True, help="assumption vertex-set file")
    p.add_argument("--forbid", nargs="*", choices=configs.ALL_TAGS,
                   help="forbidden configuration tags")
    p.add_argument("--exclude", help="file of vertices to remove from the pool")
    p.add_argument("--out", default="trim2.txt")
    p.set_defaults(func=cmd_trim2)

    p = sub.add_parser("color", help="decide c-colorability of a distance graph")
    p.add_argument("--set", required=True, help="vertex-set file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--greedy-only", action="store_true",
                   help="skip the SAT stage (no solver needed)")
    _add_common_solver_args(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("case", help="run one row of the case enumeration")
    p.add_argument("--row", type=int, choices=sorted(CASE_TABLE))
    p.add_argument("--spec", help="JSON case-spec file")
    p.add_argument("--leaf-budget", type=int,
                   help="stop after this many leaves (truncated report)")
    p.add_argument("--checkpoint", help="branch-completion checkpoint file")
    p.add_argument("--resume", action="store_true",
                   help="skip branches recorded in the checkpoint file")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for first-level branches")
    p.add_argument("--verbose", action="store_true")
    _add_common_solver_args(p)
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("verify", help="run a verification pipeline")
    p.add_argument("--target", required=True,
                   choices=("n9", "low-dim", "cover-10-4", "cover-membership",
                            "classify-cliques"))
    p.add_argument("--samples", type=int, default=100_000,
                   help="sample count for randomized targets")
    p.add_argument("--verbose", action="store_true")
    _add_common_solver_args(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "checkpoint", None) and not getattr(args, "resume", False):
        # a fresh run must not silently skip recorded branches
        if os.path.exists(args.checkpoint):
            os.unlink(args.checkpoint)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
