"""Command-line front end.

Subcommands: ``build`` compiles a graph pair to a JSON program description,
``decide`` solves a pair and prints the verdict, ``bench`` runs a corpus
directory against its manifest, ``oracle`` runs the exact search.  Exit codes
from ``decide``/``oracle``: 0 isomorphic, 1 non-isomorphic, 2 bad input,
3 inconclusive, 4 solver diverged.  Environment variables THETAISO_TOL,
THETAISO_MAX_ITER, THETAISO_SEED, and THETAISO_ORACLE_FALLBACK override the
corresponding defaults when the flag is not given explicitly.

Reports are serialized by a small JSON writer that renders every float with
17 significant digits, so equal runs produce byte-identical files and
round-trip exactly through any standards-compliant parser.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from .extraction import VerdictKind, decide
from .graphs import GraphParseError, load_graph
from .oracle import enumerate_isomorphisms
from .program import build_program, program_to_json_dict
from .solver import SolverConfig, SolverStatus, solve

__all__ = ["main", "dumps_json", "RunReport"]

EXIT_ISOMORPHIC = 0
EXIT_NON_ISOMORPHIC = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_DIVERGED = 4

ENV_PREFIX = "THETAISO_"


def _format_float(x):
    text = format(float(x), ".17g")
    if "inf" in text or "nan" in text:
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def _write_json(obj, out, indent, level):
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for k, (key, value) in enumerate(items):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)}")
            out.append(pad_in + json.dumps(key) + ": ")
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if k + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            out.append("[]")
            return
        out.append("[\n")
        for k, value in enumerate(obj):
            out.append(pad_in)
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if k + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj)} to JSON")


def dumps_json(obj, indent=2):
    """Deterministic JSON text with floats at 17 significant digits."""
    out = []
    _write_json(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


@dataclass(frozen=True)
class RunReport:
    """Everything one decide run produced, in serializable form."""

    instance: dict
    config: dict
    solver: dict
    verdict: dict
    timings: dict
    oracle: dict | None = None

    def to_json_dict(self):
        doc = {
            "instance": self.instance,
            "config": self.config,
            "solver": self.solver,
            "verdict": self.verdict,
            "timings": self.timings,
        }
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        return doc


def _env(name, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return fallback
    try:
        if cast is bool:
            return raw.strip().lower() in ("1", "true", "yes", "on")
        return cast(raw)
    except ValueError as exc:
        raise SystemExit(f"bad value for {ENV_PREFIX}{name}: {raw!r} ({exc})")


def _add_solver_flags(sub):
    sub.add_argument("--tol", type=float, default=None,
                     help="primal/dual stopping tolerance (default 1e-7)")
    sub.add_argument("--max-iter", type=int, default=None,
                     help="iteration cap (default 50000)")
    sub.add_argument("--seed", type=int, default=None,
                     help="seed recorded in the report (default 0)")
    sub.add_argument("--oracle-fallback", action="store_true", default=None,
                     help="settle inconclusive runs by exact search")


def _config_from_args(args):
    tol = args.tol if args.tol is not None else _env("TOL", float, 1e-7)
    max_iter = args.max_iter if args.max_iter is not None else _env("MAX_ITER", int, 50000)
    seed = args.seed if args.seed is not None else _env("SEED", int, 0)
    fallback = (
        args.oracle_fallback
        if args.oracle_fallback is not None
        else _env("ORACLE_FALLBACK", bool, False)
    )
    return SolverConfig(
        tol_primal=tol, tol_dual=tol, max_iter=max_iter,
        seed=seed, oracle_fallback=fallback,
    )


def _config_dict(cfg):
    return {
        "tol_primal": cfg.tol_primal,
        "tol_dual": cfg.tol_dual,
        "max_iter": cfg.max_iter,
        "step_rho": cfg.step_rho,
        "zero_eps": cfg.zero_eps,
        "seed": cfg.seed,
        "oracle_fallback": cfg.oracle_fallback,
        "eig_backend": cfg.eig_backend,
    }


def _load_pair(path1, path2):
    g1 = load_graph(path1)
    g2 = load_graph(path2)
    return g1, g2


def run_pair(g1, g2, cfg, want_oracle=False):
    """Build, solve, and decide one pair; returns (verdict, result, report)."""
    t0 = time.perf_counter()
    program = build_program(g1, g2)
    t_build = time.perf_counter() - t0
    result = solve(program, cfg)
    t1 = time.perf_counter()
    verdict = decide(result, g1, g2, cfg)
    t_decide = time.perf_counter() - t1
    oracle = None
    timings = {
        "build_seconds": t_build,
        "solve_seconds": result.solve_seconds,
        "decide_seconds": t_decide,
    }
    if want_oracle:
        t2 = time.perf_counter()
        truth = bool(enumerate_isomorphisms(g1, g2, cap=1, size_limit=None))
        timings["oracle_seconds"] = time.perf_counter() - t2
        if verdict.kind is VerdictKind.ISOMORPHIC:
            agrees = truth
        elif verdict.kind is VerdictKind.NON_ISOMORPHIC:
            agrees = not truth
        else:
            agrees = None
        oracle = {"isomorphic": truth, "agrees_with_verdict": agrees}
    report = RunReport(
        instance={
            "n": g1.n,
            "edges_1": g1.num_edges,
            "edges_2": g2.num_edges,
            "program_dim": program.dim,
            "program_constraints": len(program.constraints),
        },
        config=_config_dict(cfg),
        solver={
            "status": result.status.value,
            "objective": result.objective,
            "iterations": result.iterations,
            "primal_residual": result.primal_residual,
            "dual_residual": result.dual_residual,
        },
        verdict=verdict.to_json_dict(),
        timings=timings,
        oracle=oracle,
    )
    return verdict, result, report


def _verdict_exit_code(verdict, result):
    if verdict.kind is VerdictKind.ISOMORPHIC:
        return EXIT_ISOMORPHIC
    if verdict.kind is VerdictKind.NON_ISOMORPHIC:
        return EXIT_NON_ISOMORPHIC
    if result.status is SolverStatus.DIVERGED:
        return EXIT_DIVERGED
    return EXIT_INCONCLUSIVE


def cmd_build(args):
    try:
        g1, g2 = _load_pair(args.graph1, args.graph2)
        program = build_program(g1, g2)
    except (OSError, GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = dumps_json(program_to_json_dict(program))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        counts = program.constraint_counts()
        summary = ", ".join(f"{k}={v}" for k, v in counts.items() if v)
        print(f"wrote {args.out}: dim {program.dim}, {summary}")
    return 0


def cmd_decide(args):
    try:
        g1, g2 = _load_pair(args.graph1, args.graph2)
        cfg = _config_from_args(args)
        if g1.n != g2.n:
            raise ValueError(f"graph sizes differ: {g1.n} != {g2.n}")
    except (OSError, GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    verdict, result, report = run_pair(g1, g2, cfg, want_oracle=cfg.oracle_fallback)
    if args.json:
        sys.stdout.write(dumps_json(report.to_json_dict()))
    else:
        print(f"n = {g1.n}, objective = {result.objective:.12f}, "
              f"threshold = {verdict.threshold:.12f}")
        print(f"solver: {result.status.value} after {result.iterations} iterations "
              f"(primal {result.primal_residual:.2e}, dual {result.dual_residual:.2e})")
        line = f"verdict: {verdict.kind.value}"
        if verdict.decided_by:
            line += f" (by {verdict.decided_by})"
        if verdict.oracle_used:
            line += " [oracle-assisted]"
        print(line)
        if verdict.permutation is not None:
            print("isomorphism:", " ".join(str(j) for j in verdict.permutation))
    return _verdict_exit_code(verdict, result)


def cmd_oracle(args):
    try:
        g1, g2 = _load_pair(args.graph1, args.graph2)
        isos = enumerate_isomorphisms(g1, g2, cap=args.cap, size_limit=None)
    except (OSError, GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    for sigma in isos:
        print(" ".join(str(j) for j in sigma))
    suffix = f" (stopped at cap {args.cap})" if args.cap and len(isos) == args.cap else ""
    print(f"found {len(isos)} isomorphism(s){suffix}")
    return EXIT_ISOMORPHIC if isos else EXIT_NON_ISOMORPHIC


def cmd_bench(args):
    manifest_path = os.path.join(args.corpus, "manifest.json")
    try:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {manifest_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    rows = []
    mismatches = 0
    for entry in manifest["pairs"]:
        name = entry["name"]
        try:
            g1 = load_graph(os.path.join(args.corpus, entry["g1"]))
            g2 = load_graph(os.path.join(args.corpus, entry["g2"]))
        except (OSError, GraphParseError) as exc:
            print(f"error: pair {name}: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        truth = bool(entry["isomorphic"])
        if args.verify_manifest:
            recomputed = bool(enumerate_isomorphisms(g1, g2, cap=1, size_limit=None))
            if recomputed != truth:
                print(f"error: manifest says isomorphic={truth} for {name}, "
                      f"exact search says {recomputed}", file=sys.stderr)
                return EXIT_INPUT_ERROR
        t0 = time.perf_counter()
        verdict, result, report = run_pair(g1, g2, cfg)
        elapsed = time.perf_counter() - t0
        if verdict.kind is VerdictKind.ISOMORPHIC:
            agree = truth
        elif verdict.kind is VerdictKind.NON_ISOMORPHIC:
            agree = not truth
        else:
            agree = None
        if agree is False:
            mismatches += 1
        rows.append({
            "name": name,
            "n": g1.n,
            "isomorphic": truth,
            "verdict": verdict.kind.value,
            "decided_by": verdict.decided_by,
            "objective": result.objective,
            "threshold": verdict.threshold,
            "gap": verdict.threshold - result.objective,
            "threshold_decided": verdict.decided_by == "bound",
            "status": result.status.value,
            "iterations": result.iterations,
            "seconds": elapsed,
            "agree": agree,
        })

    header = (f"{'pair':<24} {'n':>3} {'truth':>6} {'verdict':>15} {'by':>10} "
              f"{'objective':>16} {'gap':>11} {'iters':>7} {'sec':>8} {'ok':>4}")
    print(header)
    print("-" * len(header))
    for row in rows:
        truth = "iso" if row["isomorphic"] else "non"
        ok = {True: "yes", False: "NO", None: "-"}[row["agree"]]
        by = row["decided_by"] or "-"
        print(f"{row['name']:<24} {row['n']:>3} {truth:>6} {row['verdict']:>15} "
              f"{by:>10} {row['objective']:>16.9f} {row['gap']:>11.3e} "
              f"{row['iterations']:>7} {row['seconds']:>8.2f} {ok:>4}")
    counts = {}
    decided = {"bound": 0, "extraction": 0, "oracle": 0, "inconclusive": 0}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
        decided[row["decided_by"] or "inconclusive"] += 1
    summary = {
        "pairs": len(rows),
        "verdicts": counts,
        "decided_by": decided,
        "mismatches": mismatches,
        "manifest_verified": bool(args.verify_manifest),
    }
    print(f"\n{len(rows)} pairs: " + ", ".join(f"{k}={v}" for k, v in counts.items())
          + f", mismatches={mismatches}")
    print("decided by: " + ", ".join(f"{k}={v}" for k, v in decided.items()))
    doc = {"config": _config_dict(cfg), "pairs": rows, "summary": summary}
    if args.json is not None:
        text = dumps_json(doc)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text)
            print(f"report written to {args.json}")
    return 0 if mismatches == 0 else EXIT_NON_ISOMORPHIC


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thetaiso",
        description="Graph isomorphism testing via a lifted relaxation "
                    "over the doubly nonnegative cone.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="compile a pair to a JSON program")
    p_build.add_argument("graph1")
    p_build.add_argument("graph2")
    p_build.add_argument("out", help="output path, or - for stdout")
    p_build.set_defaults(func=cmd_build)

    p_decide = sub.add_parser("decide", help="solve a pair and print the verdict")
    p_decide.add_argument("graph1")
    p_decide.add_argument("graph2")
    _add_solver_flags(p_decide)
    p_decide.add_argument("--json", action="store_true",
                          help="emit the full run report as JSON")
    p_decide.set_defaults(func=cmd_decide)

    p_oracle = sub.add_parser("oracle", help="exact search for isomorphisms")
    p_oracle.add_argument("graph1")
    p_oracle.add_argument("graph2")
    p_oracle.add_argument("--cap", type=int, default=None,
                          help="stop after this many isomorphisms")
    p_oracle.set_defaults(func=cmd_oracle)

    p_bench = sub.add_parser("bench", help="run every pair in a corpus directory")
    p_bench.add_argument("corpus", help="directory containing manifest.json")
    _add_solver_flags(p_bench)
    p_bench.add_argument("--json", nargs="?", const="-", default=None,
                         help="write the JSON report here (- for stdout)")
    p_bench.add_argument("--verify-manifest", action="store_true",
                         help="recompute ground truth by exact search first")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
