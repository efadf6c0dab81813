"""Command-line front end.

Every command prints one JSON document on stdout (``energy`` also has a text
form).  Errors print a single ``error <code>: <text>`` line on stderr and exit
with 2 (hypothesis or guardrail), 3 (unreadable input) or 4 (a certification
check failed).  With ``--outdir`` the report and a ``manifest.json`` listing
every written file are stored there.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .closed_forms import emin, planar_minimizer, planar_regime, theorem_minimizer
from .geometry import GeometryError, double_bubble_energy
from .gridio import GridParseError, read_grid, write_grid
from .lemmas import GridSpec, run_all, summary_table
from .search import GUARDRAIL_ENV, GuardrailError, SearchSpec, discrete_dominance_sweep, search, write_sweep_csv
from .slicing import HypothesisError, best_direction, lower_bound, slicing_lemma_check

SCHEMA_VERSION = 1
EXIT_OK, EXIT_HYPOTHESIS, EXIT_PARSE, EXIT_CERT = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: str, message: str, status: int):
        self.code = code
        self.status = status
        super().__init__(message)


def _num(x: float):
    """12 significant digits; integral values come out as ints."""
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    y = float(f"{x:.12g}")
    return int(y) if y.is_integer() and abs(y) < 2**53 else y


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):  # enums
        return obj.value
    return obj


def dumps(payload: dict) -> str:
    return json.dumps(jsonable({"schema_version": SCHEMA_VERSION, **payload}), sort_keys=True, indent=2) + "\n"


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None = None
    tool_version: str = __version__
    started: str = ""
    finished: str = ""
    outputs: list[str] = field(default_factory=list)

    def write(self, outdir: Path) -> Path:
        path = outdir / "manifest.json"
        self.outputs.append(str(path))
        path.write_text(json.dumps(jsonable(self.__dict__), sort_keys=True, indent=2) + "\n")
        return path


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _read(path: str):
    try:
        return read_grid(path)
    except GridParseError as exc:
        where = f" (line {exc.line})" if exc.line else ""
        raise CliError("parse_error", f"{path}{where}: {exc}", EXIT_PARSE) from exc
    except OSError as exc:
        raise CliError("parse_error", f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    except GeometryError as exc:
        raise CliError("parse_error", f"{path}: {exc}", EXIT_PARSE) from exc


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit status, extra files to write)


def cmd_energy(args, ctx):
    cfg = _read(args.input)
    e = double_bubble_energy(cfg)
    payload = {"command": "energy", "input": args.input, "dimension": cfg.dimension, "V_A": cfg.V_A, "V_B": cfg.V_B, **e._asdict()}
    if not args.json:
        ctx["text"] = (
            f"per(A)={e.perimeter_a} per(B)={e.perimeter_b} interface={e.interface} E={e.energy}\n"
        )
    return payload, EXIT_OK


def _positive(name, v):
    if not (v > 0 and math.isfinite(v)):
        raise CliError("hypothesis_violation", f"{name} must be positive and finite, got {v}", EXIT_HYPOTHESIS)


def cmd_planar(args, ctx):
    _positive("a", args.a)
    _positive("b", args.b)
    mz = planar_minimizer(args.a, args.b)
    return {
        "command": "planar",
        "a": args.a,
        "b": args.b,
        "regime": planar_regime(args.a, args.b).value,
        "energy": mz.energy,
        "minimizer": mz.to_dict(),
    }, EXIT_OK


def cmd_emin(args, ctx):
    _positive("va", args.va)
    _positive("vb", args.vb)
    M, E = emin(args.va, args.vb)
    payload = {"command": "emin", "V_A": args.va, "V_B": args.vb, "M": M, "E": E}
    ratio = args.vb / args.va
    if 0.5 <= ratio <= 2.0:
        payload["cuboids"] = theorem_minimizer(args.va, args.vb).to_dict()
    else:
        payload["cuboids"] = None
        payload["note"] = f"ratio {ratio:.12g} outside [1/2, 2]: E is the cuboid-family value only"
    return payload, EXIT_OK


def _hyp(exc: HypothesisError) -> CliError:
    return CliError(f"hypothesis_violation[{exc.hypothesis}]", str(exc), EXIT_HYPOTHESIS)


def cmd_bound(args, ctx):
    cfg = _read(args.input)
    if cfg.dimension != 3:
        raise CliError("hypothesis_violation[dimension]", "the slicing bound needs a 3D configuration", EXIT_HYPOTHESIS)
    choice = best_direction(cfg)
    if args.axis == "auto":
        if not choice.admissible:
            ps = ", ".join(str(p) for p in choice.ps)
            raise CliError("hypothesis_violation[overlap]", f"p > 1/3 on every axis (p = {ps})", EXIT_HYPOTHESIS)
        axis = choice.axis
    else:
        axis = int(args.axis)
    try:
        rep = lower_bound(cfg, axis)
    except HypothesisError as exc:
        raise _hyp(exc) from exc
    return {
        "command": "bound",
        "input": args.input,
        "axis_mode": args.axis,
        "all_p": {str(s.axis): str(s.p) for s in choice.all_stats},
        "report": rep.to_dict(),
    }, EXIT_OK


def cmd_search(args, ctx):
    dim = 2 if args.command == "search2d" else 3
    try:
        spec = SearchSpec(dim, args.va, args.vb, connected=not args.no_connectivity, max_cells=args.max_cells)
        res = search(spec, threads=ctx["threads"])
    except GuardrailError as exc:
        raise CliError("guardrail", str(exc), EXIT_HYPOTHESIS) from exc
    except ValueError as exc:
        raise CliError("hypothesis_violation", str(exc), EXIT_HYPOTHESIS) from exc
    payload = {"command": args.command, "result": res.to_dict()}
    if ctx["outdir"] is not None:
        paths = []
        for i, w in enumerate(res.witnesses):
            p = ctx["outdir"] / f"witness_{i:03d}.grid"
            write_grid(w, p, comment=f"E={res.energy}")
            paths.append(str(p))
        ctx["outputs"] += paths
        payload["witness_files"] = paths
    return payload, EXIT_OK


def cmd_sweep(args, ctx):
    out = Path(args.out)
    wdir = out.parent / f"{out.stem}_witnesses"
    try:
        rows = discrete_dominance_sweep(args.dim, args.max_total, wdir, threads=ctx["threads"], max_cells=args.max_cells)
    except GuardrailError as exc:
        raise CliError("guardrail", str(exc), EXIT_HYPOTHESIS) from exc
    out.parent.mkdir(parents=True, exist_ok=True)
    write_sweep_csv(rows, out)
    ctx["outputs"] += [str(out)] + [r.witness_path for r in rows]
    bad = [(r.a, r.b) for r in rows if r.dominates is False]
    return {
        "command": "sweep",
        "dim": args.dim,
        "max_total": args.max_total,
        "csv": str(out),
        "rows": len(rows),
        "equal_rows": [[r.a, r.b] for r in rows if r.equal],
        "dominance_violations": bad,
    }, (EXIT_CERT if bad else EXIT_OK)


def cmd_verify_lemmas(args, ctx):
    reports = run_all(GridSpec.named(args.grid))
    failed = [r.check_id for r in reports if not r.passed]
    sys.stderr.write(summary_table(reports) + "\n")
    return {
        "command": "verify-lemmas",
        "grid": args.grid,
        "passed": not failed,
        "failed": failed,
        "reports": [r.to_dict() for r in reports],
    }, (EXIT_CERT if failed else EXIT_OK)


def cmd_check_slicing(args, ctx):
    cfg = _read(args.input)
    try:
        rep = slicing_lemma_check(cfg, args.axis)
    except HypothesisError as exc:
        raise _hyp(exc) from exc
    except ValueError as exc:
        raise CliError("hypothesis_violation[axis]", str(exc), EXIT_HYPOTHESIS) from exc
    return {"command": "check-slicing", "input": args.input, "report": rep.to_dict()}, (
        EXIT_OK if rep.holds() else EXIT_CERT
    )


# ---------------------------------------------------------------------------


def _axis(v: str):
    if v == "auto":
        return v
    if v in ("1", "2", "3"):
        return v
    raise argparse.ArgumentTypeError("axis must be 1, 2, 3 or auto")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="l1bubble", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--outdir", type=Path, help="write the report, witnesses and manifest.json here")
    ap.add_argument("--threads", type=int, default=None, help="worker processes (default: all CPUs)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy of a grid configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("planar", help="planar minimal energy and minimizer")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(func=cmd_planar)

    p = sub.add_parser("emin", help="optimal cuboid pair")
    p.add_argument("--va", type=float, required=True)
    p.add_argument("--vb", type=float, required=True)
    p.set_defaults(func=cmd_emin)

    p = sub.add_parser("bound", help="slicing lower bound of a 3D grid configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--axis", type=_axis, default="auto")
    p.set_defaults(func=cmd_bound)

    for name in ("search2d", "search3d"):
        p = sub.add_parser(name, help=f"exhaustive lattice search ({name[-2:]})")
        p.add_argument("--va", type=int, required=True)
        p.add_argument("--vb", type=int, required=True)
        p.add_argument("--max-cells", type=int, default=None, help=f"override the size guardrail (also {GUARDRAIL_ENV})")
        p.add_argument("--no-connectivity", action="store_true", help="allow disconnected A and B")
        p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="discrete minimum vs continuous value table")
    p.add_argument("--dim", type=int, choices=(2, 3), required=True)
    p.add_argument("--max-total", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-cells", type=int, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-lemmas", help="sampled certification of the auxiliary inequalities")
    p.add_argument("--grid", choices=("dense", "fast"), default="dense")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("check-slicing", help="slicing inequality on a 3D grid configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--axis", type=int, choices=(1, 2, 3), required=True)
    p.set_defaults(func=cmd_check_slicing)
    return ap


REPORT_NAMES = {"verify-lemmas": "lemma_reports.json"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    outdir = args.outdir
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    ctx = {"outdir": outdir, "threads": threads, "outputs": [], "text": None}
    params = {k: v for k, v in vars(args).items() if k not in ("func", "outdir", "command")}
    manifest = RunManifest(args.command, jsonable({k: str(v) if isinstance(v, Path) else v for k, v in params.items()}))
    manifest.started = _now()
    try:
        payload, status = args.func(args, ctx)
    except CliError as exc:
        sys.stderr.write(f"error {exc.code}: {exc}\n")
        return exc.status
    text = dumps(payload)
    sys.stdout.write(ctx["text"] or text)
    if outdir is not None:
        report = outdir / REPORT_NAMES.get(args.command, f"{args.command}.json")
        report.write_text(text)
        manifest.outputs = [str(report)] + ctx["outputs"]
        manifest.finished = _now()
        manifest.write(outdir)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
