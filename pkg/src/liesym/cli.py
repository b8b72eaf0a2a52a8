"""``liesym`` command-line entry point.

Exit codes: 0 pass, 1 check failure, 2 usage, 3 I/O.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import finitegroup as fg
from . import lorentz as lz
from . import noether as nl
from . import so3su2 as su2
from . import su3flavor as su3
from .numkernel import MatrixFormatError, load_matrix, save_matrix
from .suites import DEFAULT_TOLERANCES, SUITES, _clean, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

NAMED_MATRICES = {
    "identity4": lambda: np.eye(4),
    "boost-x": lambda: lz.boost("x", np.pi / 2),
    "T_p": lambda: lz.T_P,
    "T_t": lambda: lz.T_T,
    "gell-mann-8": lambda: su3.gell_mann(8),
    "pauli-y": lambda: su2.pauli("y"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _parse_tols(items) -> dict:
    """``NAME=VALUE`` or ``SUITE.NAME=VALUE`` -> {suite: {name: value}}."""
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            value = float(val)
        except ValueError:
            raise UsageError(f"--tol value is not a number: {val!r}") from None
        suite, dot, name = key.partition(".")
        targets = [suite] if dot else list(SUITES)
        name = name if dot else key
        hit = False
        for s in targets:
            if s in DEFAULT_TOLERANCES and name in DEFAULT_TOLERANCES[s]:
                out.setdefault(s, {})[name] = value
                hit = True
        if not hit:
            raise UsageError(f"unknown tolerance {key!r}")
    return out


def _timestamp(enabled: bool):
    if not enabled:
        return None
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def run_verify(name: str, seed: int, tols: dict, parallel: bool, timestamp: bool) -> dict:
    if name != "all":
        rep = run_suite(name, seed, tols.get(name))
        rep["timestamp"] = _timestamp(timestamp)
        return rep
    if parallel:
        with ThreadPoolExecutor() as ex:
            futures = [ex.submit(run_suite, s, seed, tols.get(s)) for s in SUITES]
            reports = [f.result() for f in futures]
    else:
        reports = [run_suite(s, seed, tols.get(s)) for s in SUITES]
    first = next((f"{r['suite']}:{r['first_failure']}" for r in reports if not r["passed"]), None)
    return {
        "suite": "all",
        "timestamp": _timestamp(timestamp),
        "seed": seed,
        "suites": reports,
        "passed": first is None,
        "first_failure": first,
    }


def _summary_lines(rep: dict) -> list:
    reps = rep["suites"] if rep["suite"] == "all" else [rep]
    lines = []
    for r in reps:
        for c in r["checks"]:
            lines.append(f"{'PASS' if c['pass'] else 'FAIL'}  {r['suite']}.{c['name']}  value={c['value']}"
                         + (f"  tol={c['tol']}" if c["tol"] is not None else ""))
        for d in r["discrepancies"]:
            lines.append(f"NOTE  {r['suite']}.{d['id']}: {d['summary']}")
    lines.append("PASSED" if rep["passed"] else f"FAILED (first failure: {rep['first_failure']})")
    return lines


def _write(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_verify(args) -> int:
    if args.suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    tols = _parse_tols(args.tol)
    rep = run_verify(args.suite, args.seed, tols, args.parallel, not args.no_timestamp)
    text = dumps(rep)
    if args.out:
        _write(args.out, text)
    if args.json:
        sys.stdout.write(text)
    else:
        print("\n".join(_summary_lines(rep)))
    if not rep["passed"]:
        print(f"first failure: {rep['first_failure']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_emit(args) -> int:
    if args.what == "weights-csv":
        _write(args.path, su3.weights_csv(with_hypercharge=args.hypercharge))
    elif args.what == "group-json":
        if args.group not in fg.BUNDLED_GROUPS:
            raise UsageError(f"unknown group {args.group!r}")
        _write(args.path, json.dumps(fg.group_to_json(fg.BUNDLED_GROUPS[args.group]()), indent=2) + "\n")
    else:
        if args.matrix not in NAMED_MATRICES:
            raise UsageError(f"unknown matrix {args.matrix!r}")
        try:
            save_matrix(NAMED_MATRICES[args.matrix](), args.path)
        except OSError as exc:
            raise OSError(f"cannot write {args.path}: {exc.strerror or exc}") from exc
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        m = load_matrix(args.matrix)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if m.shape != (4, 4) or np.max(np.abs(m.imag)) > 0:
        print("error: classify needs a real 4x4 matrix", file=sys.stderr)
        return EXIT_FAIL
    lam = np.real(m)
    if not lz.verify_lorentz(lam, args.tol):
        print(f"error: not a Lorentz transformation (residual {lz.lorentz_residual(lam):.3g})", file=sys.stderr)
        return EXIT_FAIL
    cls = lz.classify(lam, args.tol)
    sys.stdout.write(dumps({"det": cls.det, "lambda00": cls.lambda00, "category": cls.category}))
    return EXIT_OK


def cmd_noether(args) -> int:
    try:
        cfg = nl.LatticeConfig(args.dims, args.grid, args.dx, args.dt, args.mass, args.steps)
        cfg.check_stability()
        report = nl.conservation_report(cfg, args.ic, args.sample, args.refine)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = dumps(report)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    d = report["drift"]
    print(f"E_drift_rel={d['E_drift_rel']:.3e} P_drift_abs={d['P_drift_abs']:.3e} "
          f"BO_drift_rel={d['BO_drift_rel']:.3e} divergence_max={report['divergence']['max_abs']:.3e}",
          file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liesym", description="Verification suites for group and field-theory constructions.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of {', '.join(SUITES + ('all',))}")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", action="append", metavar="[SUITE.]NAME=VALUE", help="override a tolerance (repeatable)")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    v.add_argument("--parallel", action="store_true", help="run suites of 'all' concurrently")
    v.add_argument("--no-timestamp", action="store_true", help="set timestamp to null")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="write a data file")
    e.add_argument("what", choices=["weights-csv", "group-json", "matrix-json"])
    e.add_argument("path")
    e.add_argument("--group", default="c4", help=f"group-json: one of {', '.join(fg.BUNDLED_GROUPS)}")
    e.add_argument("--matrix", default="boost-x", help=f"matrix-json: one of {', '.join(NAMED_MATRICES)}")
    e.add_argument("--hypercharge", action="store_true", help="weights-csv: add a y column")
    e.set_defaults(func=cmd_emit)

    c = sub.add_parser("classify", help="classify a 4x4 Lorentz matrix file")
    c.add_argument("matrix")
    c.add_argument("--tol", type=float, default=lz.LORENTZ_TOL)
    c.set_defaults(func=cmd_classify)

    n = sub.add_parser("noether", help="lattice Klein-Gordon simulator")
    nsub = n.add_subparsers(dest="noether_command", parser_class=_Parser)
    nsub.required = True
    r = nsub.add_parser("run", help="simulate and report conserved charges")
    r.add_argument("--dims", type=int, choices=[1, 3], default=1)
    r.add_argument("--grid", type=int, default=256)
    r.add_argument("--dx", type=float, default=1.0)
    r.add_argument("--dt", type=float, default=0.05)
    r.add_argument("--mass", type=float, default=1.0)
    r.add_argument("--steps", type=int, default=2000)
    r.add_argument("--ic", default="gaussian", help="gaussian[:w[:v]] | mode:k | file:PATH.npz")
    r.add_argument("--sample", type=int, default=10)
    r.add_argument("--out")
    r.add_argument("--refine", type=int, default=0, help="levels of dx/dt halving in a convergence table")
    r.set_defaults(func=cmd_noether)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"liesym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"liesym: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
