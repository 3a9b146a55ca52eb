"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 invalid state input.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import verify as verify_mod
from .channels import PFParams, apply_pf_each_qubit
from .errors import ParameterError, QRelationsError
from .measures import profile
from .relations import BoundaryKind, classify_region, boundary_d2
from .scan import COLUMNS, Family, ScanSpec, iter_rows
from .states import (
    PAIRS,
    DensityMatrix,
    Pair,
    WParams,
    horodecki_state,
    min_coherence_state,
    read_matrix,
    reduce_pair,
    w_state,
)
from .xxz import XXZParams, ground_state, rg_flow

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_STATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class StateError(Exception):
    pass


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return v


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _write_csv(path, header, rows) -> None:
    with _output(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def _write_json(path, obj) -> None:
    with _output(path) as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True))
        fh.write("\n")


def _rows_as_json(header, rows):
    return [dict(zip(header, row)) for row in rows]


def _emit(args, header, rows) -> None:
    if args.format == "json":
        _write_json(args.out, _rows_as_json(header, list(rows)))
    else:
        _write_csv(args.out, header, rows)


# ----------------------------------------------------------------------------
# state construction for `profile`


def _state_from_spec(spec: dict) -> DensityMatrix:
    fam = str(spec.get("family", "")).lower()
    try:
        if fam == "w":
            return w_state(WParams(float(spec["alpha"]), float(spec["beta"]), float(spec["gamma"])))
        if fam == "horodecki":
            return horodecki_state(float(spec["eps"]))
        if fam in ("mincoh", "min_coh", "min-coherence"):
            return min_coherence_state(float(spec["a"]), float(spec.get("y", 1.0)))
        if fam == "xxz":
            return ground_state(float(spec["delta"]), bool(spec.get("primed", False)))
    except KeyError as exc:
        raise UsageError(f"state spec for family {fam!r} lacks {exc.args[0]!r}") from None
    raise UsageError(f"unknown state family {spec.get('family')!r}")


def _load_state(args) -> DensityMatrix:
    if args.matrix:
        try:
            m = read_matrix(args.matrix)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        except ValueError as exc:
            raise UsageError(f"{args.matrix}: {exc}") from None
        try:
            return DensityMatrix.from_matrix(m)
        except QRelationsError as exc:
            raise StateError(str(exc)) from None
    if args.state:
        text = args.state
        if text.startswith("@"):
            try:
                with open(text[1:], encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(str(exc)) from None
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad state JSON: {exc}") from None
        if not isinstance(spec, dict):
            raise UsageError("state JSON must be an object")
        return _state_from_spec(spec)
    if not args.family:
        raise UsageError("give --family, --matrix or --state")
    spec = {"family": args.family}
    for key in ("alpha", "beta", "gamma", "eps", "a", "y", "delta"):
        val = getattr(args, key)
        if val is not None:
            spec[key] = val
    spec["primed"] = args.primed
    return _state_from_spec(spec)


def cmd_profile(args) -> int:
    rho = _load_state(args)
    if args.p is not None:
        if rho.qubit_count != 3:
            raise UsageError("--p applies the phase-flip channel and needs a 3-qubit state")
        rho = apply_pf_each_qubit(rho, args.p)
    if rho.qubit_count == 2:
        out = profile(rho).to_dict()
    elif rho.qubit_count == 3:
        pairs = (Pair.parse(args.pair),) if args.pair else PAIRS
        out = {str(p): profile(reduce_pair(rho, p)).to_dict() for p in pairs}
        if args.pair:
            out = out[str(pairs[0])]
    else:
        raise UsageError("profile needs a two- or three-qubit state")
    _write_json(args.out, out)
    return EXIT_OK


def cmd_scan(args) -> int:
    lo, hi = (args.range if args.range else (None, None))
    spec = ScanSpec(
        family=Family.parse(args.family),
        samples=args.samples,
        seed=args.seed,
        pair=Pair.parse(args.pair) if args.pair else None,
        p=args.p,
        lo=lo,
        hi=hi,
        grid=args.grid,
    )
    _emit(args, COLUMNS, iter_rows(spec))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run(args.suite, samples=args.samples, seed=args.seed)
    summary = {"suite": args.suite, "samples": args.samples, "seed": args.seed, "suites": {}}
    first_failure = None
    lines = []
    for name, checks in results.items():
        summary["suites"][name] = [c.to_dict() for c in checks]
        for c in checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {name}/{c.name}: {c.detail}")
            if not c.passed and first_failure is None:
                first_failure = (name, c)
    n_fail = sum(not c.passed for checks in results.values() for c in checks)
    n_all = sum(len(checks) for checks in results.values())
    summary["passed"] = n_all - n_fail
    summary["failed"] = n_fail
    with _output(args.out) as fh:
        if args.format != "json":
            for line in lines:
                fh.write(line + "\n")
            if first_failure is not None:
                name, c = first_failure
                ce = json.dumps(c.counterexample, sort_keys=True) if c.counterexample else "(no state involved)"
                fh.write(f"first counterexample [{name}/{c.name}]: {ce}\n")
            fh.write(f"{n_all - n_fail}/{n_all} checks passed\n")
        fh.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY


def cmd_channel(args) -> int:
    w = WParams(args.alpha, args.beta, args.gamma)
    if args.p is not None:
        pf = PFParams(args.p)
    elif args.eta is not None and args.t is not None:
        pf = PFParams.from_decay(args.eta, args.t)
    else:
        raise UsageError("give --p or both --eta and --t")
    rho = w_state(w)
    after = apply_pf_each_qubit(rho, pf.p)
    out = {
        "alpha": w.alpha, "beta": w.beta, "gamma": w.gamma, "p": pf.p, "y": pf.y,
        "pairs": {
            str(pair): {
                "before": profile(reduce_pair(rho, pair)).to_dict(),
                "after": profile(reduce_pair(after, pair)).to_dict(),
            }
            for pair in PAIRS
        },
    }
    _write_json(args.out, out)
    return EXIT_OK


XXZ_COLUMNS = ("step", "J", "delta", "q", "E0", "C13", "D2_13", "P13", "N13", "C12", "D2_12", "P12", "N12")


def cmd_xxz(args) -> int:
    trace = rg_flow(XXZParams(args.delta, args.j), args.steps)
    rows = []
    for i, st in enumerate(trace):
        rho = ground_state(st.delta)
        p13 = profile(reduce_pair(rho, 13))
        p12 = profile(reduce_pair(rho, 12))
        rows.append((str(i), *(_fmt(v) for v in (st.j, st.delta, st.q, st.e0,
                                                 p13.concurrence, p13.d2, p13.purity, p13.n,
                                                 p12.concurrence, p12.d2, p12.purity, p12.n))))
    _emit(args, XXZ_COLUMNS, rows)
    return EXIT_OK


def cmd_regions(args) -> int:
    cs = np.linspace(0.0, 1.0, args.nc + 1)[1:]
    ds = np.linspace(0.0, 1.0, args.nd + 1)
    rows = [(_fmt(c), _fmt(d), str(classify_region(float(c), float(d)))) for c in cs for d in ds]
    _emit(args, ("C", "D2", "region"), rows)
    return EXIT_OK


def cmd_curves(args) -> int:
    kinds = list(BoundaryKind)
    cs = np.linspace(0.0, 1.0, args.points)
    rows = []
    for c in cs:
        vals = []
        for kind in kinds:
            try:
                vals.append(_fmt(boundary_d2(kind, float(c), args.y)))
            except QRelationsError:
                vals.append("")
        rows.append((_fmt(c), *vals))
    _emit(args, ("C", *(k.value for k in kinds)), rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="qrelations", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="resource profile of one state (JSON)")
    p.add_argument("--family", choices=("w", "horodecki", "mincoh", "xxz"))
    p.add_argument("--matrix", help="matrix text file")
    p.add_argument("--state", help="state spec JSON, or @file")
    for key in ("alpha", "beta", "gamma", "eps", "a", "y", "delta"):
        p.add_argument(f"--{key}", type=float)
    p.add_argument("--primed", action="store_true", help="xxz: use the other degenerate ground state")
    p.add_argument("--pair", help="12, 13 or 23 for three-qubit states (default: all)")
    p.add_argument("--p", type=float, help="apply the phase-flip channel first (three-qubit states)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("scan", parents=[common], help="family scan as CSV rows")
    p.add_argument("--family", default="W", help="W (default), W_PF, HORODECKI, MIN_COH or XXZ")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--pair")
    p.add_argument("--p", type=float, default=0.0, help="phase-flip strength (W_PF, MIN_COH)")
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"), help="one-parameter families")
    p.add_argument("--grid", action="store_true", help="evenly spaced instead of random parameters")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=(*verify_mod.SUITES, "all"))
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=_u64, default=42)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("channel", parents=[common], help="pair profiles before/after phase flip (JSON)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--t", type=float)
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("xxz", parents=[common], help="RG flow with per-step pair profiles")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--j", type=float, default=1.0)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_xxz)

    p = sub.add_parser("regions", parents=[common], help="region labels on a (C, D2) grid")
    p.add_argument("--nc", type=int, default=100)
    p.add_argument("--nd", type=int, default=100)
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("curves", parents=[common], help="all boundary curves on a C grid")
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--y", type=float, default=1.0, help="phase-flip attenuation for the PF curves")
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "samples", 1) is not None and getattr(args, "samples", 1) < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except StateError as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_STATE
    except (UsageError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
