"""liepi command line.

Exit codes: 0 ok or consistent, 1 invalid input, 2 consistency alarm.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import catalog
from .banach_num import PreconditionError, SweepSpec, exp_growth_fit, power_sweep_fit
from .exact import format_exact, to_exact
from .lie_core import LieAlgebra, LieAlgebraError, classify, nilpotent_radical
from .pbw import TruncationError, truncated_quotient
from .pi_lab import (
    PIError,
    RepFamily,
    check_conditions,
    check_conditions_hom,
    family_analysis,
    standard_on_matrix_units,
    standard_random_check,
)
from .rep_engine import MatrixRep, RepresentationError, validate_rep


class InputError(Exception):
    pass


def _read_json(path: str) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _algebra_from_ref(ref, base: Optional[Path] = None) -> LieAlgebra:
    """A Lie algebra from an inline object, a catalog name, or a file path."""
    if isinstance(ref, dict):
        return LieAlgebra.from_json(ref)
    if isinstance(ref, str):
        if ref in catalog.names():
            return catalog.get(ref).algebra
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        return LieAlgebra.from_json(_read_json(str(path)))
    raise InputError("algebra must be an object, a catalog name, or a file path")


def load_algebra(args) -> LieAlgebra:
    if args.catalog:
        return _catalog_entry(args.catalog).algebra
    if not args.path:
        raise InputError("give a file path or --catalog NAME")
    data = _read_json(args.path)
    if isinstance(data, dict) and "mats" in data:
        return _algebra_from_ref(data.get("algebra"), Path(args.path).parent)
    return _algebra_from_ref(data)


def load_rep(args) -> MatrixRep:
    if args.catalog:
        entry = _catalog_entry(args.catalog)
        if entry.rep is None:
            raise InputError(f"catalog entry {args.catalog} has no default representation")
        return entry.rep
    if not args.path:
        raise InputError("give a representation file or --catalog NAME")
    data = _read_json(args.path)
    if not isinstance(data, dict) or "algebra" not in data:
        raise InputError("representation JSON needs keys algebra, N, mats")
    L = _algebra_from_ref(data["algebra"], Path(args.path).parent)
    R = MatrixRep.from_json(data, algebra=L)
    bad = validate_rep(R)
    if bad is not None:
        raise InputError(
            f"not a representation: bracket identity fails on basis pair {bad.pair} (residual {bad.residual:.3g})"
        )
    return R


def _catalog_entry(name: str):
    try:
        return catalog.get(name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    L = load_algebra(args)
    out = classify(L).to_json()
    out["names"] = list(L.names)
    _emit(out)
    return 0


def cmd_check(args) -> int:
    R = load_rep(args)
    if args.hom:
        report = check_conditions_hom(R, args.norm, seed=args.seed, samples=args.samples)
    else:
        report = check_conditions(R, seed=args.seed, samples=args.samples)
    _emit(report.to_json())
    return 0 if report.consistent else 2


def cmd_family(args) -> int:
    L = load_algebra(args)
    if args.n_max < args.n_min:
        raise InputError("--n-max must be at least --n-min")
    report = family_analysis(RepFamily.truncations(L, args.n_min, args.n_max))
    if args.csv:
        Path(args.csv).write_text(report.csv())
    _emit(report.to_json())
    return 0


def _parse_eta(text: str, dim: int) -> tuple:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != dim:
        raise InputError(f"--eta needs {dim} comma-separated coordinates, got {len(parts)}")
    try:
        return tuple(to_exact(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate in --eta: {exc}") from exc


def cmd_growth(args) -> int:
    R = load_rep(args)
    L = R.algebra
    eta = _parse_eta(args.eta, L.dim) if args.eta else tuple(to_exact(0) for _ in range(L.dim))
    if not nilpotent_radical(L).contains(eta):
        raise InputError("eta is not in the nilpotent radical")
    b = R.image(eta)
    spec = SweepSpec(scales=tuple(np.geomspace(args.t_min, args.t_max, args.points)))
    try:
        fit = power_sweep_fit(b, spec) if args.power else exp_growth_fit(b, spec, adaptive=args.adaptive)
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["k" if args.power else "t", "norm", "fitted_alpha", "fitted_C"])
    for x, v in fit.samples:
        w.writerow([repr(float(x)), repr(float(v)), repr(fit.alpha), repr(fit.C)])
    summary = {k: v for k, v in fit.to_json().items() if k != "samples"}
    summary["eta"] = [list(format_exact(x)) for x in eta]
    json.dump(summary, sys.stderr)
    sys.stderr.write("\n")
    return 0


def cmd_pi_witness(args) -> int:
    k, N = args.k, args.N
    if k < 2 or N < 1:
        raise InputError("need k >= 2 and N >= 1")
    out = {"identity": f"S_{k}", "N": N}
    if N * N >= k and N <= 4:
        ok, witness = standard_on_matrix_units(k, N)
        out["matrix_units_vanish"] = ok
        out["counterexample"] = None if witness is None else [[w // N + 1, w % N + 1] for w in witness]
    if k <= 12:
        rng = np.random.default_rng(args.seed)
        units = [np.eye(N)[[a]].T @ np.eye(N)[[b]] for a in range(N) for b in range(N)]
        out["random_max_relative"] = standard_random_check(k, units, args.trials, rng)
        out["trials"] = args.trials
    _emit(out)
    return 0


def cmd_catalog(args) -> int:
    if args.name:
        _emit(_catalog_entry(args.name).to_json())
    else:
        _emit([{"name": e.name, "dim": e.algebra.dim, "note": e.note} for e in catalog.entries()])
    return 0


def cmd_dump_table(args) -> int:
    L = load_algebra(args)
    T = truncated_quotient(L, args.n)
    _emit(T.to_json())
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liepi", description="Lie algebra structure and PI-condition checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sub-checks (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def source(sp, what):
        sp.add_argument("path", nargs="?", help=f"{what} JSON file")
        sp.add_argument("--catalog", metavar="NAME", help="use a built-in catalog entry instead")

    a = add("analyze", help="radicals, Levi subalgebra and structure flags")
    source(a, "Lie algebra (or representation)")
    a.set_defaults(func=cmd_analyze)

    c = add("check", help="evaluate conditions 1, 2a, 2b, 3a, 3b, 4 on a representation")
    source(c, "representation")
    c.add_argument("--hom", action="store_true", help="measure growth against a norm on the nilpotent radical")
    c.add_argument("--norm", choices=["euclidean", "basis"], default="euclidean")
    c.add_argument("--samples", type=int, default=200, help="random elements of the nilpotent radical")
    c.set_defaults(func=cmd_check)

    f = add("family", help="nilpotency degrees along the truncation family")
    source(f, "Lie algebra")
    f.add_argument("--n-min", type=int, default=1)
    f.add_argument("--n-max", type=int, default=6)
    f.add_argument("--csv", metavar="FILE", help="also write n,d_n,N as CSV")
    f.set_defaults(func=cmd_family)

    g = add("growth", help="CSV of exponential (or power) norm growth for one element")
    source(g, "representation")
    g.add_argument("--eta", help="coordinates of eta in the algebra basis, comma separated")
    g.add_argument("--t-min", type=float, default=1.0)
    g.add_argument("--t-max", type=float, default=1e4)
    g.add_argument("--points", type=int, default=16)
    g.add_argument("--adaptive", action="store_true", help="stretch the grid past the Taylor crossover")
    g.add_argument("--power", action="store_true", help="sweep (1 + rho(eta))^k over integers instead")
    g.set_defaults(func=cmd_growth)

    w = add("pi-witness", help="standard identity S_k on N x N matrices")
    w.add_argument("--k", type=int, default=4)
    w.add_argument("--N", type=int, default=2)
    w.add_argument("--trials", type=int, default=500)
    w.set_defaults(func=cmd_pi_witness)

    k = add("catalog", help="list catalog entries or dump one")
    k.add_argument("name", nargs="?")
    k.set_defaults(func=cmd_catalog)

    d = add("dump-table", help="multiplication table of a truncated enveloping quotient")
    source(d, "Lie algebra")
    d.add_argument("--n", type=int, default=2, help="cutoff degree")
    d.set_defaults(func=cmd_dump_table)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, LieAlgebraError, RepresentationError, PIError, TruncationError, ValueError) as exc:
        print(f"liepi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
