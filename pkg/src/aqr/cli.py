"""Command-line interface.

Subcommands:

* ``factor`` - factor a single (A, Z) pair from Matrix Market files.
* ``sweep``  - run the condition-number grid study, writing a CSV.
* ``bench``  - wall-clock comparison of the method variants, writing a CSV.
* ``check``  - verify a sweep CSV against the orthogonality-loss bounds.

Exit codes: 0 success; 1 bound violation (``check``); 2 bad flags or
malformed/ill-shaped input; 3 factorization failure (breakdown or loss of
positive definiteness).

Every run echoes its fully resolved configuration (including the seed and
backend) to stderr; CSV outputs carry the same line as a leading ``#``
comment, so result files are self-describing.
"""

import argparse
import sys

from . import backend
from .bench import BENCH_METHODS, run_bench
from .exceptions import (
    AqrError,
    BreakdownError,
    DimensionError,
    NotPositiveDefiniteError,
    ParseError,
    UnsupportedFormatError,
)
from .gram_schmidt import MethodId, SWEEP_METHODS, factorize
from .metrics import loss_of_A_orthogonality, representation_error
from .mmio import read_matrix_market, write_matrix_market
from .operators import SpdOperator, as_matrix, as_operator
from .testbed import run_sweep

SWEEP_COLUMNS = (
    "case,kappa_a_target,kappa_az_target,kappa_a_measured,kappa_az_measured,"
    "method,status,loss_a_orth,rep_error_rel,delta1,delta2"
)
BENCH_COLUMNS = "kind,m,n,method,seconds,mv_count"

#: delta ratios are enforced only where the bounds claim validity.
CHECK_DELTA_CAP = 1e-2
CHECK_RATIO_LIMIT = 10.0


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _echo(text):
    print(f"# aqr {text}", file=sys.stderr)


def _parse_methods(text, default):
    if text is None:
        return list(default)
    if text.strip().lower() == "all":
        return list(SWEEP_METHODS)
    return [MethodId.parse(part) for part in text.split(",") if part.strip()]


def _parse_kappa_exp(text):
    try:
        lo_s, hi_s, step_s = text.split(":")
        lo, hi, step = float(lo_s), float(hi_s), float(step_s)
    except ValueError:
        raise ValueError(f"bad --kappa-exp {text!r}, expected lo:hi:step") from None
    if step <= 0 or hi < lo:
        raise ValueError(f"bad --kappa-exp {text!r}")
    exps = []
    k = 0
    while True:
        e = lo + k * step
        if e > hi + 1e-9:
            break
        exps.append(round(e, 12))
        k += 1
    return exps


def cmd_factor(args):
    a_obj = read_matrix_market(args.a)
    z_obj = read_matrix_market(args.z)
    op = as_operator(a_obj)
    Z = z_obj.to_dense() if isinstance(z_obj, SpdOperator) else as_matrix(z_obj)
    method = MethodId.parse(args.method)
    _echo(f"factor a={args.a} z={args.z} method={method} backend={backend.current_backend()}")
    try:
        result = factorize(Z, op, method)
    except BreakdownError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NotPositiveDefiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.out_q:
        write_matrix_market(args.out_q, result.Q, comment=f"Q factor, method {method}")
    if args.out_r:
        write_matrix_market(args.out_r, result.R, comment=f"R factor, method {method}")
    if args.report:
        loss = loss_of_A_orthogonality(result.Q, op)
        rep_rel = representation_error(Z, result.Q, result.R)[1]
        print(f"{result.cost.mv_count},{result.cost.flops},{_fmt(loss)},{_fmt(rep_rel)}")
    return 0


def cmd_sweep(args):
    exps = _parse_kappa_exp(args.kappa_exp)
    methods = _parse_methods(args.methods, SWEEP_METHODS)
    config = (
        f"sweep case={args.case} m={args.m} n={args.n} kappa_exp={args.kappa_exp} "
        f"seed={args.seed} methods={','.join(str(m) for m in methods)} "
        f"backend={backend.current_backend()}"
    )
    _echo(config)
    records = run_sweep(args.case, args.m, args.n, exps, args.seed, methods)
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# aqr {config}\n")
        fh.write(SWEEP_COLUMNS + "\n")
        for r in records:
            fh.write(
                ",".join(
                    (
                        str(r.case),
                        _fmt(r.kappa_a_target),
                        _fmt(r.kappa_az_target),
                        _fmt(r.kappa_a_measured),
                        _fmt(r.kappa_az_measured),
                        r.method,
                        r.status,
                        _fmt(r.loss_a_orth),
                        _fmt(r.rep_error_rel),
                        _fmt(r.delta1),
                        _fmt(r.delta2),
                    )
                )
                + "\n"
            )
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 0


def cmd_bench(args):
    n_list = [int(part) for part in args.n_list.split(",") if part.strip()]
    methods = _parse_methods(args.methods, BENCH_METHODS)
    config = (
        f"bench kind={args.kind} m={args.m} n_list={args.n_list} seed={args.seed} "
        f"methods={','.join(str(m) for m in methods)} backend={backend.current_backend()} "
        f"timer=perf_counter"
    )
    _echo(config)
    records = run_bench(args.kind, args.m, n_list, args.seed, methods)
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# aqr {config}\n")
        fh.write(BENCH_COLUMNS + "\n")
        for r in records:
            fh.write(f"{r.kind},{r.m},{r.n},{r.method},{_fmt(r.seconds)},{r.mv_count}\n")
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 0


def _read_sweep_csv(path):
    """Returns (m from the config comment or None, list of row dicts)."""
    m = None
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        header = None
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                for token in line.split():
                    if token.startswith("m="):
                        try:
                            m = int(token[2:])
                        except ValueError:
                            pass
                continue
            if header is None:
                header = line.split(",")
                missing = [c for c in SWEEP_COLUMNS.split(",") if c not in header]
                if missing:
                    raise ParseError(f"missing columns: {', '.join(missing)}", lineno)
                continue
            values = line.split(",")
            if len(values) != len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(values)}", lineno)
            rows.append(dict(zip(header, values)))
    if header is None:
        raise ParseError("no header row found", 1)
    return m, rows


def _float_or_none(text):
    return float(text) if text not in ("", None) else None


def cmd_check(args):
    m, rows = _read_sweep_csv(args.sweep_csv)
    if args.m:
        m = args.m
    if m is None:
        print("error: sweep CSV carries no m= config comment; pass --m", file=sys.stderr)
        return 2
    scale = float(m) ** 1.5
    _echo(f"check sweep_csv={args.sweep_csv} m={m} ratio_limit={CHECK_RATIO_LIMIT}")

    by_method = {}
    for row in rows:
        by_method.setdefault(row["method"], []).append(row)

    violations = []
    for method in sorted(by_method):
        mgs_family = method.startswith("mgs-")
        ha = method.startswith("mgs-ha")
        worst1 = worst2 = 0.0
        n1 = n2 = 0
        for row in by_method[method]:
            if row["status"] != "ok":
                continue
            loss = _float_or_none(row["loss_a_orth"])
            d1 = _float_or_none(row["delta1"])
            d2 = _float_or_none(row["delta2"])
            if loss is None:
                continue
            if d1 is not None and d1 < CHECK_DELTA_CAP:
                ratio = loss / (scale * d1)
                n1 += 1
                if ratio > worst1:
                    worst1 = ratio
                if mgs_family and ratio > CHECK_RATIO_LIMIT:
                    violations.append((method, "delta1", row, ratio))
            if ha and d2 is not None and d2 < CHECK_DELTA_CAP:
                ratio = loss / (scale * d2)
                n2 += 1
                if ratio > worst2:
                    worst2 = ratio
                if ratio > CHECK_RATIO_LIMIT:
                    violations.append((method, "delta2", row, ratio))
        enforced = "enforced" if mgs_family else "informational"
        print(f"{method}: max loss/(m^1.5*delta1) = {worst1:.6g} over {n1} rows ({enforced})")
        if ha:
            print(f"{method}: max loss/(m^1.5*delta2) = {worst2:.6g} over {n2} rows (enforced)")
    for method, which, row, ratio in violations:
        print(
            f"VIOLATION {method} {which} ratio={ratio:.6g} "
            f"kappa_a={row['kappa_a_measured']} kappa_az={row['kappa_az_measured']} "
            f"loss={row['loss_a_orth']}"
        )
    return 1 if violations else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="aqr",
        description="Thin QR factorization in an SPD-weighted inner product",
    )
    parser.add_argument(
        "--backend",
        choices=("auto", "numba", "numpy"),
        default=None,
        help="kernel backend (default: AQR_BACKEND env var, else numba when available)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor one instance from Matrix Market files")
    p.add_argument("--a", required=True, help="weight matrix A (.mtx, array or coordinate)")
    p.add_argument("--z", required=True, help="matrix Z to factor (.mtx)")
    p.add_argument(
        "--method",
        required=True,
        help="method id: {mgs|cgs}-{naive|ha|hp}-{col|row} or cholqr",
    )
    p.add_argument("--out-q", help="write Q here (Matrix Market array)")
    p.add_argument("--out-r", help="write R here (Matrix Market array)")
    p.add_argument(
        "--report",
        action="store_true",
        help="print one CSV line: mv_count,flops,loss_a_orth,rep_error_rel",
    )
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("sweep", help="condition-number grid study")
    p.add_argument("--case", type=int, choices=(1, 2), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa-exp", required=True, help="log10 kappa grid as lo:hi:step")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--methods", help="comma list of method ids, or 'all'")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="wall-clock benchmark")
    p.add_argument("--kind", choices=("dense", "laplacian"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-list", required=True, help="comma list of n values")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--methods", help="comma list of method ids (default: mgs trio + cholqr)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="verify a sweep CSV against the loss bounds")
    p.add_argument("--sweep-csv", required=True)
    p.add_argument("--m", type=int, help="override m when the CSV lacks a config comment")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        backend.set_backend(args.backend)
    try:
        return args.func(args)
    except (ParseError, UnsupportedFormatError, DimensionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AqrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
