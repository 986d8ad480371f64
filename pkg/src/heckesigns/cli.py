"""Command-line front end.

Subcommands mirror the library layers:

    field info                         zeta constants of a base field
    ideals count|squarefree|smooth|mertens
                                       counting functions vs predictions
    dickman [kappa] --u U              rho values / the rho(2u)=2log u root
    coeffs sample                      draw and freeze a coefficient system
    sieve hsum|lower-bound             sieve-weight sums and the lower bound
    sums T|S|first-negative|signs|lvalue|growth
                                       coefficient-sum statistics
    experiment run --config FILE       bundled reproducible experiments

Tabular results are CSV with '#' header comments (12 significant digits for
floats); structured results are JSON.  All randomness is seeded, so any
invocation reproduces its output bytes apart from the timestamp comment.
--threads parallelizes independent experiment grid points without changing
the results or their order.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .coefficients import load_csv, sample_sato_tate, write_csv
from .dickman import rho, solve_kappa
from .errors import ConfigError, HeckesignsError
from .experiments import config_from_json, emit_csv, emit_json, run_experiment
from .field import make_field, residue_cF, zetaF
from .ideals import (
    ideal_count,
    prime_reciprocal_sum,
    smooth_count,
    squarefree_count,
)
from .sieve import h_partial_sum, h_sum_prediction, lower_bound_check
from .sums import (
    L_value,
    S_sum,
    S_via_integral,
    T_sum,
    first_negative,
    growth_exponent,
    sign_counts,
)

__all__ = ["main"]


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--disc", type=int, default=1,
                        help="field discriminant (1 = rationals)")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--threads", type=int, default=1)


def _comments(args) -> list[str]:
    from .experiments import _timestamp

    return [f"command: {' '.join(args._argv)}", f"timestamp: {_timestamp()}"]


def _load_system(args):
    if not getattr(args, "coeffs", None):
        raise ConfigError("this command needs --coeffs FILE")
    disc = args.disc
    if not args.disc_given:
        # the file header records its own field; honor it unless the user
        # explicitly asked for a cross-check via --disc
        with open(args.coeffs) as fh:
            head = fh.readline()
        m = re.search(r"disc=(-?\d+)", head)
        if m:
            disc = int(m.group(1))
    return load_csv(make_field(disc), args.coeffs)


# ===== handlers =====


def _cmd_field_info(args) -> int:
    fld = make_field(args.disc)
    payload = {
        "disc": fld.disc,
        "degree": fld.degree,
        "c_F": residue_cF(fld),
        "zeta_F_2": zetaF(fld, 2.0),
    }
    if args.format == "csv":
        emit_csv(_comments(args), list(payload), [list(payload.values())],
                 args.out)
    else:
        emit_json(payload, args.out)
    return 0


def _cmd_ideals(args) -> int:
    fld = make_field(args.disc)
    x = args.limit
    if args.stat == "count":
        value: float = ideal_count(fld, x)
        prediction = residue_cF(fld) * x
    elif args.stat == "squarefree":
        value = squarefree_count(fld, x)
        prediction = residue_cF(fld) / zetaF(fld, 2.0) * x
    elif args.stat == "smooth":
        if args.smooth_bound is None:
            raise ConfigError("ideals smooth needs --smooth-bound")
        value = smooth_count(fld, x, args.smooth_bound, args.squarefree)
        u = math.log(x) / math.log(args.smooth_bound)
        prediction = residue_cF(fld) * rho(u) * x
        if args.squarefree:
            prediction /= zetaF(fld, 2.0)
    else:  # mertens
        value = prime_reciprocal_sum(fld, x)
        prediction = math.log(math.log(x))
    rows = [[x, value, prediction, value / prediction]]
    _tabular(args, ["x", "value", "prediction", "ratio"], rows)
    return 0


def _cmd_dickman(args) -> int:
    if args.what == "kappa":
        k = solve_kappa()
        payload = {
            "kappa": k,
            "bracket_low": 10.0 / 9.0,
            "g_at_bracket_low": rho(20.0 / 9.0) - 2.0 * math.log(10.0 / 9.0),
            "g_at_kappa": rho(2.0 * k) - 2.0 * math.log(k),
        }
        emit_json(payload, args.out)
    else:
        if args.u is None:
            raise ConfigError("dickman needs --u U (or the kappa subcommand)")
        text = f"{rho(args.u):.12g}\n"
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def _cmd_coeffs_sample(args) -> int:
    fld = make_field(args.disc)
    system = sample_sato_tate(fld, args.limit, args.seed)
    write_csv(system, args.out)
    return 0


def _cmd_sieve(args) -> int:
    fld = make_field(args.disc)
    if args.stat == "hsum":
        emp = h_partial_sum(fld, args.y, args.u)
        pred = h_sum_prediction(fld, args.y, args.u)
        rows = [[args.y, args.u, emp, pred, emp / pred]]
        _tabular(args, ["y", "u", "empirical", "prediction", "ratio"], rows)
    else:  # lower-bound
        system = _load_system(args)
        rep = lower_bound_check(system, args.y, args.u)
        emit_json(
            {
                "holds": rep.holds,
                "T_sharp": rep.T_sharp,
                "h_sum": rep.h_sum,
                "g_nonneg": rep.g_nonneg,
                "premise_violations": [
                    {"rational_prime": q.rational_prime,
                     "conjugate_label": q.conjugate_label,
                     "norm": q.norm}
                    for q in rep.premise_violations
                ],
                "y": rep.y,
                "u": rep.u,
            },
            args.out,
        )
    return 0


def _cmd_sums(args) -> int:
    system = _load_system(args)
    if args.stat == "T":
        _tabular(args, ["x", "value"], [[args.x, T_sum(system, args.x)]])
    elif args.stat == "S":
        s = S_sum(system, args.x)
        s_int = S_via_integral(system, args.x)
        _tabular(args, ["x", "value", "via_integral"], [[args.x, s, s_int]])
    elif args.stat == "first-negative":
        hit = first_negative(system, args.max)
        if hit is None:
            emit_json({"found": False, "x_max": args.max}, args.out)
        else:
            emit_json(
                {
                    "found": True,
                    "norm": hit.norm,
                    "value": system.value(hit),
                    "factorization": [
                        {"rational_prime": q.rational_prime,
                         "conjugate_label": q.conjugate_label,
                         "norm": q.norm, "exponent": e}
                        for q, e in hit.factorization.items()
                    ],
                },
                args.out,
            )
    elif args.stat == "signs":
        rep = sign_counts(system, args.x)
        emit_json(
            {
                "x": rep.x,
                "positives": rep.positives,
                "negatives": rep.negatives,
                "zeros": rep.zeros,
                "euler_product_prediction": rep.euler_product_prediction,
                "half_deviation": rep.half_deviation,
            },
            args.out,
        )
    elif args.stat == "lvalue":
        res = L_value(system, args.s, args.truncation)
        emit_json(
            {
                "s": res.s,
                "series_value": res.series_value,
                "product_value": res.product_value,
                "discrepancy": res.discrepancy,
                "truncation_norm": res.truncation_norm,
            },
            args.out,
        )
    else:  # growth
        xs = [float(t) for t in args.xs.split(",")]
        samples = [(x, S_sum(system, x)) for x in xs]
        emit_json(
            {
                "samples": [[x, v] for x, v in samples],
                "exponent": growth_exponent(samples),
            },
            args.out,
        )
    return 0


def _cmd_experiment(args) -> int:
    with open(args.config) as fh:
        doc = json.load(fh)
    cfg = config_from_json(doc)
    overrides = {}
    if args.out is not None:
        overrides["output"] = args.out
    if args.format is not None:
        overrides["format"] = args.format
    if args.seed_given:
        overrides["seed"] = args.seed
    if args.disc_given:
        overrides["disc"] = args.disc
    if overrides:
        doc = cfg.to_json()
        doc.update(overrides)
        cfg = config_from_json(doc)
    run_experiment(cfg, threads=args.threads)
    return 0


def _tabular(args, header: list[str], rows: list[list]) -> None:
    if args.format == "json":
        emit_json({"columns": header, "rows": [list(r) for r in rows]},
                  args.out)
    else:
        emit_csv(_comments(args), header, rows, args.out)


# ===== parser =====


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckesigns",
        description="ideal counting, sieve weights, and coefficient sign "
                    "statistics over real quadratic fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="base-field constants")
    fsub = p.add_subparsers(dest="stat", required=True)
    pi = fsub.add_parser("info", help="JSON with disc, degree, c_F, zeta_F(2)")
    _common(pi)
    pi.set_defaults(func=_cmd_field_info)

    p = sub.add_parser("ideals", help="counting functions")
    isub = p.add_subparsers(dest="stat", required=True)
    for name, short in (
        ("count", "all ideals up to --limit"),
        ("squarefree", "square-free ideals up to --limit"),
        ("smooth", "smooth ideals up to --limit"),
        ("mertens", "prime-ideal reciprocal sum up to --limit"),
    ):
        pc = isub.add_parser(name, help=short)
        _common(pc)
        pc.add_argument("--limit", type=float, required=True)
        if name == "smooth":
            pc.add_argument("--smooth-bound", type=float, default=None)
            pc.add_argument("--squarefree", action="store_true")
        pc.set_defaults(func=_cmd_ideals, stat=name)

    p = sub.add_parser("dickman", help="rho values and the kappa root")
    _common(p)
    p.add_argument("what", nargs="?", choices=("kappa",), default=None)
    p.add_argument("--u", type=float, default=None)
    p.set_defaults(func=_cmd_dickman)

    p = sub.add_parser("coeffs", help="coefficient systems")
    csub = p.add_subparsers(dest="stat", required=True)
    ps = csub.add_parser("sample", help="seeded semicircle sample to CSV")
    _common(ps)
    ps.add_argument("--limit", type=float, required=True)
    ps.set_defaults(func=_cmd_coeffs_sample)

    p = sub.add_parser("sieve", help="three-band sieve weight")
    ssub = p.add_subparsers(dest="stat", required=True)
    ph = ssub.add_parser("hsum", help="h partial sum vs prediction")
    _common(ph)
    ph.add_argument("--y", type=float, required=True)
    ph.add_argument("--u", type=float, required=True)
    ph.set_defaults(func=_cmd_sieve, stat="hsum")
    pl = ssub.add_parser("lower-bound", help="square-free sum lower bound")
    _common(pl)
    pl.add_argument("--coeffs", required=True)
    pl.add_argument("--y", type=float, required=True)
    pl.add_argument("--u", type=float, required=True)
    pl.set_defaults(func=_cmd_sieve, stat="lower-bound")

    p = sub.add_parser("sums", help="coefficient sums and sign statistics")
    msub = p.add_subparsers(dest="stat", required=True)
    specs = {
        "T": "plain coefficient sum",
        "S": "log-weighted coefficient sum",
        "first-negative": "first norm with a negative value",
        "signs": "sign statistics report",
        "lvalue": "L(s) by series and Euler product",
        "growth": "least-squares growth exponent of S",
    }
    for name, short in specs.items():
        pm = msub.add_parser(name, help=short)
        _common(pm)
        pm.add_argument("--coeffs", required=True)
        if name in ("T", "S", "signs"):
            pm.add_argument("--x", type=float, required=True)
        if name == "first-negative":
            pm.add_argument("--max", type=float, required=True)
        if name == "lvalue":
            pm.add_argument("--s", type=float, required=True)
            pm.add_argument("--truncation", type=float, default=1e6)
        if name == "growth":
            pm.add_argument("--xs", required=True,
                            help="comma-separated x values")
        pm.set_defaults(func=_cmd_sums, stat=name)

    p = sub.add_parser("experiment", help="bundled reproducible experiments")
    esub = p.add_subparsers(dest="stat", required=True)
    pe = esub.add_parser("run", help="run a JSON experiment config")
    _common(pe)
    pe.add_argument("--config", required=True)
    pe.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    args._argv = ["heckesigns"] + argv
    args.seed_given = any(a == "--seed" or a.startswith("--seed=") for a in argv)
    args.disc_given = any(a == "--disc" or a.startswith("--disc=") for a in argv)
    try:
        return args.func(args)
    except HeckesignsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
