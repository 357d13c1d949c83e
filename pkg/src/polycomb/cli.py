"""Command-line entry point: reproducible experiments with machine-readable
output.  JSON for single-object results, CSV for sweeps; every output embeds
the run configuration (seed included) and a schema_version field.

Exit codes: 0 success, 2 precondition violation, 3 results dominated by
indeterminate numerics, 64 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from fractions import Fraction

from .polynomial import IntPolynomial, from_json_coeffs, to_json_coeffs, mobius_conjugate, MobiusMap
from .factorization import factor
from .arith import BoundInputs, gamma_bounds, gyory_log_bound, omega, tau
from .analytic import (
    IndeterminateError,
    RationalWitness,
    Verdict,
    compare_interval,
    kappa_threshold,
    min_root_gap,
    power_threshold,
    roots,
    theta_threshold,
)
from .exponents import (
    ExponentEstimate,
    asymptotic_exact_bound,
    comparison_table,
    continued_fraction_witness,
    equilibrium_value,
    estimate_lambda,
    estimate_w,
    german_transfer,
    liouville_witness,
    reciprocal_lower_bound,
    transfer_lower_bound,
    uniform_quadratic_bound,
    wirsing_exact_bound,
)
from .families import (
    COUNTEREXAMPLES,
    FamilySpec,
    census,
    counterexample_family,
    szegedy_shift,
)

SCHEMA_VERSION = 1

USAGE_EXIT = 64
PRECONDITION_EXIT = 2
INDETERMINATE_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(USAGE_EXIT)


@dataclasses.dataclass
class RunConfig:
    subcommand: str
    seed: int
    out: str | None
    format: str
    precision: int
    flags: dict

    def to_json(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
            "precision": self.precision,
            "flags": dict(sorted(self.flags.items())),
        }


def _default_precision() -> int:
    raw = os.environ.get("POLYCOMB_PRECISION", "")
    try:
        return max(32, int(raw)) if raw else 128
    except ValueError:
        return 128


def _emit(config: RunConfig, payload, lines: list[str] | None = None):
    """Write JSON (payload) or CSV (lines) with the embedded config preamble."""
    if config.format == "csv":
        body = [
            f"# schema_version={SCHEMA_VERSION}",
            "# config=" + json.dumps(config.to_json(), sort_keys=True),
        ] + (lines or [])
        text = "\n".join(body) + "\n"
    else:
        text = (
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "config": config.to_json(),
                    "result": payload,
                },
                indent=2,
                sort_keys=False,
            )
            + "\n"
        )
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_poly(text: str) -> IntPolynomial:
    try:
        items = json.loads(text)
        return from_json_coeffs(items)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"polynomial must be a JSON array of integer strings: {exc}")


def _parse_witness(text: str, radius: str | None) -> RationalWitness:
    if text.startswith("liouville:"):
        base, terms = text[len("liouville:") :].split(",")
        return liouville_witness(int(base), int(terms))
    if text.startswith("cf:"):
        quots = json.loads(text[len("cf:") :])
        return continued_fraction_witness(quots)
    approx = Fraction(text)
    rad = Fraction(radius) if radius else Fraction(0)
    return RationalWitness(approx, rad, f"cli rational {text}")


def _verdict_json(v: Verdict | None):
    return v.value if v is not None else None


# -- subcommand handlers ---------------------------------------------------------


def _cmd_factor(args, config: RunConfig) -> int:
    f = _parse_poly(args.P)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    _emit(config, factor(f).to_json())
    return 0


def _cmd_roots(args, config: RunConfig) -> int:
    f = _parse_poly(args.P)
    rs = roots(f, config.precision)
    _emit(config, rs.to_json())
    return 0 if rs.converged else INDETERMINATE_EXIT


def _cmd_gap(args, config: RunConfig) -> int:
    P = _parse_poly(args.P)
    Q = _parse_poly(args.Q)
    gap = min_root_gap(P, Q, config.precision)
    H = args.H if args.H else max(P.height(), Q.height())
    if H < 2:
        raise ValueError("height parameter below 2; pass --H explicitly")
    n = args.n if args.n else max(P.degree, Q.degree)
    kex, tex = kappa_threshold(n), theta_threshold(n)
    kv = (
        compare_interval(gap.lo, gap.hi, power_threshold(H, kex + args.epsilon))
        if kex is not None
        else None
    )
    tv = (
        compare_interval(gap.lo, gap.hi, power_threshold(H, tex + args.epsilon))
        if tex is not None
        else None
    )
    payload = {
        "gap": [str(gap.lo), str(gap.hi)],
        "gap_float": [float(gap.lo), float(gap.hi)],
        "pair": [gap.disk_a.to_json(), gap.disk_b.to_json()],
        "H": H,
        "n": n,
        "epsilon": args.epsilon,
        "kappa_exponent": kex,
        "kappa_verdict": _verdict_json(kv),
        "theta_exponent": tex,
        "theta_verdict": _verdict_json(tv),
    }
    _emit(config, payload)
    verdicts = [v for v in (kv, tv) if v is not None]
    if verdicts and all(v is Verdict.INDETERMINATE for v in verdicts):
        return INDETERMINATE_EXIT
    return 0


def _cmd_census(args, config: RunConfig) -> int:
    if args.counterexample:
        spec, _ = counterexample_family(args.counterexample, args.H, args.delta)
        spec = dataclasses.replace(spec, seed=config.seed)
    else:
        if not args.P or not args.Q:
            raise ValueError("census needs --P and --Q (or --counterexample)")
        P = _parse_poly(args.P)
        Q = _parse_poly(args.Q)
        n = args.n if args.n else max(P.degree, Q.degree)
        spec = FamilySpec(
            kind=args.kind,
            P=P,
            Q=Q,
            n=n,
            delta=args.delta,
            H=args.H,
            strict_hypotheses=not args.no_strict,
            seed=config.seed,
        )
    report = census(
        spec, precision=config.precision, check_root_gap=args.check_gap, epsilon=args.epsilon
    )
    if config.format == "csv":
        reducible_ix = {
            (tuple(i) if isinstance(i, tuple) else i): f for i, f in report.reducible
        }
        lines = ["index,degree,reducible,factor_degrees"]
        for index in spec.indices():
            member_degrees = ""
            key = tuple(index) if isinstance(index, tuple) else index
            red = 1 if key in reducible_ix else 0
            if red and reducible_ix[key] is not None:
                member_degrees = "+".join(
                    str(d) for d in reducible_ix[key].factor_degrees()
                )
            from .families import build_member

            deg = build_member(spec, index).degree
            label = f"{index[0]}:{index[1]}" if isinstance(index, tuple) else str(index)
            lines.append(f"{label},{deg},{red},{member_degrees}")
        _emit(config, None, lines)
    else:
        _emit(config, report.to_json())
    return 0


def _cmd_szegedy(args, config: RunConfig) -> int:
    P = _parse_poly(args.P)
    res = szegedy_shift(P)
    payload = {
        "b": res.b,
        "budget": res.budget,
        "ratio": abs(res.b) / res.budget,
        "scanned": res.scanned,
        "certificate": res.certificate.to_json(),
        "shifted": to_json_coeffs(P + res.b),
    }
    _emit(config, payload)
    return 0


def _cmd_exponent(args, config: RunConfig) -> int:
    xi = _parse_witness(args.xi, args.radius)
    if args.variant == "lambda":
        est = estimate_lambda(xi, args.n, args.X)
    else:
        est = estimate_w(xi, args.n, args.X, args.variant)
    payload = est.to_json()
    payload["witness_description"] = xi.description
    payload["box"] = {"n": args.n, "X": args.X, "variant": args.variant}
    _emit(config, payload)
    return 0


_FORMULAS = {
    "wirsing": (wirsing_exact_bound, 1),
    "transfer": (transfer_lower_bound, 2),
    "reciprocal": (reciprocal_lower_bound, 1),
    "german": (german_transfer, 2),
    "quadratic": (uniform_quadratic_bound, 1),
    "asymptotic": (asymptotic_exact_bound, 1),
    "equilibrium": (equilibrium_value, 1),
    "gyory": (gyory_log_bound, 2),
    "tau": (tau, 1),
    "omega": (omega, 1),
}


def _cmd_bounds(args, config: RunConfig) -> int:
    if args.table:
        _emit(config, {"table": comparison_table()})
        return 0
    if not args.formula:
        raise ValueError("bounds needs --table or --formula")
    if args.formula == "gamma":
        cn, d0, H = json.loads(args.args)
        g, gp = gamma_bounds(BoundInputs(cn=int(cn), d0=int(d0), H=float(H)))
        _emit(config, {"formula": "gamma", "gamma": g, "gamma_prime": gp})
        return 0
    if args.formula not in _FORMULAS:
        raise ValueError(f"unknown formula {args.formula!r}; known: {sorted(_FORMULAS)} + ['gamma']")
    fn, arity = _FORMULAS[args.formula]
    params = json.loads(args.args) if args.args else []
    if len(params) != arity:
        raise ValueError(f"formula {args.formula} takes {arity} argument(s)")
    if args.formula in ("wirsing", "asymptotic", "equilibrium"):
        value = fn(int(params[0]))
    elif args.formula in ("tau", "omega"):
        value = fn(int(params[0]))
    elif args.formula == "gyory":
        value = fn(int(params[0]), int(params[1]))
    elif arity == 1:
        value = fn(float(params[0]))
    else:
        value = fn(float(params[0]), int(params[1]))
    _emit(config, {"formula": args.formula, "args": params, "value": value})
    return 0


def _cmd_conjugate(args, config: RunConfig) -> int:
    P = _parse_poly(args.P)
    m = MobiusMap(args.a, args.b, args.c, args.d)
    n = args.n if args.n else P.degree
    _emit(config, {"poly": to_json_coeffs(mobius_conjugate(P, m, n))})
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="polycomb")
    parser.add_argument("--precision", type=int, default=None, help="working precision in bits")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = dict(seed=("--seed", int, 0), out=("--out", str, None), fmt=("--format", str, "json"))

    def add_common(p, default_format="json"):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv"), default=default_format)

    p = sub.add_parser("factor", help="factor an integer polynomial")
    p.add_argument("--P", required=True, help='polynomial as JSON strings, e.g. \'["-1","0","4"]\'')
    add_common(p)

    p = sub.add_parser("roots", help="certified complex root disks")
    p.add_argument("--P", required=True)
    add_common(p)

    p = sub.add_parser("gap", help="certified minimal root gap of two polynomials")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--H", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    add_common(p)

    p = sub.add_parser("census", help="reducibility census of a combination family")
    p.add_argument("--kind", choices=("S", "R", "M"), default="S")
    p.add_argument("--P", default=None)
    p.add_argument("--Q", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--counterexample", choices=COUNTEREXAMPLES, default=None)
    p.add_argument("--no-strict", action="store_true")
    p.add_argument("--check-gap", action="store_true")
    p.add_argument("--epsilon", type=float, default=0.1)
    add_common(p, default_format="csv")

    p = sub.add_parser("szegedy", help="smallest shift making a cubic irreducible")
    p.add_argument("--P", required=True)
    add_common(p)

    p = sub.add_parser("exponent", help="brute-force exponent estimators")
    p.add_argument("--xi", required=True, help="p/q, liouville:base,terms or cf:[a0,a1,...]")
    p.add_argument("--radius", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--X", type=int, required=True)
    p.add_argument(
        "--variant",
        choices=("any", "exact_irreducible", "monic", "monic_unit", "lambda"),
        default="any",
    )
    add_common(p)

    p = sub.add_parser("bounds", help="closed-form bound calculators")
    p.add_argument("--table", action="store_true")
    p.add_argument("--formula", default=None)
    p.add_argument("--args", default=None, help="JSON array of arguments")
    add_common(p)

    p = sub.add_parser("conjugate", help="fractional-linear conjugation of a polynomial")
    p.add_argument("--P", required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    add_common(p)

    return parser


_HANDLERS = {
    "factor": _cmd_factor,
    "roots": _cmd_roots,
    "gap": _cmd_gap,
    "census": _cmd_census,
    "szegedy": _cmd_szegedy,
    "exponent": _cmd_exponent,
    "bounds": _cmd_bounds,
    "conjugate": _cmd_conjugate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_EXIT
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("subcommand", "seed", "out", "format", "precision") and v is not None
    }
    config = RunConfig(
        subcommand=args.subcommand,
        seed=getattr(args, "seed", 0),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "json"),
        precision=args.precision if args.precision else _default_precision(),
        flags=flags,
    )
    try:
        return _HANDLERS[args.subcommand](args, config)
    except IndeterminateError as exc:
        sys.stderr.write(f"indeterminate: {exc}\n")
        return INDETERMINATE_EXIT
    except ValueError as exc:
        sys.stderr.write(f"precondition violation: {exc}\n")
        return PRECONDITION_EXIT


if __name__ == "__main__":
    sys.exit(main())
