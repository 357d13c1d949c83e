"""Independent reference implementations used as test oracles.

These deliberately avoid the package's factorization pipeline: divisor
enumeration with exact division for factoring, and plain exhaustive
enumeration for the exponent searches.
"""
from __future__ import annotations

import itertools
import math

from polycomb.polynomial import IntPolynomial, try_exact_div
from polycomb.analytic import evaluate_at_witness
from polycomb.factorization import is_irreducible


def idivisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return out


def _strip_linears(f: IntPolynomial, parts: list[IntPolynomial]) -> IntPolynomial:
    changed = True
    while f.degree >= 1 and changed:
        changed = False
        c0, lc = f.coeffs[0], f.leading()
        for q in idivisors(lc):
            for r in idivisors(c0):
                if math.gcd(q, r) != 1:
                    continue
                for rr in (r, -r):
                    while f.degree >= 1 and f.scaled_value(rr, q) == 0:
                        quot = try_exact_div(f, IntPolynomial((-rr, q)))
                        if quot is None:
                            break
                        f = quot
                        parts.append(IntPolynomial((-rr, q)))
                        changed = True
    return f


def oracle_factor_parts(f: IntPolynomial) -> list[IntPolynomial]:
    """Complete irreducible factor list (with repetition) of a polynomial of
    degree <= 4, by divisor-split enumeration and exact division."""
    assert f.degree >= 1 and f.degree <= 4
    f = f.primitive_part()
    if f.leading() < 0:
        f = -f
    parts: list[IntPolynomial] = []
    k = f.trailing_valuation()
    parts += [IntPolynomial((0, 1))] * k
    f = IntPolynomial(f.coeffs[k:])
    f = _strip_linears(f, parts)
    if f.degree == 4:
        found = _quadratic_split(f)
        if found is not None:
            parts.extend(found)
            return sorted(parts, key=lambda g: g.sort_key())
    if f.degree >= 1:
        parts.append(f)
    return sorted(parts, key=lambda g: g.sort_key())


def _quadratic_split(f: IntPolynomial):
    """Split a quartic with no linear factors as (quadratic)(quadratic), or None.

    For each leading/constant divisor pair the two middle coefficients solve a
    2x2 linear system; the degenerate system falls back to a bounded scan."""
    f0, f1, f2, f3, f4 = f.coeffs
    for a in idivisors(f4):
        d = f4 // a
        for c_abs in idivisors(f0):
            for c in (c_abs, -c_abs):
                k0 = f0 // c
                det = d * c - a * k0
                if det != 0:
                    bn = f3 * c - a * f1
                    en = d * f1 - k0 * f3
                    if bn % det or en % det:
                        continue
                    b, e = bn // det, en // det
                    if a * k0 + b * e + c * d != f2:
                        continue
                    g = IntPolynomial((c, b, a))
                    quot = try_exact_div(f, g)
                    if quot is not None:
                        return [g, quot]
                else:
                    bound = 4 * (math.isqrt(sum(x * x for x in f.coeffs)) + 1) * abs(a)
                    for b in range(-bound, bound + 1):
                        g = IntPolynomial((c, b, a))
                        quot = try_exact_div(f, g)
                        if quot is not None:
                            return [g, quot]
    return None


def naive_estimate_w(xi, n: int, X: int, variant: str):
    """Full-box enumeration matching estimate_w's contract; returns
    (interval_hi, witness_poly) or None."""
    best = None
    for coeffs in itertools.product(range(-X, X + 1), repeat=n + 1):
        p = IntPolynomial(coeffs)
        if p.is_zero():
            continue
        if variant != "any":
            if p.degree != n or not is_irreducible(p):
                continue
        if variant in ("monic", "monic_unit") and p.leading() != 1:
            continue
        if variant == "monic_unit" and abs(p.constant_coeff()) != 1:
            continue
        lo, hi = evaluate_at_witness(p, xi)
        if lo <= 0:
            continue
        if best is None or hi < best[0] or (hi == best[0] and p.sort_key() < best[1].sort_key()):
            best = (hi, p)
    return best


def convergents(quotients):
    """(p_k, q_k) sequence of a continued fraction [a0; a1, ...]."""
    p0, q0 = 1, 0
    p1, q1 = quotients[0], 1
    out = [(p1, q1)]
    for a in quotients[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append((p1, q1))
    return out
