"""Closed-form bound calculators and desk-scale brute-force estimators for
polynomial-evaluation and simultaneous-approximation exponents.

The estimators are exact exhaustive searches (organized as meet-in-the-middle
scans, never lattice reduction), so they can serve as independent oracles for
the rest of the package.  All estimates carry the search box that produced
them and certified value intervals.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from bisect import bisect_left
from fractions import Fraction

from .polynomial import IntPolynomial
from .factorization import is_irreducible, _log_fraction
from .analytic import RationalWitness, IndeterminateError


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------


def wirsing_exact_bound(n: int) -> float:
    """Lower bound (n + sqrt(n^2 + 16n - 8)) / 4 for approximation by
    algebraic numbers of exact degree n; established for 1 <= n <= 7."""
    if not 1 <= n <= 7:
        raise ValueError("the exact-degree bound is proved only for 1 <= n <= 7")
    return (n + math.sqrt(n * n + 16 * n - 8)) / 4


def transfer_lower_bound(w_hat: float, n: int) -> float:
    """(3/2) * w_hat - n + 1/2; requires w_hat >= n."""
    if w_hat < n:
        raise ValueError("uniform exponent below its Dirichlet floor")
    return 1.5 * w_hat - n + 0.5


def reciprocal_lower_bound(lambda_hat: float) -> float:
    """Exact-degree value bound 1 / lambda_hat."""
    if lambda_hat <= 0:
        raise ValueError("lambda_hat must be positive")
    return 1.0 / lambda_hat


def german_transfer(w_hat: float, n: int) -> float:
    """Transference bound (w_hat - n + 1) / w_hat in (0, 1]; requires w_hat >= n >= 1."""
    if n < 1 or w_hat < n:
        raise ValueError("requires w_hat >= n >= 1")
    return (w_hat - n + 1) / w_hat


def uniform_quadratic_bound(w_hat2: float) -> float:
    """Quadratic-case product bound w_hat2 * (w_hat2 - 1); requires w_hat2 >= 2."""
    if w_hat2 < 2:
        raise ValueError("uniform quadratic exponent is at least 2")
    return w_hat2 * (w_hat2 - 1)


def asymptotic_exact_bound(n: int) -> float:
    """n/2 + (1 - log 2)/2 * sqrt(n) + 1/3 for n >= 4."""
    if n < 4:
        raise ValueError("asymptotic bound applies for n >= 4")
    return n / 2 + (1 - math.log(2)) / 2 * math.sqrt(n) + 1 / 3


def equilibrium_value(n: int, tol: float = 1e-13) -> float:
    """Value where w/(w-n+1) meets (3/2)w - n + 1/2 over w >= n (by bisection).

    The two bounds move oppositely in w, so their crossing gives the best
    unconditional value; it must coincide with wirsing_exact_bound(n).
    """

    def diff(w: float) -> float:
        return w / (w - n + 1) - (1.5 * w - n + 0.5)

    lo = float(n)
    if diff(lo) <= 0:
        return 1.5 * lo - n + 0.5
    hi = float(n) + 1.0
    while diff(hi) > 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if diff(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    w = (lo + hi) / 2
    return 1.5 * w - n + 0.5


# stored table columns: best prior exact-degree bounds, and the bounds with
# no exact-degree restriction, both cut to 4 decimals
_PRIOR_EXACT = {3: 2.3557, 4: 2.9667, 5: 3.5615, 6: 4.0916, 7: 4.6457}
_UNRESTRICTED = {3: 2.7304, 4: 3.4508, 5: 4.1389, 6: 4.7630, 7: 5.3561}
_EXACT_DEGREE_STORED = {3: 2.5, 4: 3.1213, 5: 3.7122, 6: 4.2839, 7: 4.8423}


def comparison_table() -> list[dict]:
    """The n = 3..7 comparison rows; the exact-degree column is recomputed
    from the closed form, the other two columns are stored constants."""
    rows = []
    for n in range(3, 8):
        rows.append(
            {
                "n": n,
                "exact_degree_bound": wirsing_exact_bound(n),
                "exact_degree_stored": _EXACT_DEGREE_STORED[n],
                "prior_exact_degree_bound": _PRIOR_EXACT[n],
                "unrestricted_bound": _UNRESTRICTED[n],
            }
        )
    return rows


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def liouville_witness(base: int, terms: int) -> RationalWitness:
    """sum_{j<=terms} base**(-j!) exactly, radius 2*base**(-(terms+1)!)."""
    if base < 2 or terms < 1:
        raise ValueError("need base >= 2 and terms >= 1")
    value = Fraction(0)
    for j in range(1, terms + 1):
        value += Fraction(1, base ** math.factorial(j))
    radius = Fraction(2, base ** math.factorial(terms + 1))
    return RationalWitness(value, radius, f"liouville base {base}, {terms} terms")


def continued_fraction_witness(quotients) -> RationalWitness:
    """Witness for any real whose continued fraction starts with the given
    partial quotients; the radius covers every continuation."""
    qs = [int(a) for a in quotients]
    if len(qs) < 2 or any(a < 1 for a in qs[1:]) or qs[0] < 0:
        raise ValueError("need [a0; a1, ...] with a0 >= 0 and ai >= 1")
    p0, q0 = 1, 0
    p1, q1 = qs[0], 1
    for a in qs[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
    radius = Fraction(1, q1 * (q1 + q0))
    return RationalWitness(Fraction(p1, q1), radius, f"cf prefix {qs}")


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------

VARIANTS = ("any", "exact_irreducible", "monic", "monic_unit")
_KIND_OF_VARIANT = {
    "any": "w",
    "exact_irreducible": "w_exact",
    "monic": "w_int",
    "monic_unit": "w_unit",
}

_HALF_LIMIT = 35_000_000
_CANDIDATE_CAP = 200_000


class BoxTooLargeError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class ExponentEstimate:
    kind: str
    n: int
    X: int
    value: float
    witness_poly: IntPolynomial | None = None
    witness_x: int | None = None
    interval_lo: Fraction = Fraction(0)
    interval_hi: Fraction = Fraction(0)
    skipped_uncertifiable: int = 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "X": self.X,
            "value": self.value,
            "witness_poly": (
                [str(c) for c in self.witness_poly.coeffs] if self.witness_poly else None
            ),
            "witness_x": self.witness_x,
            "interval": [str(self.interval_lo), str(self.interval_hi)],
            "skipped_uncertifiable": self.skipped_uncertifiable,
        }


def _coefficient_ranges(n: int, X: int, variant: str) -> list[list[int]]:
    full = list(range(-X, X + 1))
    ranges = [list(full) for _ in range(n + 1)]
    if variant == "exact_irreducible":
        ranges[n] = [c for c in full if c != 0]
    elif variant == "monic":
        ranges[n] = [1]
    elif variant == "monic_unit":
        ranges[n] = [1]
        ranges[0] = [-1, 1]
    elif variant != "any":
        raise ValueError(f"unknown variant {variant!r}")
    return ranges


def _split_ranges(ranges):
    """Index split making the sorted (upper) half as large as possible without
    exceeding the memory guard, balancing against the scanned half."""
    total_low = 1
    sizes = [len(r) for r in ranges]
    best_k, best_cost = None, None
    for k in range(len(ranges) - 1):  # upper half = indices > k, nonempty both sides
        low = math.prod(sizes[: k + 1])
        high = math.prod(sizes[k + 1 :])
        if high > 8_000_000:
            continue
        cost = max(low, high * 3)
        if best_cost is None or cost < best_cost:
            best_k, best_cost = k, cost
    if best_k is None:
        raise BoxTooLargeError("no feasible meet-in-the-middle split")
    low = math.prod(sizes[: best_k + 1])
    high = math.prod(sizes[best_k + 1 :])
    if max(low, high) > _HALF_LIMIT:
        raise BoxTooLargeError(
            f"search halves {low} x {high} above the {_HALF_LIMIT} guard"
        )
    return best_k


def _class_test(variant: str, n: int):
    if variant == "any":
        return lambda poly: not poly.is_zero()
    if variant == "exact_irreducible":
        return lambda poly: poly.degree == n and is_irreducible(poly)
    if variant in ("monic", "monic_unit"):
        return lambda poly: poly.degree == n and is_irreducible(poly)
    raise ValueError(variant)


def estimate_w(
    xi: RationalWitness, n: int, X: int, variant: str = "any"
) -> ExponentEstimate:
    """Exhaustive minimum of the certified |P(xi)| upper bound over the
    variant's class of polynomials with degree <= n and height <= X.

    value = -log(min |P(xi)|) / log X.  Ties break by canonical coefficient
    order.  Candidates whose certified interval contains 0 cannot witness
    0 < |P(xi)| and are skipped; if every near-minimal candidate is in that
    situation the witness precision is too low and IndeterminateError rises.
    """
    if X < 2:
        raise ValueError("X must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    ranges = _coefficient_ranges(n, X, variant)
    k = _split_ranges(ranges)
    a = xi.approximant
    r = xi.radius
    p, q = a.numerator, a.denominator
    weights = [p**i * q ** (n - i) for i in range(n + 1)]
    qn = q**n

    low_vals = [[w * c for c in rng] for w, rng in zip(weights[: k + 1], ranges[: k + 1])]
    low_coeffs = ranges[: k + 1]
    high_vals = [
        [w * c for c in rng] for w, rng in zip(weights[k + 1 :], ranges[k + 1 :])
    ]
    high_coeffs = ranges[k + 1 :]

    b_sorted = sorted(
        sum(combo) for combo in itertools.product(*high_vals)
    )
    nb = len(b_sorted)

    # max achievable widening of |P(xi)| by the witness radius, scaled to
    # the integer grid; candidates within this slack of the best can still
    # win on certified upper endpoints
    m = abs(a) + r
    e_max = Fraction(0)
    mp = Fraction(1)
    for i in range(1, n + 1):
        xmax = max(abs(ranges[i][0]), abs(ranges[i][-1]))
        e_max += i * xmax * mp
        mp *= m
    e_max *= r
    slack = int(e_max * qn) + 1 if r else 0

    def scan_best() -> int | None:
        best = None
        for combo in itertools.product(*low_vals):
            av = sum(combo)
            j = bisect_left(b_sorted, -av)
            if j > 0:
                d = -(av + b_sorted[j - 1])  # positive since b < -av
                if best is None or d < best:
                    best = d
            jj = j
            while jj < nb and b_sorted[jj] == -av:
                jj += 1
            if jj < nb:
                d = av + b_sorted[jj]
                if best is None or d < best:
                    best = d
        return best

    best_abs = scan_best()
    if best_abs is None:
        raise IndeterminateError("no usable candidate in the search box")

    class_ok = _class_test(variant, n)
    thresh = best_abs + slack
    skipped = 0
    while True:
        candidates = _collect(low_vals, low_coeffs, b_sorted, thresh)
        if candidates is None:
            raise BoxTooLargeError("candidate window exceeded the collection cap")
        needed = {bv for _, _, bv in candidates}
        b_tuples = _resolve(high_vals, high_coeffs, needed)
        winner = None
        first_pass_abs = None
        for abs_sum, low_tuple, bv in sorted(
            candidates, key=lambda t: (t[0], t[1], b_tuples[t[2]])
        ):
            if first_pass_abs is not None and abs_sum > first_pass_abs + slack:
                break
            poly = IntPolynomial(low_tuple + b_tuples[bv])
            if not class_ok(poly):
                continue
            base = Fraction(abs_sum, qn)
            if r:
                e_poly = _widening(poly, a, r)
                lo, hi = base - e_poly, base + e_poly
                if lo <= 0:
                    skipped += 1
                    continue
            else:
                lo = hi = base
            if first_pass_abs is None:
                first_pass_abs = abs_sum
            if winner is None or (hi, poly.sort_key()) < (winner[1], winner[0].sort_key()):
                winner = (poly, hi, lo)
        if winner is not None:
            poly, hi, lo = winner
            value = -_log_fraction(hi) / math.log(X)
            return ExponentEstimate(
                kind=_KIND_OF_VARIANT[variant],
                n=n,
                X=X,
                value=value,
                witness_poly=poly,
                interval_lo=lo,
                interval_hi=hi,
                skipped_uncertifiable=skipped,
            )
        # nothing in class (or nothing certifiable) within the window: widen
        max_abs = sum(
            max(abs(v[0]), abs(v[-1])) for v in itertools.chain(low_vals, high_vals)
        )
        if thresh >= max_abs:
            raise IndeterminateError(
                "no candidate in the class has a certified nonzero value"
            )
        thresh = max(thresh * 8, 8)


def _widening(poly: IntPolynomial, a: Fraction, r: Fraction) -> Fraction:
    m = abs(a) + r
    acc = Fraction(0)
    mp = Fraction(1)
    for i, c in enumerate(poly.coeffs):
        if i >= 1:
            acc += i * abs(c) * mp
            mp *= m
    return acc * r


def _collect(low_vals, low_coeffs, b_sorted, thresh):
    """All (abs_sum, low_coeff_tuple, b_value) with 0 < |low + b| <= thresh."""
    nb = len(b_sorted)
    out = []
    for idx_combo in itertools.product(*(range(len(v)) for v in low_vals)):
        av = 0
        for vals, i in zip(low_vals, idx_combo):
            av += vals[i]
        j = bisect_left(b_sorted, -av)
        lo_t = None
        jj = j - 1
        while jj >= 0:
            s = -(av + b_sorted[jj])
            if s > thresh:
                break
            if lo_t is None:
                lo_t = tuple(rng[i] for rng, i in zip(low_coeffs, idx_combo))
            out.append((s, lo_t, b_sorted[jj]))
            jj -= 1
        jj = j
        while jj < nb and b_sorted[jj] == -av:
            jj += 1
        while jj < nb:
            s = av + b_sorted[jj]
            if s > thresh:
                break
            if lo_t is None:
                lo_t = tuple(rng[i] for rng, i in zip(low_coeffs, idx_combo))
            out.append((s, lo_t, b_sorted[jj]))
            jj += 1
        if len(out) > _CANDIDATE_CAP:
            return None
    return out


def _resolve(high_vals, high_coeffs, needed: set) -> dict:
    """Minimal-coefficient tuple for each needed upper-half value."""
    found: dict = {}
    if not needed:
        return found
    for idx_combo in itertools.product(*(range(len(v)) for v in high_vals)):
        bv = 0
        for vals, i in zip(high_vals, idx_combo):
            bv += vals[i]
        if bv in needed:
            tup = tuple(rng[i] for rng, i in zip(high_coeffs, idx_combo))
            if bv not in found or tup < found[bv]:
                found[bv] = tup
    return found


def estimate_lambda(xi: RationalWitness, n: int, X: int) -> ExponentEstimate:
    """Best integer x in [1, X] minimizing max_i ||x * xi^i||, reported as
    value = -log(max_i ||x xi^i||) / log X with certified widening."""
    if X < 2:
        raise ValueError("X must be at least 2")
    if X > 10**7:
        raise BoxTooLargeError("X above the desk-scale cap 1e7")
    if n < 1:
        raise ValueError("n must be at least 1")
    a, r = xi.approximant, xi.radius
    p, q = a.numerator, a.denominator
    qpow = [q**i for i in range(n + 1)]
    ppow = [p**i % qpow[i] if qpow[i] > 1 else 0 for i in range(n + 1)]
    # per-unit-x widening of x*xi^i
    errs = []
    m = abs(a) + r
    for i in range(1, n + 1):
        errs.append(r * i * m ** (i - 1))
    err_f = [float(e) for e in errs]

    best_x = None
    best_f = None
    shortlist = []
    for x in range(1, X + 1):
        worst = 0.0
        for i in range(1, n + 1):
            qi = qpow[i]
            rem = x * ppow[i] % qi
            dist = rem if 2 * rem <= qi else qi - rem
            v = dist / qi + x * err_f[i - 1]
            if v > worst:
                worst = v
        if best_f is None or worst < best_f:
            best_f = worst
            best_x = x
    # exact re-evaluation of a float-near-optimal shortlist
    cutoff = best_f * (1 + 1e-9) + 1e-300
    for x in range(1, X + 1):
        worst = 0.0
        for i in range(1, n + 1):
            qi = qpow[i]
            rem = x * ppow[i] % qi
            dist = rem if 2 * rem <= qi else qi - rem
            v = dist / qi + x * err_f[i - 1]
            if v > worst:
                worst = v
        if worst <= cutoff:
            shortlist.append(x)

    winner = None
    skipped = 0
    for x in shortlist:
        hi = Fraction(0)
        lo = Fraction(0)
        for i in range(1, n + 1):
            qi = qpow[i]
            rem = x * ppow[i] % qi
            dist = Fraction(rem if 2 * rem <= qi else qi - rem, qi)
            e = x * errs[i - 1]
            hi_i = min(Fraction(1, 2), dist + e)
            lo_i = max(Fraction(0), dist - e)
            if hi_i > hi:
                hi = hi_i
            if lo_i > lo:
                lo = lo_i
        if hi == 0:
            skipped += 1  # exact rational degeneracy; cannot take log
            continue
        if winner is None or (hi, x) < (winner[1], winner[2]):
            winner = (lo, hi, x)
    if winner is None:
        raise IndeterminateError("all candidates degenerate at this witness")
    lo, hi, x = winner
    value = -_log_fraction(hi) / math.log(X)
    return ExponentEstimate(
        kind="lambda",
        n=n,
        X=X,
        value=value,
        witness_x=x,
        interval_lo=lo,
        interval_hi=hi,
        skipped_uncertifiable=skipped,
    )
