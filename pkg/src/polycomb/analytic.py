"""Certified numerical layer: complex root disks, exact evaluation at a
rational witness, root-gap thresholds, and the value/root inequality checks.

Root refinement runs in mpmath at software-controlled precision, but every
certificate is then re-derived in exact rational arithmetic: disk radii come
from the residual inclusion bound deg * |p(z)| / |p'(z)| evaluated exactly at
a rationalized center, and all threshold comparisons are three-valued
(TRUE / FALSE / INDETERMINATE) rather than silently rounded.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from fractions import Fraction
from math import isqrt

import mpmath
from mpmath.libmp import to_rational

from .polynomial import IntPolynomial, is_coprime
from .factorization import factor, _log_fraction


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"

    def __bool__(self):  # pragma: no cover - guard against accidental truthiness
        raise TypeError("Verdict is three-valued; compare explicitly")


class IndeterminateError(RuntimeError):
    """Raised when certified intervals straddle a decision threshold."""


@dataclasses.dataclass(frozen=True)
class RationalWitness:
    """A real (or complex) number given as exact rational approximant plus a
    certified error radius: |xi - approximant| <= radius, radius < 1."""

    approximant: Fraction
    radius: Fraction = Fraction(0)
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "approximant", Fraction(self.approximant))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius < 0 or self.radius >= 1:
            raise ValueError("witness radius must lie in [0, 1)")


@dataclasses.dataclass(frozen=True)
class RootDisk:
    """Complex disk certified to contain at least one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    def center_abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_exact(self) -> bool:
        return self.radius == 0

    def to_json(self) -> dict:
        return {
            "re": str(self.re),
            "im": str(self.im),
            "radius": str(self.radius),
            "re_float": float(self.re),
            "im_float": float(self.im),
            "radius_float": float(self.radius),
        }


@dataclasses.dataclass(frozen=True)
class RootSet:
    disks: tuple[RootDisk, ...]
    precision: int
    converged: bool
    iterations: int

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "converged": self.converged,
            "iterations": self.iterations,
            "disks": [d.to_json() for d in self.disks],
        }


# -- exact square-root bounds -------------------------------------------------


def sqrt_upper(x: Fraction) -> Fraction:
    """Rational upper bound for sqrt(x), x >= 0; exact on perfect squares."""
    if x < 0:
        raise ValueError("negative radicand")
    n, d = x.numerator, x.denominator
    r = isqrt(n * d)
    return Fraction(r, d) if r * r == n * d else Fraction(r + 1, d)


def sqrt_lower(x: Fraction) -> Fraction:
    """Rational lower bound for sqrt(x), x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    n, d = x.numerator, x.denominator
    return Fraction(isqrt(n * d), d)


def _mpf_to_fraction(x) -> Fraction:
    p, q = to_rational(x._mpf_)
    return Fraction(int(p), int(q))


# -- root finding --------------------------------------------------------------

_DEFAULT_PRECISION = 128
_ABERTH_MAX_ITER = 120


def _eval_complex(f: IntPolynomial, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact evaluation at re + im*i; returns (real, imag) parts."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f.coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _aberth_approximations(g: IntPolynomial, workprec: int):
    """Aberth-Ehrlich simultaneous iteration; returns (points, iterations)."""
    n = g.degree
    with mpmath.workprec(workprec):
        cs = [mpmath.mpf(c) for c in g.coeffs]
        dcs = [mpmath.mpf(i * c) for i, c in enumerate(g.coeffs)][1:]
        lead = abs(cs[-1])
        cauchy = 1 + max(abs(c) for c in cs[:-1]) / lead if n >= 1 else mpmath.mpf(1)
        radius0 = cauchy * mpmath.mpf("0.7")
        z = [
            radius0 * mpmath.exp(mpmath.mpc(0, 2 * mpmath.pi * k / n + mpmath.mpf("0.4")))
            for k in range(n)
        ]
        tol = mpmath.mpf(2) ** (-workprec + 8)
        iterations = 0
        for _ in range(_ABERTH_MAX_ITER):
            iterations += 1
            max_step = mpmath.mpf(0)
            for j in range(n):
                zj = z[j]
                pv = cs[-1]
                for c in reversed(cs[:-1]):
                    pv = pv * zj + c
                dv = dcs[-1]
                for c in reversed(dcs[:-1]):
                    dv = dv * zj + c
                if dv == 0:
                    z[j] = zj + tol * (1 + abs(zj))
                    max_step = 1 + max_step
                    continue
                w = pv / dv
                s = mpmath.mpc(0)
                for k in range(n):
                    if k != j:
                        s += 1 / (zj - z[k])
                denom = 1 - w * s
                step = w if denom == 0 else w / denom
                z[j] = zj - step
                if abs(step) > max_step:
                    max_step = abs(step)
            if max_step < tol * (1 + max(abs(v) for v in z)):
                break
        return z, iterations


def _certify_disk(g: IntPolynomial, z, workprec: int) -> RootDisk:
    """Exact residual disk deg * |g(c)/g'(c)| around the rationalized center."""
    re = _mpf_to_fraction(z.real)
    im = _mpf_to_fraction(z.imag)
    vr, vi = _eval_complex(g, re, im)
    dr, di = _eval_complex(g.derivative(), re, im)
    num = vr * vr + vi * vi
    den = dr * dr + di * di
    if den == 0:
        return RootDisk(re, im, Fraction(1))  # hopeless center; forces a retry
    n = g.degree
    return RootDisk(re, im, sqrt_upper(Fraction(n * n) * num / den))


def roots(f: IntPolynomial, precision: int | None = None) -> RootSet:
    """All complex roots of f as certified disks (counted with multiplicity).

    Refinement stops when every disk radius is below 2**(-precision/2); if the
    iteration cap is hit first the result is returned flagged (converged=False).
    """
    if f.is_zero() or f.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    if precision is None:
        precision = _DEFAULT_PRECISION
    target = Fraction(1, 1 << (precision // 2 + 1))
    disks: list[RootDisk] = []
    total_iters = 0
    converged = True
    for g, mult in factor(f).factors:
        if g.degree == 1:
            root = Fraction(-g.coeffs[0], g.coeffs[1])
            disks.extend([RootDisk(root, Fraction(0), Fraction(0))] * mult)
            continue
        best: list[RootDisk] | None = None
        workprec = max(64, precision + 16)
        for _ in range(4):
            approx, iters = _aberth_approximations(g, workprec)
            total_iters += iters
            cand = [_certify_disk(g, z, workprec) for z in approx]
            if best is None or max(d.radius for d in cand) < max(d.radius for d in best):
                best = cand
            if all(d.radius < target for d in cand):
                break
            workprec *= 2
        else:
            converged = False
        for d in best:
            disks.extend([d] * mult)
    disks.sort(key=lambda d: (d.re, d.im, d.radius))
    return RootSet(tuple(disks), precision, converged, total_iters)


# -- root gaps and proximity thresholds ----------------------------------------


@dataclasses.dataclass(frozen=True)
class GapResult:
    lo: Fraction
    hi: Fraction
    disk_a: RootDisk
    disk_b: RootDisk


def _disk_distance(a: RootDisk, b: RootDisk) -> tuple[Fraction, Fraction]:
    dr = a.re - b.re
    di = a.im - b.im
    dsq = dr * dr + di * di
    lo = sqrt_lower(dsq) - a.radius - b.radius
    hi = sqrt_upper(dsq) + a.radius + b.radius
    return (max(Fraction(0), lo), hi)


def min_root_gap(
    f: IntPolynomial, g: IntPolynomial, precision: int | None = None
) -> GapResult:
    """Certified interval for the minimal |alpha - beta| over root pairs.

    Symmetric in its arguments and invariant under scalar multiplication.
    """
    ra = roots(f, precision)
    rb = roots(g, precision)
    best_lo = None
    best_hi = None
    best_pair = None
    for da in ra.disks:
        for db in rb.disks:
            lo, hi = _disk_distance(da, db)
            if best_lo is None or lo < best_lo:
                best_lo = lo
            if best_hi is None or hi < best_hi:
                best_hi = hi
                best_pair = (da, db)
    return GapResult(best_lo, best_hi, best_pair[0], best_pair[1])


def kappa_threshold(n: int) -> int | None:
    """Root-gap exponent for the prime-combination criterion; defined for n >= 4."""
    return 2 * n - 6 if n >= 4 else None


def theta_threshold(n: int) -> int | None:
    """Root-gap exponent for the coprime-pair criterion; defined for n >= 2."""
    if n < 2:
        return None
    return 1 if n == 2 else 2 * n - 4


@dataclasses.dataclass(frozen=True)
class ProximityThresholds:
    n: int
    kappa: int | None
    theta: int | None

    @staticmethod
    def for_degree(n: int) -> "ProximityThresholds":
        return ProximityThresholds(n=n, kappa=kappa_threshold(n), theta=theta_threshold(n))


def compare_interval(lo: Fraction, hi: Fraction, threshold: Fraction) -> Verdict:
    """Is the certified quantity <= threshold?"""
    if hi <= threshold:
        return Verdict.TRUE
    if lo > threshold:
        return Verdict.FALSE
    return Verdict.INDETERMINATE


def power_threshold(H: float, exponent: float) -> Fraction:
    """H**(-exponent) as an exact Fraction of the float evaluation."""
    if H <= 1:
        raise ValueError("H must exceed 1")
    return Fraction(math.exp(-exponent * math.log(H)))


# -- witness evaluation ----------------------------------------------------------


def evaluate_at_witness(f: IntPolynomial, xi: RationalWitness) -> tuple[Fraction, Fraction]:
    """Certified interval [lo, hi] for |f(xi)|.

    Exact |f(approximant)| widened by the mean-value bound
    radius * sum_i i*|c_i|*(|a|+radius)**(i-1), which dominates every
    higher-order term; valid for complex xi within the radius as well.
    """
    a, r = xi.approximant, xi.radius
    v = abs(Fraction(f.evaluate(a)))
    if r == 0 or f.degree < 1:
        return (v, v)
    m = abs(a) + r
    deriv_bound = Fraction(0)
    mp = Fraction(1)  # m**(i-1) when the i-th term is added
    for i, c in enumerate(f.coeffs):
        if i >= 1:
            deriv_bound += i * abs(c) * mp
            mp *= m
    err = r * deriv_bound
    lo = v - err
    return (max(Fraction(0), lo), v + err)


def verify_pop(f: IntPolynomial, alpha: RootDisk, xi: RationalWitness) -> Verdict:
    """Check |f(xi)| <= n(n+1) * max(1, (|xi|+1)**n) * H(f) * |xi - alpha|."""
    n = f.degree
    if n < 1:
        raise ValueError("degree >= 1 required")
    v_lo, v_hi = evaluate_at_witness(f, xi)
    a, r = xi.approximant, xi.radius
    xi_abs_lo = max(Fraction(0), abs(a) - r)
    xi_abs_hi = abs(a) + r
    xi_disk = RootDisk(a, Fraction(0), r)
    d_lo, d_hi = _disk_distance(xi_disk, alpha)
    h = f.height()
    scale = Fraction(n * (n + 1) * h)
    bound_lo = scale * max(Fraction(1), (xi_abs_lo + 1) ** n) * d_lo
    bound_hi = scale * max(Fraction(1), (xi_abs_hi + 1) ** n) * d_hi
    if v_hi <= bound_lo:
        return Verdict.TRUE
    if v_lo > bound_hi:
        return Verdict.FALSE
    return Verdict.INDETERMINATE


def midpoint_witness(alpha: RootDisk, beta: RootDisk) -> RationalWitness:
    """Witness at the midpoint of two root disks.

    Real parts average exactly; imaginary magnitudes fold into the radius, so
    the certified ball still contains the complex midpoint.
    """
    approx = (alpha.re + beta.re) / 2
    radius = (alpha.radius + beta.radius) / 2 + (abs(alpha.im) + abs(beta.im)) / 2
    return RationalWitness(approx, radius, "midpoint of certified root disks")


def liouville_floor(
    u1: IntPolynomial,
    u2: IntPolynomial,
    xi: RationalWitness,
    c: Fraction = Fraction(1, 10**6),
) -> Verdict:
    """Check max(|u1(xi)|, |u2(xi)|) >= c * H**(-d1-d2+1) for coprime u1, u2."""
    d1, d2 = u1.degree, u2.degree
    if d1 < 1 or d2 < 1:
        raise ValueError("degrees must be >= 1")
    if not is_coprime(u1, u2):
        raise ValueError("polynomials share a non-constant factor")
    H = max(u1.height(), u2.height())
    threshold = Fraction(c) * Fraction(1, H ** (d1 + d2 - 1))
    lo1, hi1 = evaluate_at_witness(u1, xi)
    lo2, hi2 = evaluate_at_witness(u2, xi)
    if max(lo1, lo2) >= threshold:
        return Verdict.TRUE
    if max(hi1, hi2) < threshold:
        return Verdict.FALSE
    return Verdict.INDETERMINATE


# -- censuses over small-valued polynomials ---------------------------------------


@dataclasses.dataclass(frozen=True)
class CoprimeCensus:
    count: int
    polys: tuple[IntPolynomial, ...]
    qualifying: int
    indeterminate: int


def small_coprime_census(
    xi: RationalWitness, d: int, mu: float, H: int
) -> CoprimeCensus:
    """Maximal pairwise-coprime family among non-constant polynomials of degree
    <= d, height <= H, with |Q(xi)| <= H(Q)**(-mu).

    Enumerates the top coefficients exhaustively; for each, only the integers
    adjacent to the real optimum are possible constant terms since the filter
    forces |Q(xi)| < 1/2.  Greedy extraction runs by increasing height with
    canonical tie-breaking.
    """
    if not mu > 2 * d - 1:
        raise ValueError("mu must exceed 2d - 1")
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    box = 3 * (2 * H + 1) ** d
    if box > 10**8:
        raise ValueError(f"search box {box} above the 1e8 candidate guard")
    a = xi.approximant
    qualifying: list[IntPolynomial] = []
    indeterminate = 0

    def consider(q: IntPolynomial):
        nonlocal indeterminate
        hq = q.height()
        if hq == 0 or hq > H:
            return
        bound = Fraction(math.exp(-mu * math.log(hq))) if hq > 1 else Fraction(1)
        lo, hi = evaluate_at_witness(q, xi)
        if hi <= bound:
            qualifying.append(q)
        elif lo <= bound:
            indeterminate += 1

    for top in _iter_boxes(d, H):
        if not any(top):
            continue
        # the filter needs c_0 within 1 of the real optimum -sum c_i a^i
        s = Fraction(0)
        for c in reversed(top):
            s = s * a + c
        s *= a
        center = round(-s)
        for c0 in (center - 1, center, center + 1):
            if abs(c0) <= H:
                consider(IntPolynomial((c0,) + top))

    qualifying.sort(key=lambda q: (q.height(), q.sort_key()))
    chosen: list[IntPolynomial] = []
    for q in qualifying:
        if all(is_coprime(q, c) for c in chosen):
            chosen.append(q)
    return CoprimeCensus(
        count=len(chosen),
        polys=tuple(chosen),
        qualifying=len(qualifying),
        indeterminate=indeterminate,
    )


def _iter_boxes(d: int, H: int):
    """All tuples (c_1, ..., c_d) with |c_i| <= H."""
    span = range(-H, H + 1)
    if d == 1:
        for c1 in span:
            yield (c1,)
    else:
        for rest in _iter_boxes(d - 1, H):
            for c in span:
                yield rest + (c,)


# -- two-polynomial root conclusion -------------------------------------------------


@dataclasses.dataclass(frozen=True)
class WbsReport:
    root: RootDisk
    owner: int  # 1 or 2
    distance_lo: Fraction
    distance_hi: Fraction
    achieved_exponent: float
    target_exponent: float


def wbs_root_report(
    p1: IntPolynomial,
    p2: IntPolynomial,
    xi: RationalWitness,
    eta: float,
    precision: int | None = None,
) -> WbsReport:
    """Nearest root to xi across two coprime polynomials both small at xi.

    Reports the achieved exponent -log|xi - alpha| / log H(P) - 1 against the
    target (3/2)eta - n + 1/2; no constant is asserted.
    """
    if not is_coprime(p1, p2):
        raise ValueError("polynomials share a non-constant factor")
    H = max(p1.height(), p2.height())
    bound = power_threshold(H, eta) if H > 1 else Fraction(1)
    for q in (p1, p2):
        lo, hi = evaluate_at_witness(q, xi)
        if hi <= bound:
            continue
        if lo > bound:
            raise ValueError("hypothesis |P(xi)| <= H**(-eta) fails")
        raise IndeterminateError("cannot certify the smallness hypothesis")
    n = max(p1.degree, p2.degree)
    xi_disk = RootDisk(xi.approximant, Fraction(0), xi.radius)
    best = None
    for owner, poly in ((1, p1), (2, p2)):
        for disk in roots(poly, precision).disks:
            lo, hi = _disk_distance(xi_disk, disk)
            if best is None or hi < best[3]:
                best = (owner, poly, disk, hi, lo)
    owner, poly, disk, hi, lo = best
    hp = poly.height()
    if hi == 0:
        achieved = math.inf
    elif hp <= 1:
        achieved = math.inf
    else:
        achieved = -_log_fraction(hi) / math.log(hp) - 1
    target = 1.5 * eta - n + 0.5
    return WbsReport(
        root=disk,
        owner=owner,
        distance_lo=lo,
        distance_hi=hi,
        achieved_exponent=achieved,
        target_exponent=target,
    )
