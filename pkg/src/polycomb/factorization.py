"""Irreducibility testing and complete factorization over the integers.

Constant factors never count toward reducibility: a polynomial is
reducible exactly when it has a non-constant factor of smaller degree.
The pipeline is sign/content extraction, rational-root stripping,
a fast irreducibility certificate from factor-degree patterns modulo
several small primes, and (only when the certificate is inconclusive)
Hensel lifting with Mignotte-bounded subset recombination.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import math
import random

from .polynomial import IntPolynomial, poly_gcd, try_exact_div
from .arith import divisors, primes_up_to


@dataclasses.dataclass(frozen=True)
class Factorization:
    """sign * content * prod(factor^mult) == the factored polynomial.

    Every factor is primitive, irreducible over the integers, of degree
    >= 1 with positive leading coefficient; factors are sorted by
    (degree, coefficient sequence).
    """

    sign: int
    content: int
    factors: tuple[tuple[IntPolynomial, int], ...]

    def reconstruct(self) -> IntPolynomial:
        out = IntPolynomial((self.sign * self.content,))
        for f, m in self.factors:
            out = out * f**m
        return out

    def factor_degrees(self) -> list[int]:
        return sorted(d for f, m in self.factors for d in [f.degree] * m)

    def is_irreducible_shape(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "content": self.content,
            "factors": [
                {"poly": [str(c) for c in f.coeffs], "mult": m} for f, m in self.factors
            ],
        }


# ---------------------------------------------------------------------------
# dense polynomial arithmetic modulo m (lists low-to-high, trimmed)
# ---------------------------------------------------------------------------


def _gf_trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _gf_from_poly(f: IntPolynomial, m: int):
    return _gf_trim([c % m for c in f.coeffs])


def _gf_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _gf_trim(out)


def _gf_add(a, b, m):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % m
    return _gf_trim(out)


def _gf_sub(a, b, m):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % m
    return _gf_trim(out)


def _gf_mul_ground(a, c, m):
    c %= m
    return _gf_trim([x * c % m for x in a])


def _gf_divmod(a, b, m):
    """Division with remainder; the leading coefficient of b must be invertible mod m."""
    if not b:
        raise ZeroDivisionError("mod-m division by zero polynomial")
    inv = pow(b[-1], -1, m)
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], _gf_trim(a)
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = a[db + k] * inv % m
        q[k] = c
        if c:
            for i in range(db + 1):
                a[i + k] = (a[i + k] - c * b[i]) % m
    return _gf_trim(q), _gf_trim(a[:db])


def _gf_rem(a, b, m):
    return _gf_divmod(a, b, m)[1]


def _gf_monic(a, p):
    if not a:
        return a
    return _gf_mul_ground(a, pow(a[-1], -1, p), p)


def _gf_gcd(a, b, p):
    while b:
        a, b = b, _gf_rem(a, b, p)
    return _gf_monic(a, p)


def _gf_gcdex(a, b, p):
    """Extended Euclid mod p: returns (s, t) with s*a + t*b = 1; a, b must be coprime."""
    r0, r1 = _gf_trim([c % p for c in a]), _gf_trim([c % p for c in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    if len(r0) != 1:
        raise ValueError("polynomials not coprime mod p")
    inv = pow(r0[0], -1, p)
    return _gf_mul_ground(s0, inv, p), _gf_mul_ground(t0, inv, p)


def _gf_pow_mod(base, e, mod_poly, p):
    result = [1]
    base = _gf_rem(base, mod_poly, p)
    while e:
        if e & 1:
            result = _gf_rem(_gf_mul(result, base, p), mod_poly, p)
        base = _gf_rem(_gf_mul(base, base, p), mod_poly, p)
        e >>= 1
    return result


def _gf_deriv(a, p):
    return _gf_trim([i * c % p for i, c in enumerate(a)][1:])


def _gf_is_squarefree(a, p):
    return len(_gf_gcd(a, _gf_deriv(a, p), p)) == 1


def _gf_ddf(f, p):
    """Distinct-degree factorization of a monic squarefree f mod p.

    Returns [(product_of_factors, d)] for each factor degree d that occurs.
    """
    out = []
    x = [0, 1]
    h = x
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_pow_mod(h, p, v, p)
        g = _gf_gcd(_gf_sub(h, x, p), v, p)
        if len(g) > 1:
            out.append((g, d))
            v = _gf_divmod(v, g, p)[0]
            h = _gf_rem(h, v, p)
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _gf_edf(f, d, p, rng):
    """Equal-degree splitting (Cantor-Zassenhaus, odd p) of monic squarefree f
    whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        a = _gf_trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        g = _gf_gcd(a, f, p)
        if len(g) == 1:
            h = _gf_pow_mod(a, exponent, f, p)
            g = _gf_gcd(_gf_sub(h, [1], p), f, p)
        if 1 < len(g) < len(f):
            return _gf_edf(g, d, p, rng) + _gf_edf(_gf_divmod(f, g, p)[0], d, p, rng)


def _gf_factor_squarefree(f, p, seed):
    """Monic irreducible factors of monic squarefree f mod p (odd p), sorted."""
    rng = random.Random(seed)
    out = []
    for prod, d in _gf_ddf(f, p):
        out.extend(_gf_edf(prod, d, p, rng))
    return sorted(out, key=lambda g: (len(g), tuple(g)))


# ---------------------------------------------------------------------------
# degree-pattern irreducibility certificate
# ---------------------------------------------------------------------------

_CERT_PRIME_COUNT = 7  # usable primes examined before recombination kicks in


@functools.lru_cache(maxsize=300_000)
def _degree_mask(p: int, reduced: tuple[int, ...]) -> int | None:
    """Bitmask of attainable divisor degrees of f mod p, or None when f mod p
    is unusable (leading coefficient vanished or not squarefree)."""
    f = _gf_trim(list(reduced))
    if len(f) != len(reduced):
        return None
    if not _gf_is_squarefree(f, p):
        return None
    mask = 1
    for prod, d in _gf_ddf(_gf_monic(f, p), p):
        for _ in range((len(prod) - 1) // d):
            mask |= mask << d
    return mask


def _odd_primes():
    bound = 128
    while True:
        for p in primes_up_to(bound):
            if p > 2:
                yield p
        bound *= 4  # re-yields small primes; callers track what they saw


def _usable_primes(f: IntPolynomial):
    """Yields (p, attainable-degree bitmask) over odd primes not dividing lc(f)
    at which f stays squarefree; unbounded."""
    lc = f.leading()
    seen = set()
    for p in _odd_primes():
        if p in seen:
            continue
        seen.add(p)
        if lc % p == 0:
            continue
        mask = _degree_mask(p, tuple(c % p for c in f.coeffs))
        if mask is not None:
            yield p, mask


# ---------------------------------------------------------------------------
# Hensel lifting and Zassenhaus recombination
# ---------------------------------------------------------------------------


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
    to the same congruences mod m**2.  h is monic and stays monic."""
    M = m * m
    e = _gf_sub([c % M for c in f], _gf_mul(g, h, M), M)
    q, r = _gf_divmod(_gf_mul(s, e, M), h, M)
    G = _gf_add(_gf_add(g, _gf_mul(t, e, M), M), _gf_mul(q, g, M), M)
    H = _gf_add(h, r, M)
    b = _gf_sub(_gf_add(_gf_mul(s, G, M), _gf_mul(t, H, M), M), [1], M)
    c, d = _gf_divmod(_gf_mul(s, b, M), H, M)
    S = _gf_sub(s, d, M)
    T = _gf_sub(_gf_sub(t, _gf_mul(t, b, M), M), _gf_mul(c, G, M), M)
    return G, H, S, T


def _hensel_lift(p, f: IntPolynomial, factors, l):
    """Lift monic factors of f/lc(f) mod p to monic factors mod p**l."""
    r = len(factors)
    lc = f.leading()
    modulus = p**l
    if r == 1:
        inv = pow(lc % modulus, -1, modulus)
        return [_gf_trim([c * inv % modulus for c in f.coeffs])]
    k = r // 2
    g = [lc % p]
    for fac in factors[:k]:
        g = _gf_mul(g, fac, p)
    h = [1]
    for fac in factors[k:]:
        h = _gf_mul(h, fac, p)
    s, t = _gf_gcdex(g, h, p)
    m = p
    while m < modulus:
        g, h, s, t = _hensel_step(m, list(f.coeffs), g, h, s, t)
        m = m * m
    G = IntPolynomial(_centered(g, m))
    H = IntPolynomial(_centered(h, m))
    return _hensel_lift(p, G, factors[:k], l) + _hensel_lift(p, H, factors[k:], l)


def _centered(cs, q):
    half = q // 2
    out = []
    for c in cs:
        c %= q
        out.append(c - q if c > half else c)
    return out


def _mignotte_bound(f: IntPolynomial) -> int:
    """Upper bound for coefficients of lc(f)-scaled factors of f."""
    n = f.degree
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return (1 << n) * norm2 * abs(f.leading())


def _zassenhaus(f: IntPolynomial, p: int, modp_factors) -> list[IntPolynomial]:
    """Complete factorization of a primitive squarefree f (positive lead,
    no linear factors over Z, degree >= 4) from its factorization mod p."""
    bound = _mignotte_bound(f)
    l = 1
    while p**l <= 2 * bound:
        l += 1
    modulus = p**l
    lifted = _hensel_lift(p, f, modp_factors, l)

    result = []
    remaining = list(range(len(lifted)))
    current = f
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            lc = current.leading()
            const = lc
            for i in combo:
                const = const * lifted[i][0] % modulus
            if const > modulus // 2:
                const -= modulus
            if const == 0 or (lc * current.constant_coeff()) % const != 0:
                continue
            prod = [lc % modulus]
            for i in combo:
                prod = _gf_mul(prod, lifted[i], modulus)
            cand = IntPolynomial(_centered(prod, modulus)).primitive_part()
            if cand.leading() < 0:
                cand = -cand
            if cand.degree < 1:
                continue
            quot = try_exact_div(current, cand)
            if quot is not None:
                result.append(cand)
                current = quot.primitive_part()
                if current.leading() < 0:
                    current = -current
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if current.degree >= 1:
        result.append(current)
    return result


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _root_candidates(f: IntPolynomial):
    """Rational-root candidates (q, r) meaning root r/q, q > 0, gcd(q, r) = 1,
    with r dividing the lowest nonzero coefficient and q the leading one."""
    c0 = f.coeffs[f.trailing_valuation()]
    lc = f.leading()
    out = []
    for q in divisors(lc):
        for r in divisors(c0):
            if math.gcd(q, r) == 1:
                out.append((q, r))
                out.append((q, -r))
    return out


def linear_factors(f: IntPolynomial) -> list[IntPolynomial]:
    """All distinct primitive linear factors q*T - r of f, canonically sorted."""
    if f.is_zero() or f.degree < 1:
        raise ValueError("need a nonzero polynomial of degree >= 1")
    k = f.trailing_valuation()
    out = []
    if k > 0:
        out.append(IntPolynomial((0, 1)))
        f = IntPolynomial(f.coeffs[k:])
    if f.degree >= 1:
        for q, r in _root_candidates(f):
            if f.scaled_value(r, q) == 0:
                out.append(IntPolynomial((-r, q)))
    return sorted(out, key=lambda g: g.sort_key())


def _squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """Primitive squarefree part with positive leading coefficient.

    f must be primitive with nonzero constant term.
    """
    if f.degree <= 1:
        return f if f.leading() > 0 else -f
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        s = f
    else:
        s = try_exact_div(f, g)
        assert s is not None, "primitive gcd must divide its primitive input"
        s = s.primitive_part()
    return s if s.leading() > 0 else -s


def _stable_seed(f: IntPolynomial, p: int) -> int:
    h = 0
    for c in f.coeffs:
        h = (h * 1000003 + c) % (1 << 61)
    return h * 31 + p


def _factor_squarefree(s: IntPolynomial) -> list[IntPolynomial]:
    """Irreducible factors (each exactly once) of a primitive squarefree s
    with positive leading coefficient and nonzero constant term."""
    out = []
    if s.degree >= 1:
        for q, r in _root_candidates(s):
            if s.degree < 1:
                break
            if s.scaled_value(r, q) == 0:
                lin = IntPolynomial((-r, q))
                out.append(lin)
                s = try_exact_div(s, lin)
    if s.degree <= 0:
        return out
    if s.degree <= 3:
        out.append(s)
        return out

    proper = range(2, s.degree // 2 + 1)  # linear factors already excluded
    best = None
    for p, mask in itertools.islice(_usable_primes(s), _CERT_PRIME_COUNT):
        if not any(mask >> d & 1 for d in proper):
            out.append(s)
            return out
        facs = _gf_factor_squarefree(
            _gf_monic(_gf_from_poly(s, p), p), p, _stable_seed(s, p)
        )
        if len(facs) == 1:
            out.append(s)
            return out
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
    out.extend(_zassenhaus(s, best[0], best[1]))
    return out


def factor(f: IntPolynomial) -> Factorization:
    """Complete factorization into sign, content and primitive irreducible factors."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    sign = 1 if f.leading() > 0 else -1
    content = f.content()
    unit = sign * content
    work = IntPolynomial(c // unit for c in f.coeffs)
    parts: list[IntPolynomial] = []
    k = work.trailing_valuation()
    if k:
        parts.append(IntPolynomial((0, 1)))
        work = IntPolynomial(work.coeffs[k:])
    if work.degree >= 1:
        parts.extend(_factor_squarefree(_squarefree_part(work)))

    factors = []
    rest = work.shift_up(k)
    for part in sorted(set(parts), key=lambda g: g.sort_key()):
        mult = 0
        while True:
            quot = try_exact_div(rest, part)
            if quot is None:
                break
            rest = quot
            mult += 1
        factors.append((part, mult))
    if rest.degree != 0 or rest.coeffs[0] != 1:
        raise AssertionError(f"factor residue {rest!r} for input {f!r}")
    return Factorization(sign=sign, content=content, factors=tuple(factors))


def is_irreducible(f: IntPolynomial) -> bool:
    """True iff the primitive part of f has no factorization into two
    non-constant integer polynomials.  Content is ignored; degree-1
    polynomials are irreducible.  Errors on constants and zero."""
    if f.is_zero() or f.degree < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if f.degree == 1:
        return True
    if f.constant_coeff() == 0:
        return False  # T divides, degree >= 2
    w = f.primitive_part()
    if w.leading() < 0:
        w = -w
    for q, r in _root_candidates(w):
        if w.scaled_value(r, q) == 0:
            return False
    if w.degree <= 3:
        return True
    if poly_gcd(w, w.derivative()).degree > 0:
        return False
    proper = range(2, w.degree // 2 + 1)
    best = None
    for p, mask in itertools.islice(_usable_primes(w), _CERT_PRIME_COUNT):
        if not any(mask >> d & 1 for d in proper):
            return True
        facs = _gf_factor_squarefree(
            _gf_monic(_gf_from_poly(w, p), p), p, _stable_seed(w, p)
        )
        if len(facs) == 1:
            return True
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
    return len(_zassenhaus(w, best[0], best[1])) == 1


@dataclasses.dataclass(frozen=True)
class SmallValueFactor:
    factor: IntPolynomial
    exponent: float


def small_value_factor(f: IntPolynomial, xi, eta: float) -> SmallValueFactor:
    """Irreducible factor R of f maximizing -log|R(xi)| / log H(R).

    The caller guarantees |f(xi)| <= H(f)**(-eta); the achieved exponent is
    reported rather than asserted since no explicit constant is available.
    Exponents within 1e-9 of each other tie-break by canonical factor order.
    """
    from .analytic import evaluate_at_witness

    fac = factor(f)
    best = None
    for g, _ in fac.factors:
        lo, hi = evaluate_at_witness(g, xi)
        h = g.height()
        if h <= 1:
            expo = math.inf if hi < 1 else (-math.inf if lo > 1 else 0.0)
        elif hi == 0:
            expo = math.inf
        else:
            expo = -_log_fraction(hi) / math.log(h)
        if best is None or expo > best.exponent + 1e-9:
            best = SmallValueFactor(factor=g, exponent=expo)
    if best is None:
        raise ValueError("polynomial has no non-constant factors")
    return best


def _log_fraction(fr) -> float:
    num, den = fr.numerator, fr.denominator
    if num <= 0:
        raise ValueError("log of non-positive value")
    return _log_int(num) - _log_int(den)


def _log_int(n: int) -> float:
    b = n.bit_length()
    if b <= 900:
        return math.log(n)
    shift = b - 53
    return math.log(n >> shift) + shift * math.log(2)
