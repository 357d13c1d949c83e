"""Elementary arithmetic functions: divisor counts, primes, primorials,
and the divisor-weighted reducibility budgets and shift-bound formulas.

All logarithms are natural.
"""
from __future__ import annotations

import dataclasses
import math

# Factorization by trial division up to this bound, then a deterministic
# Miller-Rabin test on the cofactor; inputs whose cofactor is a composite
# above the trial range are rejected rather than silently slow.
_TRIAL_BOUND = 10**6
_INPUT_BOUND = 10**24

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as (prime, exponent) pairs, ascending."""
    if n == 0:
        raise ValueError("cannot factorize 0")
    n = abs(n)
    if n > _INPUT_BOUND:
        raise ValueError(f"input above desk-scale bound {_INPUT_BOUND}")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 7
    # wheel over residues coprime to 30
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= _TRIAL_BOUND:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += steps[i]
        i = (i + 1) % 8
    if n > 1:
        # cofactor <= trial_bound**2 with no small factor is necessarily prime
        if n > _TRIAL_BOUND * _TRIAL_BOUND and not is_prime(n):
            raise ValueError("composite cofactor beyond the trial range at desk scale")
        out.append((n, 1))
    return out


def tau(n: int) -> int:
    """Number of positive divisors of |n|; n must be nonzero."""
    if n == 0:
        raise ValueError("tau(0) is undefined")
    t = 1
    for _, e in factorize(n):
        t *= e + 1
    return t


def omega(n: int) -> int:
    """Number of distinct prime divisors of |n|; n must be nonzero."""
    if n == 0:
        raise ValueError("omega(0) is undefined")
    return len(factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of |n|, ascending."""
    if n == 0:
        raise ValueError("divisors of 0")
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def primes_up_to(x: int) -> list[int]:
    """All primes <= x, ascending (sieve of Eratosthenes)."""
    if x < 2:
        return []
    sieve = bytearray(b"\x01") * (x + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((x - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def primorial(k: int) -> int:
    """Product of the first k primes (k >= 1)."""
    if k < 1:
        raise ValueError("primorial requires k >= 1")
    # overshoot: p_k < k (ln k + ln ln k) for k >= 6
    bound = 15 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 10
    ps = primes_up_to(bound)
    while len(ps) < k:
        bound *= 2
        ps = primes_up_to(bound)
    out = 1
    for p in ps[:k]:
        out *= p
    return out


@dataclasses.dataclass(frozen=True)
class BoundInputs:
    """Leading coefficient of P, constant coefficient of Q, height parameter."""

    cn: int
    d0: int
    H: float

    def __post_init__(self):
        if self.cn == 0 or self.d0 == 0:
            raise ValueError("cn and d0 must be nonzero")
        if not self.H > 1:
            raise ValueError("H must exceed 1")


def gamma_bounds(b: BoundInputs) -> tuple[float, float | None]:
    """Reducibility budgets tau(cn)*tau(d0)*log H and the same over log log H.

    The second value is None when H <= e (log log H would be <= 0).
    """
    t = tau(b.cn) * tau(b.d0)
    gamma = t * math.log(b.H)
    if b.H > math.e:
        gamma_prime = t * math.log(b.H) / math.log(math.log(b.H))
    else:
        gamma_prime = None
    return gamma, gamma_prime


def gyory_log_bound(n: int, w: int) -> float:
    """log of the Gyory-Evertse shift bound: (w+1)*log(w+2)*(2^17 n)^(n^3).

    Returns math.inf when the value exceeds float range (n >= 4 already
    overflows for any w; desk-scale comparisons use n = 2, 3).
    """
    if n < 2:
        raise ValueError("degree must be >= 2")
    if w < 0:
        raise ValueError("omega value must be >= 0")
    factor = (w + 1) * math.log(w + 2)
    log_power = n**3 * math.log((1 << 17) * n)
    if log_power + math.log(max(factor, 1e-300)) > 708:  # exp overflow threshold
        return math.inf
    return factor * math.exp(log_power)


def omega_asymptotic_check(n: int) -> float:
    """Ratio omega(N) * log log |N| / log |N|; requires |N| >= 16."""
    if abs(n) < 16:
        raise ValueError("requires |N| >= 16 so log log is positive")
    ln = math.log(abs(n))
    return omega(n) * math.log(ln) / ln
