"""Dense univariate integer polynomials with exact arithmetic.

A polynomial is stored as a tuple of arbitrary-precision integer
coefficients, index i holding the coefficient of T^i.  The tuple carries
no trailing zeros; the zero polynomial is the empty tuple.  Values are
immutable, hashable and safe to share across workers.
"""
from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from math import gcd as int_gcd


@dataclasses.dataclass(init=False, frozen=True)
class IntPolynomial:
    """Integer polynomial, low-to-high dense coefficients.

    >>> IntPolynomial([-1, 0, 4])          # 4T^2 - 1
    IntPolynomial((-1, 0, 4))
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "IntPolynomial":
        return IntPolynomial(())

    @staticmethod
    def constant(c: int) -> "IntPolynomial":
        return IntPolynomial((c,))

    @staticmethod
    def monomial(coeff: int, power: int) -> "IntPolynomial":
        """coeff * T^power"""
        return IntPolynomial((0,) * power + (coeff,))

    @staticmethod
    def variable() -> "IntPolynomial":
        return IntPolynomial((0, 1))

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def height(self) -> int:
        """Maximum modulus of the coefficients (naive height); 0 for the zero polynomial."""
        return max((abs(c) for c in self.coeffs), default=0)

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_coeff(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def trailing_valuation(self) -> int:
        """Largest k with T^k dividing the polynomial (0 for nonzero constant term)."""
        if not self.coeffs:
            raise ValueError("zero polynomial")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def sort_key(self):
        """Canonical ordering key: by degree, then coefficient sequence."""
        return (self.degree, self.coeffs)

    # -- ring arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return IntPolynomial(
            a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return IntPolynomial(
            a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPolynomial(())
            return IntPolynomial(c * other for c in self.coeffs)
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_up(self, k: int) -> "IntPolynomial":
        """Multiply by T^k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    # -- content / primitive part ------------------------------------------

    def content(self) -> int:
        """GCD of the coefficients (positive). Error on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("content of zero polynomial is undefined")
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, c)
            if g == 1:
                return 1
        return g

    def primitive_part(self) -> "IntPolynomial":
        """self / content, leading-coefficient sign preserved."""
        g = self.content()
        if g == 1:
            return self
        return IntPolynomial(c // g for c in self.coeffs)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x):
        """Exact Horner evaluation at an int or Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scaled_value(self, num: int, den: int) -> int:
        """den^deg * P(num/den) as an exact integer (den != 0)."""
        if not self.coeffs:
            return 0
        acc = 0
        dpow = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * dpow
            dpow *= den
        # dpow overshoots by one factor of den after the loop
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __repr__(self):
        return f"IntPolynomial({self.coeffs!r})"


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPolynomial")


# -- division --------------------------------------------------------------


def pseudo_divmod(f: IntPolynomial, g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Pseudo-division: lc(g)^(deg f - deg g + 1) * f = q*g + r with deg r < deg g."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    df, dg = f.degree, g.degree
    if df < dg:
        return IntPolynomial(()), f
    lg = g.leading()
    q = [0] * (df - dg + 1)
    r = list(f.coeffs)
    for k in range(df - dg, -1, -1):
        coef = r[dg + k]
        # scale everything by lg, then cancel the leading term with coef * g
        for i in range(len(q)):
            q[i] *= lg
        q[k] = coef
        for i in range(len(r)):
            r[i] *= lg
        for i in range(dg + 1):
            r[i + k] -= coef * g.coeffs[i]
    return IntPolynomial(q), IntPolynomial(r[:dg])


def try_exact_div(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial | None:
    """Quotient f/g over Z if g divides f exactly, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    df, dg = f.degree, g.degree
    if df < dg:
        return None
    lg = g.leading()
    r = list(f.coeffs)
    q = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        coef = r[dg + k]
        if coef % lg:
            return None
        c = coef // lg
        q[k] = c
        if c:
            for i in range(dg + 1):
                r[i + k] -= c * g.coeffs[i]
    if any(r[:dg]):
        return None
    return IntPolynomial(q)


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive GCD over Q, normalized to positive leading coefficient.

    Returns the constant polynomial 1 exactly when p, q are coprime.
    Computed by a primitive Euclidean pseudo-remainder sequence, which
    keeps intermediate coefficients from blowing up at these degrees.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        g = a.primitive_part()
        return g if g.leading() > 0 else -g
    a = a.primitive_part()
    b = b.primitive_part()
    while not b.is_zero():
        _, r = pseudo_divmod(a, b)
        a, b = b, (r if r.is_zero() else r.primitive_part())
    return a if a.leading() > 0 else -a


def is_coprime(p: IntPolynomial, q: IntPolynomial) -> bool:
    """True iff gcd(p, q) is constant (no common non-constant factor)."""
    return poly_gcd(p, q).degree == 0


# -- Moebius conjugation -----------------------------------------------------


@dataclasses.dataclass(frozen=True)
class MobiusMap:
    """Integer fractional-linear map T -> (a*T + b) / (c*T + d), det != 0."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.determinant() == 0:
            raise ValueError("Moebius map must have nonzero determinant")

    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def inverse(self) -> "MobiusMap":
        """Inverse up to the determinant scaling."""
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)


def mobius_conjugate(p: IntPolynomial, m: MobiusMap, n: int) -> IntPolynomial:
    """(c*T + d)^n * p((a*T + b)/(c*T + d)), expanded exactly; requires n >= deg p."""
    if n < p.degree:
        raise ValueError(f"degree bound {n} below deg(p) = {p.degree}")
    num = IntPolynomial((m.b, m.a))
    den = IntPolynomial((m.d, m.c))
    out = IntPolynomial(())
    num_pow = IntPolynomial((1,))
    den_pows = [IntPolynomial((1,))]
    for _ in range(n):
        den_pows.append(den_pows[-1] * den)
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + num_pow * den_pows[n - i] * c
        num_pow = num_pow * num
    return out


# -- canonical text format ----------------------------------------------------


def to_json_coeffs(p: IntPolynomial) -> list[str]:
    """Canonical CLI form: list of decimal strings, index = exponent."""
    return [str(c) for c in p.coeffs]


def from_json_coeffs(items) -> IntPolynomial:
    return IntPolynomial(int(s) for s in items)


def evaluate_rational(p: IntPolynomial, x: Fraction) -> Fraction:
    """Exact rational value p(x)."""
    return Fraction(p.evaluate(Fraction(x)))
