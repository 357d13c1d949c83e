import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycomb.polynomial import (
    IntPolynomial,
    MobiusMap,
    evaluate_rational,
    from_json_coeffs,
    mobius_conjugate,
    poly_gcd,
    pseudo_divmod,
    to_json_coeffs,
    try_exact_div,
)

P = IntPolynomial

small_polys = st.builds(
    P, st.lists(st.integers(min_value=-50, max_value=50), min_size=0, max_size=7)
)


def test_height_examples():
    assert P([-1, 0, 4]).height() == 4
    assert P([]).height() == 0
    assert P([7]).height() == 7


def test_canonical_zero_trimming():
    assert P([1, 2, 0, 0]).coeffs == (1, 2)
    assert P([0, 0]).is_zero()
    assert P([0, 0]).degree == -1


def test_ring_arithmetic_examples():
    assert P([1, 2]) * P([-1, 2]) == P([-1, 0, 4])
    p = P([3, 0, 5])
    assert p + P([]) == p
    assert P([0, 0, 1]) * 5 + P([-1, 0, -1]) == P([-1, 0, 4])


@given(small_polys, small_polys, small_polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


def test_content_and_primitive_part():
    p = P([6, -9, 12])
    assert p.content() == 3
    assert p.primitive_part() == P([2, -3, 4])
    q = P([2, -3, 4])
    assert q.content() == 1 and q.primitive_part() == q
    neg = P([-4])
    assert neg.content() == 4
    assert neg.primitive_part() == P([-1])


def test_content_of_zero_errors():
    with pytest.raises(ValueError):
        P([]).content()


def test_gcd_examples():
    assert poly_gcd(P([-1, 0, 1]), P([0, 1, 1])) == P([1, 1])
    assert poly_gcd(P([0, 0, 1]), P([-1, 0, -1])) == P([1])
    p = P([0, 2, -4])
    g = poly_gcd(p, p)
    assert g == P([0, -1, 2])  # primitive part up to sign, positive lead


def test_gcd_of_two_zeros_errors():
    with pytest.raises(ValueError):
        poly_gcd(P([]), P([]))


@settings(max_examples=300)
@given(small_polys, small_polys)
def test_gcd_divides_both(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = poly_gcd(a, b)
    assert g.leading() > 0
    for f in (a, b):
        if not f.is_zero():
            # g divides f exactly after clearing the content of f
            assert try_exact_div(f.primitive_part() * g.leading() ** f.degree, g) is not None


def test_gcd_detects_common_factor():
    a = P([1, 1]) * P([3, -2, 1])
    b = P([1, 1]) * P([5, 7])
    assert poly_gcd(a, b) == P([1, 1])


def test_pseudo_divmod_identity():
    rng = random.Random(17)
    for _ in range(500):
        f = P([rng.randint(-30, 30) for _ in range(rng.randint(1, 7))])
        g = P([rng.randint(-30, 30) for _ in range(rng.randint(1, 5))])
        if f.is_zero() or g.is_zero():
            continue
        q, r = pseudo_divmod(f, g)
        shift = f.degree - g.degree + 1
        lhs = f * g.leading() ** shift if shift > 0 else f
        assert lhs == q * g + r
        assert r.degree < g.degree


def test_mobius_examples():
    assert mobius_conjugate(P([3, 2, 1]), MobiusMap(0, 1, 1, 0), 2) == P([1, 2, 3])
    p = P([5, -3, 2])
    assert mobius_conjugate(p, MobiusMap.identity(), p.degree) == p
    assert mobius_conjugate(P([0, 0, 1]), MobiusMap(1, 1, 0, 1), 2) == P([1, 2, 1])


def test_mobius_errors():
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)  # determinant zero
    with pytest.raises(ValueError):
        mobius_conjugate(P([0, 0, 1]), MobiusMap.identity(), 1)


def test_mobius_inverse_recovers_primitive_part():
    rng = random.Random(5)
    unimodular = [MobiusMap(1, 1, 0, 1), MobiusMap(0, 1, 1, 0), MobiusMap(2, 1, 1, 1), MobiusMap(3, 2, 1, 1)]
    for _ in range(200):
        p = P([rng.randint(-9, 9) for _ in range(rng.randint(2, 5))])
        if p.is_zero() or p.degree < 1:
            continue
        m = rng.choice(unimodular)
        n = p.degree
        back = mobius_conjugate(mobius_conjugate(p, m, n), m.inverse(), n)
        got = back.primitive_part()
        want = p.primitive_part()
        assert got == want or got == -want


def test_evaluate_rational_examples():
    assert evaluate_rational(P([-1, 0, 4]), Fraction(1, 2)) == 0
    assert evaluate_rational(P([2, 0, 0, 1]), Fraction(0)) == 2
    assert evaluate_rational(P([0, 0, 1]), Fraction(3, 2)) == Fraction(9, 4)


def test_scaled_value_matches_evaluation():
    rng = random.Random(11)
    for _ in range(300):
        p = P([rng.randint(-99, 99) for _ in range(rng.randint(1, 6))])
        num, den = rng.randint(-30, 30), rng.randint(1, 30)
        if p.is_zero():
            continue
        assert Fraction(p.scaled_value(num, den), den**p.degree) == p.evaluate(
            Fraction(num, den)
        )


def test_derivative_examples_and_height_bound():
    assert P([2, 0, 0, 1]).derivative() == P([0, 0, 3])
    assert P([9]).derivative().is_zero()
    c, n = 7, 5
    mono = P([0] * n + [c])
    assert mono.derivative() == P([0] * (n - 1) + [n * c])
    rng = random.Random(23)
    for _ in range(500):
        p = P([rng.randint(-100, 100) for _ in range(rng.randint(2, 9))])
        if p.degree < 1:
            continue
        assert p.derivative().height() <= p.degree * p.height()


def test_gelfond_height_window():
    # two-sided multiplicativity of heights within 2**(2d) for degrees <= d
    rng = random.Random(31)
    for d in range(1, 9):
        window = 2 ** (2 * d)
        for _ in range(10_000):
            p = P([rng.randint(-1000, 1000) for _ in range(d + 1)])
            q = P([rng.randint(-1000, 1000) for _ in range(d + 1)])
            if p.is_zero() or q.is_zero():
                continue
            ratio = Fraction(p.height() * q.height(), (p * q).height())
            assert Fraction(1, window) <= ratio <= window


def test_json_round_trip():
    p = P([-1, 0, 4])
    assert to_json_coeffs(p) == ["-1", "0", "4"]
    assert from_json_coeffs(["-1", "0", "4"]) == p
    assert from_json_coeffs([]) == P([])
