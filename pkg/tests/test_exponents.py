import math
import random
from fractions import Fraction

import pytest

from polycomb.polynomial import IntPolynomial
from polycomb.analytic import RationalWitness
from polycomb.exponents import (
    BoxTooLargeError,
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

from oracles import convergents, naive_estimate_w

P = IntPolynomial


def test_wirsing_exact_bound_values():
    assert wirsing_exact_bound(3) == 2.5
    assert abs(wirsing_exact_bound(4) - 3.1213) < 5e-5
    assert abs(wirsing_exact_bound(7) - 4.8423) < 5e-5
    assert wirsing_exact_bound(1) == 1.0
    for bad in (0, 8):
        with pytest.raises(ValueError):
            wirsing_exact_bound(bad)


def test_transfer_lower_bound():
    for n in range(1, 8):
        assert transfer_lower_bound(n, n) == n / 2 + 0.5
    assert transfer_lower_bound(3, 3) == 2.0
    with pytest.raises(ValueError):
        transfer_lower_bound(2.5, 3)


def test_reciprocal_lower_bound():
    golden = (math.sqrt(5) - 1) / 2
    assert abs(reciprocal_lower_bound(golden) - (math.sqrt(5) + 1) / 2) < 1e-12
    assert abs(reciprocal_lower_bound(1 / 3) - 3) < 1e-12
    assert reciprocal_lower_bound(1.0) == 1.0


def test_german_transfer():
    for n in range(1, 8):
        assert abs(german_transfer(n, n) - 1 / n) < 1e-12
    assert german_transfer(5.0, 1) == 1.0
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 7)
        w = n + rng.random() * 5
        lhs = reciprocal_lower_bound(german_transfer(w, n))
        assert abs(lhs - w / (w - n + 1)) < 1e-9


def test_uniform_quadratic_bound():
    assert uniform_quadratic_bound(2.0) == 2.0
    golden_sq = ((1 + math.sqrt(5)) / 2) ** 2
    assert uniform_quadratic_bound(golden_sq) > uniform_quadratic_bound(2.5) > 2
    with pytest.raises(ValueError):
        uniform_quadratic_bound(1.5)


def test_asymptotic_exact_bound():
    assert abs(asymptotic_exact_bound(4) - (2 + (1 - math.log(2)) + 1 / 3)) < 1e-12
    assert abs(asymptotic_exact_bound(16) - (8 + 2 * (1 - math.log(2)) + 1 / 3)) < 1e-12
    vals = [asymptotic_exact_bound(n) for n in range(4, 30)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        asymptotic_exact_bound(3)


def test_equilibrium_matches_closed_form():
    for n in range(1, 8):
        assert abs(equilibrium_value(n) - wirsing_exact_bound(n)) < 1e-9


def test_comparison_table():
    rows = comparison_table()
    assert [r["n"] for r in rows] == [3, 4, 5, 6, 7]
    for r in rows:
        assert abs(r["exact_degree_bound"] - r["exact_degree_stored"]) < 5e-5
        assert r["prior_exact_degree_bound"] < r["exact_degree_bound"]
        assert r["exact_degree_bound"] < r["unrestricted_bound"]


def test_liouville_witness():
    w = liouville_witness(10, 3)
    assert w.approximant == Fraction(110001, 10**6)
    assert w.radius == Fraction(2, 10**24)
    d = liouville_witness(2, 4)
    assert d.approximant.denominator == 2**24
    with pytest.raises(ValueError):
        liouville_witness(1, 3)


def test_continued_fraction_witness():
    w = continued_fraction_witness([0, 1, 1, 1, 1, 1])
    ps = convergents([0, 1, 1, 1, 1, 1])
    p, q = ps[-1]
    assert w.approximant == Fraction(p, q)
    assert w.radius == Fraction(1, q * (q + ps[-2][1]))


def test_estimate_w_matches_naive():
    rng = random.Random(3)
    for trial in range(4):
        den = rng.randint(50, 300)
        num = rng.randint(1, den - 1)
        rad = Fraction(0) if trial % 2 else Fraction(1, den * den * 13)
        xi = RationalWitness(Fraction(num, den), rad, "t")
        for n in (1, 2):
            for variant in ("any", "exact_irreducible", "monic", "monic_unit"):
                naive = naive_estimate_w(xi, n, 5, variant)
                est = estimate_w(xi, n, 5, variant)
                assert est.interval_hi == naive[0]
                assert est.witness_poly == naive[1]


def test_estimate_w_continued_fraction_oracle():
    # for n = 1 the best box value is the last convergent with height <= X
    quots = [0, 1, 2, 1, 1, 3, 1, 2, 2, 1, 4, 1, 1, 2, 3, 1, 1, 1, 2, 5, 1, 2]
    xi = continued_fraction_witness(quots)
    cs = convergents(quots)
    X = cs[8][0] + cs[8][1]  # comfortably between convergent heights
    best_q = max(q for p, q in cs if max(p, q) <= X)
    est = estimate_w(xi, 1, X, "any")
    wp = est.witness_poly
    assert abs(wp.coeffs[1]) == best_q
    expected = abs(Fraction(wp.coeffs[1]) * xi.approximant + wp.coeffs[0])
    assert est.interval_lo <= expected <= est.interval_hi


def test_estimate_w_nesting_chain():
    xi = continued_fraction_witness([0, 2, 3, 1, 1, 4, 1, 2, 1, 6, 1, 1, 3])
    X, n = 8, 2
    vals = [
        estimate_w(xi, n, X, v).value
        for v in ("any", "exact_irreducible", "monic", "monic_unit")
    ]
    assert vals[0] >= vals[1] - 1e-12
    assert vals[1] >= vals[2] - 1e-12
    assert vals[2] >= vals[3] - 1e-12


def test_estimate_w_monotone_in_degree():
    xi = continued_fraction_witness([0, 3, 1, 2, 1, 1, 5, 1, 2, 1, 1, 2, 7, 1])
    vals = [estimate_w(xi, n, 12, "any").value for n in (1, 2, 3)]
    assert vals[0] <= vals[1] + 1e-12 <= vals[2] + 2e-12


def test_exact_irreducible_excludes_reducible_minimum():
    # a witness microscopically close to 3/2 makes (2T-3)-multiples the global
    # minimizers; the exact-irreducible estimate must do strictly worse
    xi = RationalWitness(Fraction(3, 2) + Fraction(1, 10**9), Fraction(0), "near 3/2")
    any_est = estimate_w(xi, 2, 8, "any")
    irr_est = estimate_w(xi, 2, 8, "exact_irreducible")
    assert any_est.value > irr_est.value
    from polycomb.factorization import is_irreducible

    assert irr_est.witness_poly.degree == 2
    assert is_irreducible(irr_est.witness_poly)


def test_monic_unit_class_contract():
    xi = continued_fraction_witness([0, 1, 3, 1, 2, 1, 1, 7, 1, 1, 2])
    est = estimate_w(xi, 2, 30, "monic_unit")
    wp = est.witness_poly
    assert wp.degree == 2 and wp.leading() == 1 and abs(wp.constant_coeff()) == 1


def test_estimate_w_witness_reproduces_value():
    xi = continued_fraction_witness([0, 2, 1, 1, 1, 3, 2, 1, 1, 5, 1, 1])
    est = estimate_w(xi, 2, 40, "any")
    from polycomb.analytic import evaluate_at_witness

    lo, hi = evaluate_at_witness(est.witness_poly, xi)
    assert hi == est.interval_hi
    assert abs(-math.log(float(hi)) / math.log(40) - est.value) < 1e-9


def test_estimate_w_guards():
    xi = RationalWitness(Fraction(1, 3), Fraction(0), "third")
    with pytest.raises(ValueError):
        estimate_w(xi, 1, 1, "any")
    with pytest.raises(ValueError):
        estimate_w(xi, 0, 10, "any")
    with pytest.raises(ValueError):
        estimate_w(xi, 1, 10, "weird")
    with pytest.raises(BoxTooLargeError):
        estimate_w(xi, 7, 10**4, "any")


def test_estimate_lambda_fibonacci():
    xi = continued_fraction_witness([1] * 40)
    fib = [1, 1]
    while len(fib) < 25:
        fib.append(fib[-1] + fib[-2])
    X = fib[16]
    est = estimate_lambda(xi, 1, X)
    assert est.value >= 0.9
    assert est.witness_x in fib  # best x is a Fibonacci number


def test_estimate_lambda_dirichlet_floor():
    xi = continued_fraction_witness([0, 2, 1, 3, 1, 1, 2, 1, 5, 1, 1, 3, 1, 2, 1, 1])
    for n in (1, 2, 3):
        est = estimate_lambda(xi, n, 2000)
        assert est.value >= 1 / n - 0.05
        assert 1 <= est.witness_x <= 2000


def test_estimate_lambda_guards():
    xi = RationalWitness(Fraction(1, 3), Fraction(0), "third")
    with pytest.raises(BoxTooLargeError):
        estimate_lambda(xi, 1, 10**8)
    with pytest.raises(ValueError):
        estimate_lambda(xi, 0, 100)


def test_liouville_witness_spikes():
    xi = liouville_witness(10, 3)
    est = estimate_w(xi, 1, 10**3, "any")
    assert est.value >= 2.9  # rational spike at denominator 1e6
