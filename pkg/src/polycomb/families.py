"""Combination families ell*P + Q for coprime integer polynomials: member
construction, reducibility censuses against divisor-weighted budgets, the
smallest-shift irreducibility search for cubics, counterexample generators,
and the near-root pair constructor used to exercise the root-gap hypothesis.
"""
from __future__ import annotations

import dataclasses
import math
import random
from fractions import Fraction

from .polynomial import IntPolynomial, is_coprime, poly_gcd
from .factorization import Factorization, factor, is_irreducible, linear_factors
from .arith import BoundInputs, divisors, gamma_bounds, is_prime, primes_up_to, tau
from .analytic import (
    GapResult,
    RationalWitness,
    Verdict,
    compare_interval,
    kappa_threshold,
    min_root_gap,
    power_threshold,
    roots,
    theta_threshold,
)

KINDS = ("S", "R", "M")


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    """A combination family: for coprime P, Q and indices up to H**delta,
    members are ell*T^(n-u)*P + Q (kind S), T^(n-u)*P + ell*Q (kind R) with
    prime ell, or ell1*P + ell2*Q (kind M) with coprime pairs ell1 < ell2.

    strict_hypotheses marks instances satisfying deg P = n, P(0) = 0 and
    deg Q < n; counterexample families run with the flag off.
    """

    kind: str
    P: IntPolynomial
    Q: IntPolynomial
    n: int
    delta: float
    H: int
    strict_hypotheses: bool = True
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.P.is_zero() or self.Q.is_zero():
            raise ValueError("P and Q must be nonzero")
        if not (0 < self.delta <= 1):
            raise ValueError("delta must lie in (0, 1]")
        if self.H < max(self.P.height(), self.Q.height()):
            raise ValueError("H must be at least the heights of P and Q")
        if self.H < 2:
            raise ValueError("H must be at least 2")
        if not is_coprime(self.P, self.Q):
            raise ValueError("P and Q must be coprime")
        if self.strict_hypotheses:
            if self.P.degree != self.n or self.P.constant_coeff() != 0:
                raise ValueError("hypotheses require deg P = n and P(0) = 0")
            if self.Q.degree >= self.n:
                raise ValueError("hypotheses require deg Q < n")
        elif self.n < max(self.P.degree, self.Q.degree):
            raise ValueError("n below the degrees of P and Q")

    def index_bound(self) -> int:
        return int(math.floor(self.H**self.delta))

    def indices(self):
        bound = self.index_bound()
        if self.kind in ("S", "R"):
            return primes_up_to(bound)
        if bound > 3163:
            raise ValueError("M-family index bound above desk scale (pairs > 5e6)")
        return [
            (l1, l2)
            for l2 in range(2, bound + 1)
            for l1 in range(1, l2)
            if math.gcd(l1, l2) == 1
        ]


def build_member(spec: FamilySpec, index) -> IntPolynomial:
    """The family member at the given index; errors when out of range."""
    bound = spec.index_bound()
    u = spec.P.degree
    shifted = spec.P.shift_up(spec.n - u) if spec.n > u else spec.P
    if spec.kind in ("S", "R"):
        ell = index
        if not (1 <= ell <= bound) or not is_prime(ell):
            raise ValueError(f"index {ell} not a prime in [1, {bound}]")
        if spec.kind == "S":
            return shifted * ell + spec.Q
        return shifted + spec.Q * ell
    l1, l2 = index
    if not (1 <= l1 < l2 <= bound) or math.gcd(l1, l2) != 1:
        raise ValueError(f"index pair {index} not coprime with 1 <= l1 < l2 <= {bound}")
    return spec.P * l1 + spec.Q * l2


@dataclasses.dataclass(frozen=True)
class GapFlags:
    """Root-gap hypothesis check attached to census reports."""

    gap_lo: Fraction
    gap_hi: Fraction
    epsilon: float
    kappa_exponent: int | None
    kappa_verdict: Verdict | None
    theta_exponent: int | None
    theta_verdict: Verdict | None

    def to_json(self) -> dict:
        return {
            "gap": [str(self.gap_lo), str(self.gap_hi)],
            "epsilon": self.epsilon,
            "kappa_exponent": self.kappa_exponent,
            "kappa_verdict": self.kappa_verdict.value if self.kappa_verdict else None,
            "theta_exponent": self.theta_exponent,
            "theta_verdict": self.theta_verdict.value if self.theta_verdict else None,
        }


@dataclasses.dataclass(frozen=True)
class CensusReport:
    spec: FamilySpec
    total_indices: int
    reducible: tuple[tuple[object, Factorization], ...]
    gamma: float
    gamma_prime: float | None
    ratio: float
    smallest_irreducible_index: object | None
    degree_drops: int
    root_gap: GapFlags | None

    @property
    def reducible_count(self) -> int:
        return len(self.reducible)

    @property
    def irreducible_count(self) -> int:
        return self.total_indices - len(self.reducible)

    def to_json(self) -> dict:
        return {
            "kind": self.spec.kind,
            "P": [str(c) for c in self.spec.P.coeffs],
            "Q": [str(c) for c in self.spec.Q.coeffs],
            "n": self.spec.n,
            "delta": self.spec.delta,
            "H": self.spec.H,
            "strict_hypotheses": self.spec.strict_hypotheses,
            "seed": self.spec.seed,
            "total_indices": self.total_indices,
            "reducible_count": self.reducible_count,
            "irreducible_count": self.irreducible_count,
            "reducible": [
                {"index": _index_json(i), "factorization": f.to_json() if f else None}
                for i, f in self.reducible
            ],
            "gamma": self.gamma,
            "gamma_prime": self.gamma_prime,
            "ratio": self.ratio,
            "smallest_irreducible_index": _index_json(self.smallest_irreducible_index),
            "degree_drops": self.degree_drops,
            "root_gap": self.root_gap.to_json() if self.root_gap else None,
        }


def _index_json(index):
    if index is None:
        return None
    if isinstance(index, tuple):
        return list(index)
    return index


def _linear_root_exists(member: IntPolynomial, q_cands, r_divs) -> bool:
    """Rational-root test with precomputed divisor candidates (supersets of
    the true divisor sets are fine)."""
    for q in q_cands:
        for r in r_divs:
            if math.gcd(q, r) == 1:
                if member.scaled_value(r, q) == 0 or member.scaled_value(-r, q) == 0:
                    return True
    return False


def census(
    spec: FamilySpec,
    precision: int | None = None,
    check_root_gap: bool = False,
    epsilon: float = 0.1,
) -> CensusReport:
    """Enumerate all indices, test each member's irreducibility (after
    primitive part), and weigh the reducible count against the divisor
    budgets.  Deterministic given the spec."""
    d0 = spec.Q.constant_coeff()
    if d0 == 0:
        raise ValueError("census requires Q(0) != 0 for the divisor budgets")
    cn = spec.P.leading()
    inds = spec.indices()
    reducible = []
    smallest_irr = None
    degree_drops = 0

    fast_linear = spec.kind in ("S", "R") and spec.strict_hypotheses and spec.n <= 3
    if fast_linear:
        cn_divs = divisors(cn)
        r_divs = divisors(d0)
    for index in inds:
        member = build_member(spec, index)
        if member.degree < spec.n:
            degree_drops += 1
        if member.degree < 1:
            # degenerate member: counted reducible, no factorization recorded
            reducible.append((index, factor(member) if not member.is_zero() else None))
            continue
        if fast_linear and member.degree == spec.n:
            if spec.kind == "S":  # member(0) = Q(0), lead = ell * cn
                q_cands = cn_divs + [index * d for d in cn_divs]
                r_cands = r_divs
            else:  # member(0) = ell * Q(0), lead = cn
                q_cands = cn_divs
                r_cands = r_divs + [index * d for d in r_divs]
            red = _linear_root_exists(member, q_cands, r_cands)
        else:
            red = not is_irreducible(member)
        if red:
            reducible.append((index, factor(member)))
        elif smallest_irr is None:
            smallest_irr = index

    gamma, gamma_prime = gamma_bounds(BoundInputs(cn=cn, d0=d0, H=float(spec.H)))
    budget = gamma_prime if (spec.kind in ("S", "R") and spec.n <= 3 and gamma_prime) else gamma
    ratio = len(reducible) / budget

    root_gap = None
    if check_root_gap:
        gap = min_root_gap(spec.P, spec.Q, precision)
        kex = kappa_threshold(spec.n)
        tex = theta_threshold(spec.n)
        kv = (
            compare_interval(gap.lo, gap.hi, power_threshold(spec.H, kex + epsilon))
            if kex is not None
            else None
        )
        tv = (
            compare_interval(gap.lo, gap.hi, power_threshold(spec.H, tex + epsilon))
            if tex is not None
            else None
        )
        root_gap = GapFlags(
            gap_lo=gap.lo,
            gap_hi=gap.hi,
            epsilon=epsilon,
            kappa_exponent=kex,
            kappa_verdict=kv,
            theta_exponent=tex,
            theta_verdict=tv,
        )

    return CensusReport(
        spec=spec,
        total_indices=len(inds),
        reducible=tuple(reducible),
        gamma=gamma,
        gamma_prime=gamma_prime,
        ratio=ratio,
        smallest_irreducible_index=smallest_irr,
        degree_drops=degree_drops,
        root_gap=root_gap,
    )


def linear_factor_divisibility_filter(spec: FamilySpec, index) -> list[IntPolynomial]:
    """Fast superset of the possible linear factors q*T - p of an S-member:
    p divides Q(0) and q divides the member's leading coefficient ell*cn.
    Never misses a true linear factor."""
    if spec.kind != "S" or not spec.strict_hypotheses:
        raise ValueError("filter applies to S-families under the strict hypotheses")
    d0 = spec.Q.constant_coeff()
    if d0 == 0:
        raise ValueError("filter requires Q(0) != 0")
    ell = index
    bound = spec.index_bound()
    if not (1 <= ell <= bound) or not is_prime(ell):
        raise ValueError(f"index {ell} not a prime in [1, {bound}]")
    lead = ell * spec.P.leading()
    out = []
    for q in divisors(lead):
        for p in divisors(d0):
            if math.gcd(q, p) == 1:
                out.append(IntPolynomial((-p, q)))
                out.append(IntPolynomial((p, q)))
    return sorted(set(out), key=lambda g: g.sort_key())


@dataclasses.dataclass(frozen=True)
class ShiftResult:
    b: int
    budget: float
    certificate: Factorization
    scanned: int


_SHIFT_SCAN_CAP = 10**6


def szegedy_shift(P: IntPolynomial) -> ShiftResult:
    """Smallest |b| (ties to positive b) making the cubic P + b irreducible,
    by scanning b = 0, 1, -1, 2, -2, ...; reports the budget
    tau(c3) * log(max(H(P), 3))**2 for comparison."""
    if P.degree != 3:
        raise ValueError("shift search is for cubic polynomials")
    budget = tau(P.leading()) * math.log(max(P.height(), 3)) ** 2
    scanned = 0
    for k in range(_SHIFT_SCAN_CAP):
        for b in ((0,) if k == 0 else (k, -k)):
            scanned += 1
            cand = P + b
            if is_irreducible(cand):
                return ShiftResult(b=b, budget=budget, certificate=factor(cand), scanned=scanned)
    raise RuntimeError("shift scan cap exceeded")


COUNTEREXAMPLES = ("S_quadratic", "R_shift", "M_powers")


def counterexample_family(which: str, H: int, delta: float, n: int = 2):
    """Named family violating one hypothesis, plus a generator of indices
    guaranteed to give reducible members."""
    if which == "S_quadratic":
        spec = FamilySpec(
            kind="S",
            P=IntPolynomial((0, 0, 1)),
            Q=IntPolynomial((-1, 0, -1)),
            n=2,
            delta=delta,
            H=H,
            strict_hypotheses=False,
        )

        def gen():
            bound = spec.index_bound()
            N = 1
            while N * N + 1 <= bound:
                ell = N * N + 1
                if is_prime(ell):
                    yield ell
                N += 1

        return spec, gen
    if which == "R_shift":
        spec = FamilySpec(
            kind="R",
            P=IntPolynomial((1, 0, 1)),
            Q=IntPolynomial((-1,)),
            n=2,
            delta=delta,
            H=H,
            strict_hypotheses=False,
        )

        def gen():
            bound = spec.index_bound()
            N = 1
            while N * N + 1 <= bound:
                ell = N * N + 1
                if is_prime(ell):
                    yield ell
                N += 1

        return spec, gen
    if which == "M_powers":
        spec = FamilySpec(
            kind="M",
            P=IntPolynomial((0,) * n + (1,)),
            Q=IntPolynomial((-1,)),
            n=n,
            delta=delta,
            H=H,
            strict_hypotheses=False,
        )

        def gen():
            bound = spec.index_bound()
            for b in range(2, int(round(bound ** (1 / n))) + 2):
                if b**n > bound:
                    break
                for a in range(1, b):
                    if math.gcd(a, b) == 1:
                        yield (a**n, b**n)

        return spec, gen
    raise ValueError(f"which must be one of {COUNTEREXAMPLES}")


def pairwise_coprime_check(spec: FamilySpec, indices) -> bool:
    """True iff all members at the given indices are pairwise coprime.

    For kind M the index pairs must be pairwise linearly independent."""
    indices = list(indices)
    if spec.kind == "M":
        for i in range(len(indices)):
            for j in range(i + 1, len(indices)):
                (a1, a2), (b1, b2) = indices[i], indices[j]
                if a1 * b2 - a2 * b1 == 0:
                    raise ValueError(
                        f"index pairs {indices[i]} and {indices[j]} are proportional"
                    )
    members = [build_member(spec, i) for i in indices]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not is_coprime(members[i], members[j]):
                return False
    return True


def random_strict_instance(rng: random.Random, n: int, H: int) -> tuple[IntPolynomial, IntPolynomial]:
    """Random coprime (P, Q) with deg P = n, P(0) = 0, deg Q < n, Q(0) != 0,
    coefficients uniform in [-H, H]."""
    while True:
        pc = [0] + [rng.randint(-H, H) for _ in range(n)]
        while pc[-1] == 0:
            pc[-1] = rng.randint(-H, H)
        P = IntPolynomial(pc)
        qc = [rng.randint(-H, H) for _ in range(n)]
        while qc[0] == 0:
            qc[0] = rng.randint(-H, H)
        Q = IntPolynomial(qc)
        if Q.is_zero() or Q.degree >= n:
            continue
        if is_coprime(P, Q):
            return P, Q


@dataclasses.dataclass(frozen=True)
class ClosePair:
    P: IntPolynomial
    Q: IntPolynomial
    H: int
    gap: GapResult
    threshold: Fraction
    verdict: Verdict


def construct_close_root_pair(
    n: int, X: int, precision: int = 192, epsilon: float = 0.1
) -> ClosePair:
    """(P, Q) with deg P = n, P(0) = 0, deg Q < n, coprime, and a certified
    root gap at most H**(-(2n-6)-epsilon) where H = max height.

    P is T*(T^(n-1) - 2); Q minimizes |Q(alpha)| over height <= X at the real
    root alpha of the cofactor, found by the exhaustive estimator, so Q picks
    up a root within roughly X**(-(n-1)) of alpha.
    """
    from .exponents import estimate_w  # local import; exponents layers above

    if n < 4:
        raise ValueError("the root-gap criterion applies for n >= 4")
    core = IntPolynomial((-2,) + (0,) * (n - 2) + (1,))  # T^(n-1) - 2
    P = core.shift_up(1)
    core_roots = roots(core, precision)
    real_disk = min(core_roots.disks, key=lambda d: (abs(d.im), -d.re))
    scale = 1 << 48
    approx = Fraction(round(real_disk.re * scale), scale)
    radius = real_disk.radius + abs(real_disk.im) + abs(approx - real_disk.re)
    witness = RationalWitness(approx, radius, f"real root of {core.coeffs}")

    x = X
    for _ in range(6):
        est = estimate_w(witness, n - 1, x, variant="any")
        Q = est.witness_poly
        k = Q.trailing_valuation()
        if k:
            Q = IntPolynomial(Q.coeffs[k:])
        if Q.degree < 1 or not is_coprime(P, Q):
            x *= 2
            continue
        H = max(P.height(), Q.height())
        threshold = power_threshold(H, (2 * n - 6) + epsilon)
        gap = min_root_gap(P, Q, precision)
        verdict = compare_interval(gap.lo, gap.hi, threshold)
        if verdict is Verdict.TRUE:
            return ClosePair(P=P, Q=Q, H=H, gap=gap, threshold=threshold, verdict=verdict)
        x *= 2
    raise RuntimeError("could not certify a close-root pair at this X")
