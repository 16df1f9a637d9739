from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypaut.admissible import (
    GorinovCase,
    Interpretation,
    ProblemInstance,
    Reason,
    Verdict,
    admissible_primes,
    admissible_primes_sieve,
    check_gorinov_conjecture,
    extremal_report,
    gorinov_bound,
    is_admissible_prime,
    is_realizable_order,
    max_admissible_prime,
    new_admissible_prime,
    prime_order_upper_bound,
    primitive_prime_divisors,
)
from hypaut.arith import PrimalityCertainty
from hypaut.cyclotomic import cyclotomic_value
from hypaut.errors import DomainError, ResourceError

from oracles import brute_admissible, brute_order, gorinov_sympy, td_factor

P = ProblemInstance
GRID = [(n, d) for n in range(2, 7) for d in range(3, 7)]


def test_instance_validation_and_interpretation():
    with pytest.raises(DomainError):
        P(0, 3)
    with pytest.raises(DomainError):
        P(2, 2)
    assert P(2, 4).interpretation is Interpretation.LINEAR_ONLY
    assert P(1, 5).interpretation is Interpretation.LINEAR_ONLY
    assert P(2, 3).interpretation is Interpretation.FULL
    assert P(3, 4).interpretation is Interpretation.FULL
    assert P(3, 4).base == -3 and P(3, 4).nvars == 5


def test_interpretation_is_echoed():
    v = is_admissible_prime(P(2, 4), 7)
    assert v.to_dict()["interpretation"] == "linear-automorphisms-only"


def test_is_admissible_prime_examples():
    v = is_admissible_prime(P(3, 4), 61)
    assert v.verdict is Verdict.REALIZABLE and v.reason is Reason.ORDER_CRITERION and v.ell == 5
    v = is_admissible_prime(P(3, 4), 2)
    assert v.realizable and v.reason is Reason.DIVIDES_D and v.ell == 1
    v = is_admissible_prime(P(3, 4), 13)
    assert v.verdict is Verdict.NOT_REALIZABLE and v.reason is Reason.NO_L_EXISTS
    assert is_admissible_prime(P(3, 4), 3).reason is Reason.DIVIDES_D_MINUS_1
    with pytest.raises(DomainError):
        is_admissible_prime(P(3, 4), 9)


def test_is_realizable_order_examples():
    v = is_realizable_order(P(2, 3), 5)
    assert v.realizable and v.ell == 4
    v = is_realizable_order(P(2, 3), 2)
    assert v.realizable and v.reason is Reason.DIVIDES_D_MINUS_1
    assert is_realizable_order(P(2, 3), 15).verdict is Verdict.OUTSIDE_SCOPE
    # ord_55(-2) = lcm(ord_5, ord_11) = lcm(4, 5) = 20 > 4
    assert is_realizable_order(P(2, 3), 55).verdict is Verdict.NOT_REALIZABLE
    # ord_33(-2) = lcm(ord_3, ord_11) would need 3 | d; (3,5): ord_33(-4) = lcm(2, 5)
    assert is_realizable_order(P(3, 5), 33).verdict is Verdict.NOT_REALIZABLE
    v = is_realizable_order(P(3, 3), 11)
    assert v.realizable and v.ell == 5


@settings(max_examples=200)
@given(st.integers(2, 6), st.integers(3, 9), st.integers(2, 3000))
def test_verdict_properties(n, d, q):
    inst = P(n, d)
    v = is_realizable_order(inst, q)
    if v.reason is Reason.ORDER_CRITERION:
        assert pow(inst.base, v.ell, q) == 1
        assert brute_order(inst.base, q) == v.ell
        assert v.ell <= n + 2
    if v.verdict is Verdict.OUTSIDE_SCOPE:
        assert sum(td_factor(q).values()) > 1
        assert any(d % p == 0 or (d - 1) % p == 0 for p in td_factor(q))


def test_admissible_primes_examples():
    assert admissible_primes(P(3, 4)) == [2, 3, 5, 7, 61]
    assert admissible_primes(P(10, 4)) == [2, 3, 5, 7, 11, 13, 19, 37, 41, 61, 67, 73, 547, 661]
    assert admissible_primes(P(2, 3)) == [2, 3, 5]


def test_sieve_examples():
    assert admissible_primes_sieve(P(3, 4), 100) == [2, 3, 5, 7, 61]
    assert admissible_primes_sieve(P(3, 4), 6) == [2, 3, 5]
    # ord_31(-2) = 10 > 7, so 31 does not belong here
    assert brute_order(-2, 31) == 10
    assert admissible_primes_sieve(P(5, 3), 50) == [2, 3, 5, 7, 11, 43]
    with pytest.raises(ResourceError):
        admissible_primes_sieve(P(3, 4), 10**8)


def test_oracle_equivalence_on_grid():
    for n, d in GRID:
        inst = P(n, d)
        limit = min((d - 1) ** (n + 1), 10**6)
        fac = [p for p in admissible_primes(inst) if p <= limit]
        assert fac == admissible_primes_sieve(inst, limit), (n, d)
        if limit <= 5000:
            assert fac == brute_admissible(n, d, limit)


def test_bounds_and_monotonicity():
    for n in range(2, 9):
        for d in range(3, 10):
            inst = P(n, d)
            ps = admissible_primes(inst)
            assert all(p < (d - 1) ** (n + 1) for p in ps)
            assert set(ps) <= set(admissible_primes(P(n + 1, d)))
            rep = extremal_report(inst)
            phi = cyclotomic_value(n + 2, 1 - d)
            if rep.exists:
                assert max(ps) == phi and phi > (d - 1) ** n
            else:
                assert all(p < (d - 1) ** n for p in ps), (n, d)


def test_max_admissible_prime_examples():
    assert max_admissible_prime(P(9, 7)) == 51828151
    assert max_admissible_prime(P(2, 3)) == 5
    assert max_admissible_prime(P(7, 8)) == 117307


def test_extremal_report():
    r = extremal_report(P(3, 3))
    assert r.exists and r.p == 11 and r.certainty is PrimalityCertainty.PROVEN_PRIME
    r = extremal_report(P(4, 3))
    assert not r.exists and r.p is None and not r.n_plus_2_prime
    r = extremal_report(P(9, 7))
    assert r.exists and r.p == 51828151
    assert extremal_report(P(2, 3)).p == 5
    assert extremal_report(P(2, 4)).to_dict()["interpretation"] == "linear-automorphisms-only"


def test_prime_order_upper_bound():
    b = prime_order_upper_bound(P(3, 3))
    assert (b.strict_bound, b.sharp, b.non_extremal_bound) == (16, 11, None)
    b = prime_order_upper_bound(P(4, 3))
    assert (b.strict_bound, b.sharp, b.non_extremal_bound) == (32, None, 16)
    assert max_admissible_prime(P(4, 3)) == 11 < 16
    b = prime_order_upper_bound(P(2, 5))
    assert (b.strict_bound, b.sharp) == (4**3, 17)


def test_new_admissible_prime():
    assert new_admissible_prime(P(3, 3)) == 11
    assert new_admissible_prime(P(5, 4)) == 547
    assert new_admissible_prime(P(4, 3)) == 7
    assert brute_order(-2, 7) == 6
    with pytest.raises(DomainError):
        new_admissible_prime(P(2, 3))


def test_primitive_prime_divisors_by_brute_force():
    for n in range(1, 8):
        for d in range(3, 8):
            inst = P(n, d)
            v = (1 - d) ** (n + 2) - 1
            expected = sorted(p for p in td_factor(v) if brute_order(1 - d, p) == n + 2)
            assert primitive_prime_divisors(inst) == expected


def test_gorinov_bound_matches_independent_evaluation():
    for n in range(2, 6):
        for d in range(3, 7):
            b = gorinov_bound(P(n, d))
            assert b.value == gorinov_sympy(n, d)
            assert b.integral and b.denominator == 1
    assert gorinov_bound(P(2, 3)).value == Fraction(69120)


def test_gorinov_conjecture_examples():
    for n, d in [(2, 3), (3, 3), (3, 4)]:
        rep = check_gorinov_conjecture(P(n, d))
        assert rep.all_realizable
    rep = check_gorinov_conjecture(P(3, 4))
    by_p = {e.p: e for e in rep.evidence}
    assert 61 in by_p
    assert by_p[61].verdict.reason is Reason.ORDER_CRITERION
    assert GorinovCase.SHIFT_FACTOR in by_p[61].cases
    assert by_p[61].verdict.to_dict()["ell"] == 5
