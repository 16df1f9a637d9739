"""Which orders occur for automorphisms of smooth hypersurfaces of dimension n, degree d.

A prime p is admissible for (n, d) when p divides d - 1 or
(1 - d)**l == 1 (mod p) for some l in 1..n+2.  Composite q coprime to d
and d - 1 follow the same congruence criterion.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    PrimalityCertainty,
    binomial,
    factorize,
    is_prime,
    isprime,
    lcm,
    multiplicative_order,
    primes_in_range,
)
from .cyclotomic import cyclotomic_value
from .errors import DomainError, InconsistencyError, ResourceError

ORACLE_SIEVE_CAP = 10**7


class Interpretation(str, enum.Enum):
    FULL = "full-automorphism-group"
    LINEAR_ONLY = "linear-automorphisms-only"


class Verdict(str, enum.Enum):
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not-realizable"
    OUTSIDE_SCOPE = "outside-theorem-scope"


class Reason(str, enum.Enum):
    DIVIDES_D_MINUS_1 = "divides-d-minus-1"
    DIVIDES_D = "divides-d"
    ORDER_CRITERION = "order-criterion"
    NO_L_EXISTS = "no-l-exists"


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    d: int
    interpretation: Interpretation = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"dimension must be >= 1, got {self.n}")
        if self.d < 3:
            raise DomainError(f"degree must be >= 3, got {self.d}")
        full = self.n >= 2 and (self.n, self.d) != (2, 4)
        object.__setattr__(
            self, "interpretation", Interpretation.FULL if full else Interpretation.LINEAR_ONLY
        )

    @property
    def base(self) -> int:
        """The residue 1 - d that drives every congruence."""
        return 1 - self.d

    @property
    def nvars(self) -> int:
        return self.n + 2


@dataclass(frozen=True)
class AdmissibilityVerdict:
    value: int
    verdict: Verdict
    reason: Reason | None
    ell: int | None
    interpretation: Interpretation

    @property
    def realizable(self) -> bool:
        return self.verdict is Verdict.REALIZABLE

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "verdict": self.verdict.value,
            "reason": None if self.reason is None else self.reason.value,
            "ell": self.ell,
            "interpretation": self.interpretation.value,
        }


def _order_verdict(inst: ProblemInstance, q: int) -> AdmissibilityVerdict:
    ell = multiplicative_order(inst.base, q)
    if ell is not None and ell <= inst.nvars:
        return AdmissibilityVerdict(q, Verdict.REALIZABLE, Reason.ORDER_CRITERION, ell,
                                    inst.interpretation)
    return AdmissibilityVerdict(q, Verdict.NOT_REALIZABLE, Reason.NO_L_EXISTS, None,
                                inst.interpretation)


def is_admissible_prime(inst: ProblemInstance, p: int) -> AdmissibilityVerdict:
    if p < 2 or not isprime(p):
        raise DomainError(f"{p} is not prime")
    if (inst.d - 1) % p == 0:
        return AdmissibilityVerdict(p, Verdict.REALIZABLE, Reason.DIVIDES_D_MINUS_1, None,
                                    inst.interpretation)
    if inst.d % p == 0:
        # 1 - d == 1 (mod p), so l = 1 is already the minimal exponent
        return AdmissibilityVerdict(p, Verdict.REALIZABLE, Reason.DIVIDES_D, 1,
                                    inst.interpretation)
    return _order_verdict(inst, p)


def is_realizable_order(inst: ProblemInstance, q: int) -> AdmissibilityVerdict:
    if q < 2:
        raise DomainError(f"order must be >= 2, got {q}")
    if isprime(q):
        return is_admissible_prime(inst, q)
    if math.gcd(q, inst.d) == 1 and math.gcd(q, inst.d - 1) == 1:
        return _order_verdict(inst, q)
    return AdmissibilityVerdict(q, Verdict.OUTSIDE_SCOPE, None, None, inst.interpretation)


def _nonunit_prime_divisors(v: int) -> list[int]:
    return [] if abs(v) == 1 else factorize(v).primes


def admissible_primes(inst: ProblemInstance) -> list[int]:
    """Prime divisors of d - 1 and of (1-d)**l - 1 for l = 1..n+2.

    (1-d)**l - 1 is the product of Phi_r(1-d) over r | l, so the union over
    l <= n+2 is the union of the prime divisors of Phi_r(1-d), r <= n+2.
    Factoring the cyclotomic pieces keeps the numbers small.
    """
    found = set(_nonunit_prime_divisors(inst.d - 1))
    for r in range(1, inst.nvars + 1):
        found.update(_nonunit_prime_divisors(cyclotomic_value(r, inst.base)))
    return sorted(found)


def admissible_primes_sieve(inst: ProblemInstance, limit: int,
                            cap: int = ORACLE_SIEVE_CAP) -> list[int]:
    """Sieve the primes up to ``limit`` and test each one directly.

    Independent of the factoring route; used as its oracle.
    """
    if limit > cap:
        raise ResourceError(f"limit {limit} exceeds oracle sieve cap {cap}", "cap", cap)
    if limit < 2:
        return []
    out = []
    for p in primes_in_range(2, limit):
        b = inst.base % p
        if b == 0:
            out.append(p)
            continue
        x = 1
        for _ in range(inst.nvars):
            x = x * b % p
            if x == 1:
                out.append(p)
                break
    return out


def max_admissible_prime(inst: ProblemInstance) -> int:
    return max(admissible_primes(inst))


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    d: int
    exists: bool
    phi_value: int
    n_is_2: bool
    n_plus_2_prime: bool
    phi_value_prime: bool
    certainty: PrimalityCertainty
    repunit_note: bool
    interpretation: Interpretation

    @property
    def p(self) -> int | None:
        return self.phi_value if self.exists else None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "exists": self.exists,
            "p": self.p,
            "phi_value": self.phi_value,
            "condition_met": {
                "n_is_2": self.n_is_2,
                "n_plus_2_prime": self.n_plus_2_prime,
                "phi_value_prime": self.phi_value_prime,
            },
            "certainty": self.certainty.value,
            "repunit_note": self.repunit_note,
            "interpretation": self.interpretation.value,
        }


def extremal_report(inst: ProblemInstance) -> ExtremalReport:
    m = inst.nvars
    value = cyclotomic_value(m, inst.base)
    prime, certainty = is_prime(value) if value > 0 else (False, PrimalityCertainty.COMPOSITE)
    n_is_2 = inst.n == 2
    m_prime = isprime(m)
    exists = (n_is_2 or m_prime) and prime
    repunit = False
    if exists and not n_is_2:
        b = inst.base
        repunit = (b**m - 1) % (b - 1) == 0 and (b**m - 1) // (b - 1) == value
    return ExtremalReport(inst.n, inst.d, exists, value, n_is_2, m_prime, prime, certainty,
                          repunit, inst.interpretation)


@dataclass(frozen=True)
class PrimeOrderBound:
    strict_bound: int
    sharp: int | None
    non_extremal_bound: int | None

    def to_dict(self) -> dict:
        return {
            "strict_bound": self.strict_bound,
            "sharp": self.sharp,
            "non_extremal_bound": self.non_extremal_bound,
        }


def prime_order_upper_bound(inst: ProblemInstance) -> PrimeOrderBound:
    """Every admissible prime is < (d-1)**(n+1); the extremal value is attained when it exists,
    otherwise every admissible prime is < (d-1)**n."""
    strict = (inst.d - 1) ** (inst.n + 1)
    rep = extremal_report(inst)
    if rep.exists:
        return PrimeOrderBound(strict, rep.phi_value, None)
    return PrimeOrderBound(strict, None, (inst.d - 1) ** inst.n)


def primitive_prime_divisors(inst: ProblemInstance) -> list[int]:
    """Primes modulo which 1 - d has order exactly n + 2.

    Such a prime divides Phi_{n+2}(1-d), hence (1-d)**(n+2) - 1.
    """
    m = inst.nvars
    return [p for p in _nonunit_prime_divisors(cyclotomic_value(m, inst.base))
            if multiplicative_order(inst.base, p) == m]


def new_admissible_prime(inst: ProblemInstance) -> int | None:
    """Largest prime admissible in dimension n but in no smaller dimension."""
    if inst.n < 3:
        raise DomainError("new_admissible_prime needs n >= 3")
    found = primitive_prime_divisors(inst)
    return max(found) if found else None


@dataclass(frozen=True)
class GorinovBound:
    numerator: int
    denominator: int

    @property
    def integral(self) -> bool:
        return self.denominator == 1

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict:
        return {"numerator": self.numerator, "denominator": self.denominator,
                "integral": self.integral}


def _gorinov_shift(n: int, d: int, i: int) -> int:
    return (-1) ** (n - i + 1) + (d - 1) ** (n - i + 2)


def gorinov_bound(inst: ProblemInstance) -> GorinovBound:
    n, d = inst.n, inst.d
    total = Fraction(1, n + 1)
    for i in range(n + 1):
        c = binomial(n + 2, i)
        total *= Fraction(_gorinov_shift(n, d, i) * lcm(c * (d - 1) ** i, (n + 2) * (d - 1) ** n), c)
    return GorinovBound(total.numerator, total.denominator)


class GorinovCase(str, enum.Enum):
    SHIFT_FACTOR = "divides-cyclotomic-like-factor"
    D_MINUS_1 = "divides-d-minus-1"
    SMALL = "at-most-n-plus-2"


@dataclass(frozen=True)
class GorinovPrimeEvidence:
    p: int
    cases: tuple[GorinovCase, ...]
    shift_indices: tuple[int, ...]
    verdict: AdmissibilityVerdict

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "cases": [c.value for c in self.cases],
            "shift_indices": list(self.shift_indices),
            "verdict": self.verdict.to_dict(),
        }


@dataclass(frozen=True)
class GorinovReport:
    bound: GorinovBound
    evidence: tuple[GorinovPrimeEvidence, ...]

    @property
    def all_realizable(self) -> bool:
        return all(e.verdict.realizable for e in self.evidence)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound.to_dict(),
            "all_realizable": self.all_realizable,
            "primes": [e.to_dict() for e in self.evidence],
        }


def check_gorinov_conjecture(inst: ProblemInstance) -> GorinovReport:
    """Every prime factor of the bound must be an admissible prime.

    Each prime is tagged with which branch of the argument covers it.
    """
    bound = gorinov_bound(inst)
    if not bound.integral:
        raise InconsistencyError(
            f"bound for (n, d) = ({inst.n}, {inst.d}) is not an integer: "
            f"{bound.numerator}/{bound.denominator}"
        )
    n, d = inst.n, inst.d
    evidence = []
    for p in _nonunit_prime_divisors(bound.numerator):
        idx = tuple(i for i in range(n + 1) if _gorinov_shift(n, d, i) % p == 0)
        cases = []
        if idx:
            cases.append(GorinovCase.SHIFT_FACTOR)
        if (d - 1) % p == 0:
            cases.append(GorinovCase.D_MINUS_1)
        if p <= n + 2:
            cases.append(GorinovCase.SMALL)
        if not cases:
            raise InconsistencyError(f"prime {p} of the bound fits none of the three cases")
        evidence.append(GorinovPrimeEvidence(p, tuple(cases), idx, is_admissible_prime(inst, p)))
    return GorinovReport(bound, tuple(evidence))
