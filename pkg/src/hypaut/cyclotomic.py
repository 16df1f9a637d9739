"""Dense integer polynomials and cyclotomic polynomials."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .arith import factorize, isprime, totient
from .errors import DomainError, ResourceError

DEGREE_CAP = 4096


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients low degree first, without stored leading zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_list(cls, coeffs) -> IntPolynomial:
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division by a polynomial with leading coefficient +-1."""
        if divisor.is_zero() or divisor.coeffs[-1] not in (1, -1):
            raise DomainError("divisor must have leading coefficient +1 or -1")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.coeffs[-1]
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * lead
            if c:
                quot[k - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[k - dd + j] -= c * b
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem))

    def compose_power(self, k: int) -> IntPolynomial:
        """``p(t**k)``."""
        out = [0] * (self.degree * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(tuple(out))

    def __call__(self, x: int) -> int:
        return eval_int(self, x)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("t" if i == 1 else f"t^{i}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def eval_int(p: IntPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


_memo: dict[int, IntPolynomial] = {}
_memo_lock = threading.Lock()


def _divisors(m: int) -> list[int]:
    divs = [1]
    for p, e in factorize(m).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def cyclotomic_poly(m: int, *, degree_cap: int = DEGREE_CAP) -> IntPolynomial:
    """Phi_m, by dividing t^m - 1 by Phi_r for every proper divisor r of m."""
    if m < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {m}")
    with _memo_lock:
        hit = _memo.get(m)
    if hit is not None:
        return hit
    if totient(m) > degree_cap:
        raise ResourceError(
            f"Phi_{m} has degree {totient(m)} > degree cap {degree_cap}", "degree_cap", degree_cap
        )
    poly = IntPolynomial.monomial(m) - IntPolynomial((1,))
    for r in _divisors(m)[:-1]:
        quot, rem = poly.divmod_monic(cyclotomic_poly(r, degree_cap=degree_cap))
        assert rem.is_zero(), f"Phi_{r} does not divide t^{m} - 1"
        poly = quot
    with _memo_lock:
        _memo.setdefault(m, poly)
    return poly


def cyclotomic_value(m: int, x: int) -> int:
    return eval_int(cyclotomic_poly(m), x)


def prime_power_identity_check(q: int, r: int, *, degree_cap: int = DEGREE_CAP) -> bool:
    """Does Phi_{q^r}(t) equal Phi_q(t^{q^(r-1)}) coefficient by coefficient?"""
    if not isprime(q):
        raise DomainError(f"{q} is not prime")
    if r < 1:
        raise DomainError("r must be >= 1")
    lhs = cyclotomic_poly(q**r, degree_cap=degree_cap)
    rhs = cyclotomic_poly(q).compose_power(q ** (r - 1))
    return lhs == rhs
