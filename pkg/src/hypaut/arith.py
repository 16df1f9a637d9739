"""Exact integer number theory: powers, orders, primality, sieving, factoring.

Everything here works on Python ints, so values such as ``(1-d)**(n+2)``
never overflow.  Residues are always returned in ``[0, modulus)``.
"""

from __future__ import annotations

import enum
import math
import os
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, FactorizationIncomplete, ResourceError

# Miller-Rabin with these bases is exact below 3.3e24; we only claim proofs below 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 2**64
PROBABLE_PRIME_ROUNDS = 40

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_EFFORT = 2_000_000
EFFORT_ENV = "HYPAUT_EFFORT"

SIEVE_MAX_HI = 10**12
SIEVE_MAX_SPAN = 10**8
_SEGMENT = 1 << 20


class PrimalityCertainty(str, enum.Enum):
    PROVEN_PRIME = "proven-prime"
    PROBABLE_PRIME = "probable-prime"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class Factorization:
    """``value == sign * prod(p**e for p, e in factors)`` with increasing primes."""

    value: int
    factors: tuple[tuple[int, int], ...]
    sign: int = 1

    def __post_init__(self):
        if self.value == 0:
            raise DomainError("cannot factor 0")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.product() != self.value:
            raise DomainError(f"factors do not multiply back to {self.value}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("primes must be strictly increasing")

    def product(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def _check_modulus(modulus):
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")


def mod_pow(base: int, exp: int, modulus: int) -> int:
    _check_modulus(modulus)
    if exp < 0:
        raise DomainError("exponent must be nonnegative")
    return pow(base % modulus, exp, modulus)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)


def totient(m: int) -> int:
    if m < 1:
        raise DomainError("totient needs m >= 1")
    out = m
    for p in factorize(m).primes:
        out = out // p * (p - 1)
    return out


def multiplicative_order(a: int, modulus: int) -> int | None:
    """Least ``k >= 1`` with ``a**k == 1 (mod modulus)``; None if ``gcd(a, modulus) != 1``."""
    _check_modulus(modulus)
    a %= modulus
    if math.gcd(a, modulus) != 1:
        return None
    if is_prime(modulus)[0]:
        order = modulus - 1
    else:
        order = totient(modulus)
    for p, e in factorize(order).factors:
        for _ in range(e):
            if pow(a, order // p, modulus) == 1:
                order //= p
            else:
                break
    return order


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
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


def is_prime(v: int) -> tuple[bool, PrimalityCertainty]:
    if v < 0:
        raise DomainError("is_prime expects v >= 0")
    if v < 2:
        return False, PrimalityCertainty.COMPOSITE
    for p in _MR_BASES:
        if v == p:
            return True, PrimalityCertainty.PROVEN_PRIME
        if v % p == 0:
            return False, PrimalityCertainty.COMPOSITE
    if not _miller_rabin(v, _MR_BASES):
        return False, PrimalityCertainty.COMPOSITE
    if v < DETERMINISTIC_LIMIT:
        return True, PrimalityCertainty.PROVEN_PRIME
    rng = random.Random(v)
    bases = [rng.randrange(2, v - 1) for _ in range(PROBABLE_PRIME_ROUNDS)]
    if not _miller_rabin(v, bases):
        return False, PrimalityCertainty.COMPOSITE
    return True, PrimalityCertainty.PROBABLE_PRIME


def isprime(v: int) -> bool:
    return is_prime(v)[0]


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(_simple_sieve(TRIAL_DIVISION_LIMIT).tolist())


def primes_in_range(lo: int, hi: int, *, max_hi: int = SIEVE_MAX_HI,
                    max_span: int = SIEVE_MAX_SPAN) -> list[int]:
    """All primes ``p`` with ``lo <= p <= hi`` by a segmented sieve."""
    if lo < 0 or hi < lo:
        raise DomainError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > max_hi:
        raise ResourceError(f"hi={hi} exceeds sieve cap max_hi={max_hi}", "max_hi", max_hi)
    if hi - lo > max_span:
        raise ResourceError(
            f"range width {hi - lo} exceeds sieve cap max_span={max_span}", "max_span", max_span
        )
    lo = max(lo, 2)
    if hi < lo:
        return []
    base = _simple_sieve(math.isqrt(hi))
    out: list[int] = []
    start = lo
    while start <= hi:
        stop = min(start + _SEGMENT, hi + 1)
        flags = np.ones(stop - start, dtype=bool)
        for p in base.tolist():
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        out.extend((np.flatnonzero(flags) + start).tolist())
        start = stop
    return out


def _effort_cap() -> int:
    raw = os.environ.get(EFFORT_ENV)
    if raw is None or raw == "":
        return DEFAULT_EFFORT
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{EFFORT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"{EFFORT_ENV} must be positive")
    return value


def _brent_rho(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """One nontrivial factor of odd composite ``n``, or None; returns (factor, steps used)."""
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


def factorize(v: int, effort: int | None = None) -> Factorization:
    """Complete factorization of nonzero ``v``.

    Trial division up to 1e6, then Brent's rho seeded from the input.
    Raises FactorizationIncomplete once ``effort`` rho steps are spent.
    """
    if v == 0:
        raise DomainError("cannot factor 0")
    effort = _effort_cap() if effort is None else effort
    sign = -1 if v < 0 else 1
    n = abs(v)
    found: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1 and n < TRIAL_DIVISION_LIMIT**2:
        found[n] = found.get(n, 0) + 1
        n = 1

    rng = random.Random(abs(v))
    stack = [n] if n > 1 else []
    spent = 0
    leftover = 1
    while stack:
        m = stack.pop()
        if isprime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        factor, used = _brent_rho(m, rng, effort - spent)
        spent += used
        if factor is None:
            leftover *= m
            leftover *= math.prod(stack)
            break
        stack.extend((factor, m // factor))
    if leftover != 1:
        partial = dict(sorted(found.items()))
        raise FactorizationIncomplete(v, partial, leftover, effort)
    return Factorization(v, tuple(sorted(found.items())), sign)


def prime_divisors(v: int) -> list[int]:
    return factorize(v).primes
