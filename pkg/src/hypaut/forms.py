"""Homogeneous forms, diagonal automorphisms and the standard witness families.

Monomials are exponent tuples ``(a_0, ..., a_{n+1})``.  Lists of monomials
are always in graded-lexicographic order with x_0 greatest, so x_0^d
comes first.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .admissible import ProblemInstance, Reason, is_admissible_prime
from .arith import isprime
from .cyclotomic import cyclotomic_value
from .errors import DomainError, ResourceError, UnsupportedError

Monomial = tuple[int, ...]

MONOMIAL_CAP = 2_000_000
FAMILIES = ("fermat", "chain", "loop", "klein")


def monomial_count(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return math.comb(degree + nvars - 1, nvars - 1)


def monomials(nvars: int, degree: int, cap: int = MONOMIAL_CAP) -> Iterator[Monomial]:
    """Every monomial of the given degree, x_0^degree first."""
    if degree < 0:
        return
    count = monomial_count(nvars, degree)
    if count > cap:
        raise ResourceError(
            f"{count} monomials of degree {degree} in {nvars} variables exceeds cap {cap}",
            "monomial_cap", cap,
        )

    def rec(i, left):
        if i == nvars - 1:
            yield (left,)
            return
        for a in range(left, -1, -1):
            for rest in rec(i + 1, left - a):
                yield (a,) + rest

    yield from rec(0, degree)


def grlex_key(m: Monomial):
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(m), tuple(-a for a in m))


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, a in enumerate(m):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Form:
    n: int
    d: int
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            m = tuple(int(a) for a in m)
            if len(m) != self.n + 2:
                raise DomainError(f"monomial {m} has {len(m)} exponents, expected {self.n + 2}")
            if any(a < 0 for a in m) or sum(m) != self.d:
                raise DomainError(f"monomial {m} is not of degree {self.d}")
            if c:
                clean[m] = int(c)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda t: grlex_key(t[0]))))

    @property
    def nvars(self) -> int:
        return self.n + 2

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n, self.d, self.terms) == (other.n, other.d, other.terms)

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms.items():
            body = format_monomial(m)
            coeff = "" if abs(c) == 1 else f"{abs(c)}*"
            out.append(("-" if c < 0 else "+", coeff + body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        return text + "".join(f" {s} {b}" for s, b in out[1:])

    def to_text(self) -> str:
        lines = []
        for m, c in self.terms.items():
            lines.append(" ".join([str(c)] + [f"x{i}^{a}" for i, a in enumerate(m)]))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, n: int | None = None, d: int | None = None) -> Form:
        """Parse ``coeff x0^a0 ... x{n+1}^a{n+1}`` lines; n and d are needed only for the zero form."""
        terms: dict[Monomial, int] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            coeff, *powers = line.split()
            exps = []
            for i, tok in enumerate(powers):
                mt = re.fullmatch(r"x(\d+)\^(\d+)", tok)
                if not mt or int(mt.group(1)) != i:
                    raise DomainError(f"line {lineno}: bad factor {tok!r}")
                exps.append(int(mt.group(2)))
            m = tuple(exps)
            if n is None:
                n = len(m) - 2
            if d is None:
                d = sum(m)
            terms[m] = terms.get(m, 0) + int(coeff)
        if n is None or d is None:
            raise DomainError("zero form needs explicit n and d")
        return cls(n, d, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "terms": [{"coeff": c, "exponents": list(m)} for m, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, text: str) -> Form:
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, obj: dict) -> Form:
        terms: dict[Monomial, int] = {}
        for t in obj["terms"]:
            m = tuple(t["exponents"])
            terms[m] = terms.get(m, 0) + int(t["coeff"])
        return cls(int(obj["n"]), int(obj["d"]), terms)


@dataclass(frozen=True)
class Signature:
    """Exponents of diag(xi^sigma_0, ..., xi^sigma_{n+1}) for a primitive q-th root xi."""

    q: int
    sigma: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"signature modulus must be >= 2, got {self.q}")
        object.__setattr__(self, "sigma", tuple(int(s) % self.q for s in self.sigma))

    def projective_order(self) -> int:
        """Order of diag(sigma) in PGL.

        Equals min over shifts c of lcm_i ord(sigma_i + c); the minimum is
        q / gcd(q, sigma_i - sigma_0 for all i).
        """
        g = self.q
        for s in self.sigma:
            g = math.gcd(g, s - self.sigma[0])
        return self.q // g

    def to_dict(self) -> dict:
        return {"q": self.q, "sigma": list(self.sigma)}


@dataclass(frozen=True)
class Witness:
    form: Form
    signature: Signature
    order: int
    family: str
    ell: int | None = None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "ell": self.ell,
            "order": self.order,
            "signature": self.signature.to_dict(),
            "form": self.form.to_dict(),
        }


def weight(m: Monomial, s: Signature) -> int:
    if len(m) != len(s.sigma):
        raise DomainError(f"monomial has {len(m)} exponents, signature has {len(s.sigma)}")
    return sum(a * w for a, w in zip(m, s.sigma)) % s.q


def is_invariant(f: Form, s: Signature) -> bool:
    if f.nvars != len(s.sigma):
        raise DomainError("form and signature have different numbers of variables")
    return all(weight(m, s) == 0 for m in f.terms)


def min_variable_degree(f: Form) -> tuple[int, int]:
    """(index, degree) of the variable of least degree in f; ties go to the smaller index."""
    if f.is_zero():
        raise DomainError("zero form has no variable degrees")
    degs = [max(m[i] for m in f.terms) for i in range(f.nvars)]
    low = min(degs)
    return degs.index(low), low


def _cycle_terms(nvars: int, d: int, ell: int) -> dict[Monomial, int]:
    terms: dict[Monomial, int] = {}
    for i in range(ell):
        e = [0] * nvars
        e[i] += d - 1
        e[(i + 1) % ell] += 1
        m = tuple(e)
        terms[m] = terms.get(m, 0) + 1
    return terms


def _pure_powers(nvars: int, d: int, start: int) -> dict[Monomial, int]:
    terms = {}
    for i in range(start, nvars):
        e = [0] * nvars
        e[i] = d
        terms[tuple(e)] = 1
    return terms


def _finish(form: Form, sig: Signature, order: int, family: str, ell=None) -> Witness:
    if not is_invariant(form, sig):
        raise DomainError(f"{family} form is not invariant under sigma={sig.sigma} mod {sig.q}")
    po = sig.projective_order()
    if po != order:
        raise DomainError(f"{family} signature has projective order {po}, expected {order}")
    return Witness(form, sig, order, family, ell)


def _unit_signature(nvars: int, q: int) -> Signature:
    return Signature(q, (1,) + (0,) * (nvars - 1))


def fermat_form(n: int, d: int, q: int | None = None) -> Witness:
    """x_0^d + ... + x_{n+1}^d with diag(xi, 1, ..., 1); q must divide d."""
    q = d if q is None else q
    if q < 2 or d % q:
        raise DomainError(f"Fermat witness needs q | d, got q={q}, d={d}")
    nvars = n + 2
    return _finish(Form(n, d, _pure_powers(nvars, d, 0)), _unit_signature(nvars, q), q, "fermat")


def chain_form(n: int, d: int, q: int | None = None) -> Witness:
    """x_0^(d-1) x_1 + x_1^d + ... + x_{n+1}^d with diag(xi, 1, ..., 1); q must divide d - 1."""
    q = d - 1 if q is None else q
    if q < 2 or (d - 1) % q:
        raise DomainError(f"chain witness needs q | d - 1, got q={q}, d={d}")
    nvars = n + 2
    terms = _pure_powers(nvars, d, 1)
    e = [0] * nvars
    e[0], e[1] = d - 1, 1
    terms[tuple(e)] = 1
    return _finish(Form(n, d, terms), _unit_signature(nvars, q), q, "chain")


def loop_form(n: int, d: int, ell: int, q: int) -> Witness:
    """A cycle x_0^(d-1)x_1 + ... + x_{ell-1}^(d-1)x_0 plus pure powers of the other variables.

    The signature is (1, 1-d, ..., (1-d)^(ell-1), 0, ..., 0) mod q.
    """
    nvars = n + 2
    if not 1 <= ell <= nvars:
        raise DomainError(f"loop length must be in 1..{nvars}, got {ell}")
    if q < 2 or pow(1 - d, ell, q) != 1 % q:
        raise DomainError(f"(1-d)^ell = (1-{d})^{ell} is not 1 mod {q}")
    terms = _cycle_terms(nvars, d, ell)
    terms.update(_pure_powers(nvars, d, ell))
    sig = Signature(q, tuple(pow(1 - d, i, q) for i in range(ell)) + (0,) * (nvars - ell))
    family = "klein" if ell == nvars else "loop"
    return _finish(Form(n, d, terms), sig, q, family, ell)


def klein_form(n: int, d: int, q: int) -> Witness:
    """x_0^(d-1)x_1 + x_1^(d-1)x_2 + ... + x_{n+1}^(d-1)x_0 with sigma_i = (1-d)^i mod q."""
    if d < 2:
        raise DomainError("Klein form needs d >= 2")
    nvars = n + 2
    if q < 2 or pow(1 - d, nvars, q) != 1 % q:
        raise DomainError(f"(1-d)^(n+2) = (1-{d})^{nvars} is not 1 mod {q}")
    sig = Signature(q, tuple(pow(1 - d, i, q) for i in range(nvars)))
    return _finish(Form(n, d, _cycle_terms(nvars, d, nvars)), sig, q, "klein", nvars)


def witness_for_prime(inst: ProblemInstance, p: int) -> Witness:
    """A smooth form with an automorphism of prime order p, for admissible p."""
    verdict = is_admissible_prime(inst, p)
    if not verdict.realizable:
        raise DomainError(f"{p} is not admissible in dimension {inst.n}, degree {inst.d}")
    if verdict.reason is Reason.DIVIDES_D:
        return fermat_form(inst.n, inst.d, p)
    if verdict.reason is Reason.DIVIDES_D_MINUS_1:
        return chain_form(inst.n, inst.d, p)
    return loop_form(inst.n, inst.d, verdict.ell, p)


def _template(w: Witness) -> Form:
    n, d = w.form.n, w.form.d
    nvars = n + 2
    if w.family == "fermat":
        return Form(n, d, _pure_powers(nvars, d, 0))
    if w.family == "chain":
        terms = _pure_powers(nvars, d, 1)
        terms[(d - 1, 1) + (0,) * n] = 1
        return Form(n, d, terms)
    if w.family in ("loop", "klein"):
        ell = nvars if w.family == "klein" else w.ell
        if ell is None or not 1 <= ell <= nvars:
            return None
        terms = _cycle_terms(nvars, d, ell)
        terms.update(_pure_powers(nvars, d, ell))
        return Form(n, d, terms)
    return None


def _cycle_smooth(ell: int, d: int) -> bool:
    # x_i dF/dx_i = 0 chains the terms together and leaves F(a) = R * a_{ell-1} a_0
    # with R = sum_i (1-d)^i, and every coordinate of a singular point must be nonzero.
    if d >= 3:
        return True
    # d = 2: the quadratic form of a cycle of length ell is degenerate iff 4 | ell
    return ell < 3 or ell % 4 != 0


def is_smooth_standard(w: Witness) -> bool:
    """Smoothness of the four standard families by the closed-form case analysis.

    General forms are not decided.
    """
    if w.family not in FAMILIES:
        raise UnsupportedError(f"smoothness is only decided for {FAMILIES}, got {w.family!r}")
    expected = _template(w)
    if expected is None or expected != w.form:
        raise UnsupportedError(f"form does not have the standard {w.family} shape")
    d = w.form.d
    if w.family == "fermat":
        return True
    if w.family == "chain":
        # x_0 only occurs in x_0^(d-1) x_1; its partial forces x_0 x_1 = 0 and then the
        # Fermat partials force every other coordinate to vanish.
        return True
    # Loop: the cycle block and the pure-power block share no variables, so a singular
    # point must have all pure-power coordinates zero (their partials are d x_i^(d-1))
    # and be a singular point of the cycle block alone. The split is a reconstruction of
    # the argument for the mixed case; tests certify it with the Jacobian criterion.
    ell = w.form.nvars if w.family == "klein" else w.ell
    return _cycle_smooth(ell, d)


def normalize_signature(s: Signature) -> Signature:
    """Scale by the inverse of the first nonzero entry so that entry becomes 1 (q prime)."""
    if not isprime(s.q):
        raise DomainError(f"normalization needs a prime modulus, got {s.q}")
    for v in s.sigma:
        if v:
            inv = pow(v, -1, s.q)
            return Signature(s.q, tuple(x * inv for x in s.sigma))
    raise DomainError("all-zero signature cannot be normalized")


def invariant_monomials(inst: ProblemInstance | tuple[int, int], s: Signature,
                        target_weight: int = 0, cap: int = MONOMIAL_CAP) -> list[Monomial]:
    """Degree-d monomials of the given weight, i.e. a basis of that eigenspace of S^d."""
    n, d = (inst.n, inst.d) if isinstance(inst, ProblemInstance) else inst
    nvars = n + 2
    if len(s.sigma) != nvars:
        raise DomainError("signature length does not match n + 2")
    target = target_weight % s.q
    return [m for m in monomials(nvars, d, cap) if weight(m, s) == target]


def klein_signature(inst: ProblemInstance, q: int | None = None) -> Signature:
    """(1, 1-d, ..., (1-d)^(n+1)) modulo q, by default q = Phi_{n+2}(1-d)."""
    if q is None:
        q = cyclotomic_value(inst.nvars, inst.base)
    return Signature(q, tuple(pow(inst.base, i, q) for i in range(inst.nvars)))
