"""Jacobian rings of Klein hypersurfaces and the intermediate-Jacobian data built from them.

Graded pieces R^l = S^l / J^l are computed by exact integer elimination.  When
the form is invariant under a diagonal signature the matrix splits into one
block per weight, which is what keeps the larger cases cheap.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from dataclasses import dataclass, field

from .admissible import ProblemInstance, extremal_report
from .cyclotomic import cyclotomic_value
from .errors import DomainError, ResourceError, UnsupportedError
from .forms import Form, Monomial, Signature, grlex_key, is_invariant, monomial_count, monomials
from .linalg import bareiss_echelon

BLOCK_CAP = 4_000_000

# The p.p.a.v. cases with n >= 2.  Values are the degree of the Jacobian-ring piece
# used as the tangent space.  For (3, 4) this is degree 3, i.e. r = 2 in
# H^{n+1-r, r-1} = R^{rd-n-2}; the other two use r = 3.
PPAV_TANGENT_DEGREE = {(3, 3): 4, (5, 3): 2, (3, 4): 3}


def jacobian_generators(f: Form) -> list[Form]:
    """The n+2 partial derivatives dF/dx_i."""
    out = []
    for i in range(f.nvars):
        terms: dict[Monomial, int] = {}
        for m, c in f.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + c * m[i]
        out.append(Form(f.n, f.d - 1, terms))
    return out


@dataclass(frozen=True)
class GradedPieceReport:
    l: int
    ambient_dim: int
    ideal_rank: int
    quotient_dim: int
    basis: tuple[Monomial, ...]
    weight_dims: dict[int, int] | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "ambient_dim": self.ambient_dim,
            "ideal_rank": self.ideal_rank,
            "quotient_dim": self.quotient_dim,
            "basis": [list(m) for m in self.basis],
        }


def _trivial_signature(f: Form) -> Signature:
    return Signature(2, (0,) * f.nvars)


def _ideal_blocks(f: Form, l: int, s: Signature):
    """Columns (degree-l monomials) and rows (m * dF/dx_i) grouped by weight."""
    cols: dict[int, list[Monomial]] = defaultdict(list)
    for mono in monomials(f.nvars, l):
        w = sum(a * b for a, b in zip(mono, s.sigma)) % s.q
        cols[w].append(mono)
    rows: dict[int, list[dict[Monomial, int]]] = defaultdict(list)
    for i, g in enumerate(jacobian_generators(f)):
        if g.is_zero():
            continue
        gw = (-s.sigma[i]) % s.q
        for mono in monomials(f.nvars, l - (f.d - 1)):
            w = (gw + sum(a * b for a, b in zip(mono, s.sigma))) % s.q
            row = {}
            for gm, c in g.terms.items():
                row[tuple(a + b for a, b in zip(gm, mono))] = c
            rows[w].append(row)
    return cols, rows


def _block_basis(cols: list[Monomial], rows: list[dict], reverse: bool, cap: int):
    order = sorted(cols, key=grlex_key, reverse=reverse)
    if len(order) * len(rows) > cap:
        raise ResourceError(
            f"elimination block {len(rows)}x{len(order)} exceeds cap {cap}", "block_cap", cap
        )
    index = {m: j for j, m in enumerate(order)}
    dense = []
    for r in rows:
        v = [0] * len(order)
        for m, c in r.items():
            v[index[m]] = c
        dense.append(v)
    rank, pivots = bareiss_echelon(dense, len(order))
    piv = set(pivots)
    return rank, [m for j, m in enumerate(order) if j not in piv]


def _socle_degree(f: Form) -> int:
    return f.nvars * (f.d - 2)


def graded_piece(f: Form, l: int, signature: Signature | None = None, *,
                 reverse: bool = False, cap: int = BLOCK_CAP) -> GradedPieceReport:
    """Dimension and a monomial basis of R_F^l.

    The basis is the set of non-pivot columns when the columns are scanned in
    graded-lex order (``reverse=True`` scans the opposite way).  Passing a
    signature under which f is invariant splits the work by weight.
    """
    if l < 0:
        raise DomainError("degree must be >= 0")
    s = _trivial_signature(f) if signature is None else signature
    if signature is not None and not is_invariant(f, s):
        raise DomainError("form is not invariant under the given signature")
    ambient = monomial_count(f.nvars, l)
    top = _socle_degree(f) + 1
    if f.d >= 2 and not f.is_zero() and l > top:
        # m^top inside J forces m^l inside J for every l >= top
        if graded_piece(f, top, signature, reverse=reverse, cap=cap).quotient_dim == 0:
            return GradedPieceReport(l, ambient, ambient, 0, (), {} if signature else None)
    cols, rows = _ideal_blocks(f, l, s)
    total_rank = 0
    basis: list[Monomial] = []
    weight_dims = {}
    for w in sorted(cols):
        rank, free = _block_basis(cols[w], rows.get(w, []), reverse, cap)
        total_rank += rank
        basis.extend(free)
        if free:
            weight_dims[w] = len(free)
    basis.sort(key=grlex_key)
    return GradedPieceReport(l, ambient, total_rank, ambient - total_rank, tuple(basis),
                             weight_dims if signature is not None else None)


def weighted_quotient_dims(f: Form, s: Signature, l: int, *, reverse: bool = False) -> dict[int, int]:
    """Dimension of each weight space of R_F^l (weights with dimension 0 omitted)."""
    if not is_invariant(f, s):
        raise DomainError("form is not invariant under the given signature")
    return dict(graded_piece(f, l, s, reverse=reverse).weight_dims)


def independent_modulo_ideal(f: Form, l: int, candidates: list[Monomial]) -> bool:
    """Whether the given degree-l monomials are linearly independent in R_F^l."""
    cols = list(monomials(f.nvars, l))
    index = {m: j for j, m in enumerate(cols)}
    base_rows = []
    for g in jacobian_generators(f):
        for mono in monomials(f.nvars, l - (f.d - 1)):
            v = [0] * len(cols)
            for gm, c in g.terms.items():
                v[index[tuple(a + b for a, b in zip(gm, mono))]] = c
            base_rows.append(v)
    r0, _ = bareiss_echelon([list(v) for v in base_rows], len(cols))
    extra = []
    for m in candidates:
        v = [0] * len(cols)
        v[index[tuple(m)]] = 1
        extra.append(v)
    r1, _ = bareiss_echelon(base_rows + extra, len(cols))
    return r1 == r0 + len(candidates)


def klein_polynomial(n: int, d: int) -> Form:
    nvars = n + 2
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] += d - 1
        e[(i + 1) % nvars] += 1
        terms[tuple(e)] = 1
    return Form(n, d, terms)


def klein_grading(inst: ProblemInstance) -> Signature | None:
    """A signature making the Klein form invariant: powers of 1-d modulo |Phi_{n+2}(1-d)|."""
    q = abs(cyclotomic_value(inst.nvars, inst.base))
    if q < 2:
        return None
    return Signature(q, tuple(pow(inst.base, i, q) for i in range(inst.nvars)))


def middle_cohomology_dim(inst: ProblemInstance) -> int:
    """((d-1)^(n+2) + (-1)^n (d-1)) / d.

    For even n this counts primitive cohomology only.
    """
    n, d = inst.n, inst.d
    num = (d - 1) ** (n + 2) + (-1) ** n * (d - 1)
    if num % d:
        raise AssertionError(f"middle cohomology formula is not integral for (n, d) = ({n}, {d})")
    if n % 2 == 0:
        warnings.warn("for even n the formula gives the primitive middle cohomology",
                      stacklevel=2)
    return num // d


def hodge_piece_dim(inst: ProblemInstance, r: int) -> int:
    """dim H^{n+1-r, r-1} of the Klein hypersurface, as dim R^{rd-n-2}."""
    if r < 1:
        raise DomainError("r must be >= 1")
    l = r * inst.d - inst.n - 2
    if l < 0:
        return 0
    return graded_piece(klein_polynomial(inst.n, inst.d), l, klein_grading(inst)).quotient_dim


@dataclass(frozen=True)
class CMType:
    p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted(e % self.p for e in self.exponents)))

    def xi_notation(self) -> str:
        return "{" + ", ".join(f"xi^{e}" for e in self.exponents) + "}"


def cm_check(c: CMType) -> bool:
    """Whether C and -C partition {1, ..., p-1}."""
    s = set(c.exponents)
    if len(s) != len(c.exponents) or 0 in s:
        return False
    neg = {(-e) % c.p for e in s}
    return not (s & neg) and (s | neg) == set(range(1, c.p))


def stabilizer_subgroup(c: CMType) -> list[int]:
    s = set(c.exponents)
    return [a for a in range(1, c.p) if {a * e % c.p for e in s} == s]


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def galois_permutation(c: CMType, k: int) -> list[tuple[int, ...]]:
    """Cycles of e -> k*e mod p on C, each starting at its least element, sorted."""
    k %= c.p
    if k not in stabilizer_subgroup(c):
        raise DomainError(f"{k} does not stabilize the CM type")
    seen: set[int] = set()
    cycles = []
    for e in c.exponents:
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        x = k * e % c.p
        while x != e:
            cyc.append(x)
            seen.add(x)
            x = k * x % c.p
        cycles.append(_canonical_cycle(cyc))
    return sorted(cycles)


def render_cycles(cycles) -> str:
    return "".join("(" + ",".join(str(e) for e in cyc) + ")" for cyc in cycles)


def same_cycle_up_to_rotation(a, b) -> bool:
    return len(a) == len(b) and _canonical_cycle(list(a)) == _canonical_cycle(list(b))


def same_cycles_up_to_rotation(a, b) -> bool:
    return sorted(_canonical_cycle(list(x)) for x in a) == sorted(_canonical_cycle(list(x)) for x in b)


def permutation_order(cycles) -> int:
    return math.lcm(*(len(c) for c in cycles)) if cycles else 1


def permutation_eigen_multiplicities(cycles, m: int) -> list[int]:
    """Multiplicity of each zeta^j (zeta a primitive m-th root) in the permutation's spectrum."""
    mult = [0] * m
    for cyc in cycles:
        length = len(cyc)
        if m % length:
            raise DomainError(f"cycle length {length} does not divide the order {m}")
        step = m // length
        for j in range(length):
            mult[j * step] += 1
    return mult


def fixed_component_dimension(mults: list[int], m: int) -> int:
    """Dimension of the component of Sing A_g for a symplectic automorphism of order m
    whose tangent action has eigenvalue multiplicities ``mults``.

    Counts invariant quadratic forms: pairs of eigenvalues zeta^a, zeta^b with
    a + b = 0 mod m contribute m_a * m_b, self-paired ones m_a (m_a + 1) / 2.
    """
    if len(mults) != m:
        raise DomainError("need one multiplicity per eigenvalue")
    total = 0
    for a in range(m):
        b = (-a) % m
        if a < b:
            total += mults[a] * mults[b]
        elif a == b:
            total += mults[a] * (mults[a] + 1) // 2
    return total


@dataclass(frozen=True)
class SingularityType:
    p: int
    weights: tuple[int, ...]
    n: int | None = None
    d: int | None = None

    def __post_init__(self):
        w = tuple(x % self.p for x in self.weights)
        if 0 in w:
            raise DomainError("a zero weight would make the action a pseudo-reflection")
        object.__setattr__(self, "weights", w)

    def __str__(self) -> str:
        return f"1/{self.p}(" + ",".join(str(w) for w in self.weights) + ")"


def quotient_singularity_type(inst: ProblemInstance, p: int) -> SingularityType:
    """Type 1/p((1-d)^2 - 1, ..., (1-d)^(n+1) - 1) of the fixed points of the Klein quotient."""
    if p < 2:
        raise DomainError("p must be >= 2")
    if pow(inst.base, inst.nvars, p) != 1:
        raise DomainError(f"the Klein signature is not an automorphism modulo {p}")
    weights = tuple((pow(inst.base, j, p) - 1) % p for j in range(2, inst.n + 2))
    return SingularityType(p, weights, inst.n, inst.d)


def is_gorenstein(t: SingularityType) -> tuple[bool, int]:
    """Gorenstein iff the weights sum to 0 mod p; returns (verdict, weight sum mod p)."""
    defect = sum(t.weights) % t.p
    if t.n is not None and t.d is not None:
        inst = ProblemInstance(t.n, t.d)
        rep = extremal_report(inst)
        if rep.exists and rep.phi_value == t.p:
            closed = (t.d - t.n - 2) % t.p
            assert defect == closed, f"weight sum {defect} disagrees with d - n - 2 = {closed}"
    return defect == 0, defect


@dataclass(frozen=True)
class PpavReport:
    n: int
    d: int
    g: int
    p: int
    extremal: bool
    jacobian_degree: int
    hodge_labels: tuple[str, ...]
    spectrum: CMType
    cm: bool
    stabilizer: tuple[int, ...]
    stabilizer_element: int | None = None
    permutation_cycles: tuple[tuple[int, ...], ...] = ()
    permutation_order: int | None = None
    eigen_multiplicities: tuple[int, ...] = ()
    component_dimension: int | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "g": self.g,
            "p": self.p,
            "extremal": self.extremal,
            "jacobian_degree": self.jacobian_degree,
            "hodge_labels": list(self.hodge_labels),
            "spectrum": list(self.spectrum.exponents),
            "spectrum_xi": self.spectrum.xi_notation(),
            "cm_type": self.cm,
            "stabilizer": list(self.stabilizer),
            "stabilizer_element": self.stabilizer_element,
            "permutation_cycles": [list(c) for c in self.permutation_cycles],
            "permutation": render_cycles(self.permutation_cycles),
            "permutation_order": self.permutation_order,
            "eigen_multiplicities": list(self.eigen_multiplicities),
            "component_dimension": self.component_dimension,
        }


def _gate(inst: ProblemInstance) -> int:
    key = (inst.n, inst.d)
    if key not in PPAV_TANGENT_DEGREE:
        raise UnsupportedError(
            f"(n, d) = {key}: the intermediate Jacobian is a nontrivial p.p.a.v. with n >= 2 "
            "only for (3, 3), (3, 4) and (5, 3)"
        )
    return PPAV_TANGENT_DEGREE[key]


def _hodge_labels(inst: ProblemInstance, l: int) -> tuple[str, ...]:
    # R^l is H^{n+1-r, r-1} when l = rd - n - 2; the conjugate piece has the same dimension
    r, rem = divmod(l + inst.n + 2, inst.d)
    if rem:
        return ()
    a, b = inst.n + 1 - r, r - 1
    return (f"H^{{{a},{b}}}", f"H^{{{b},{a}}}")


def ppav_spectrum(inst: ProblemInstance) -> PpavReport:
    l = _gate(inst)
    rep = extremal_report(inst)
    if not rep.exists:
        raise UnsupportedError(f"no extremal prime for (n, d) = ({inst.n}, {inst.d})")
    p = rep.phi_value
    sig = Signature(p, tuple(pow(inst.base, i, p) for i in range(inst.nvars)))
    dims = weighted_quotient_dims(klein_polynomial(inst.n, inst.d), sig, l)
    g = sum(dims.values())
    if any(v != 1 for v in dims.values()):
        raise AssertionError(f"spectrum has repeated eigenvalues: {dims}")
    spectrum = CMType(p, tuple(dims))
    cm = cm_check(spectrum)
    if not cm:
        raise AssertionError("spectrum is not a CM type")
    if p != 2 * g + 1:
        raise AssertionError(f"p = {p} is not 2g + 1 = {2 * g + 1}")
    return PpavReport(inst.n, inst.d, g, p, True, l, _hodge_labels(inst, l), spectrum, cm,
                      tuple(stabilizer_subgroup(spectrum)))


def ppav_full_report(inst: ProblemInstance, k: int | None = None) -> PpavReport:
    """Spectrum, CM type, stabilizer, induced permutation and component dimension.

    ``k`` defaults to the smallest nontrivial element of the stabilizer.
    """
    base = ppav_spectrum(inst)
    stab = base.stabilizer
    if k is None:
        nontrivial = [a for a in stab if a != 1]
        if not nontrivial:
            raise UnsupportedError("the CM type has trivial stabilizer")
        k = nontrivial[0]
    cycles = galois_permutation(base.spectrum, k)
    order = permutation_order(cycles)
    mults = permutation_eigen_multiplicities(cycles, order)
    dim = fixed_component_dimension(mults, order)
    return PpavReport(
        base.n, base.d, base.g, base.p, base.extremal, base.jacobian_degree, base.hodge_labels,
        base.spectrum, base.cm, stab, k % base.p, tuple(cycles), order, tuple(mults), dim,
    )
