"""Prime orders of automorphisms of smooth projective hypersurfaces.

Admissible-prime arithmetic, Klein and Fermat-type witness forms, graded
pieces of Jacobian rings and the intermediate-Jacobian reports for the
three principally polarized cases.
"""

__version__ = "0.1.0"

from .admissible import (
    AdmissibilityVerdict,
    ExtremalReport,
    Interpretation,
    ProblemInstance,
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
)
from .arith import Factorization, factorize, is_prime, multiplicative_order
from .cyclotomic import IntPolynomial, cyclotomic_poly, cyclotomic_value
from .errors import (
    DomainError,
    FactorizationIncomplete,
    HypautError,
    InconsistencyError,
    ResourceError,
    UnsupportedError,
)
from .forms import Form, Signature, Witness, klein_form, witness_for_prime
from .jacobian import graded_piece, ppav_full_report, quotient_singularity_type

__all__ = [
    "AdmissibilityVerdict", "DomainError", "ExtremalReport", "Factorization",
    "FactorizationIncomplete", "Form", "HypautError", "InconsistencyError",
    "IntPolynomial", "Interpretation", "ProblemInstance", "ResourceError",
    "Signature", "UnsupportedError", "Verdict", "Witness", "admissible_primes",
    "admissible_primes_sieve", "check_gorinov_conjecture", "cyclotomic_poly",
    "cyclotomic_value", "extremal_report", "factorize", "gorinov_bound",
    "graded_piece", "is_admissible_prime", "is_prime", "is_realizable_order",
    "klein_form", "max_admissible_prime", "multiplicative_order",
    "new_admissible_prime", "ppav_full_report", "prime_order_upper_bound",
    "quotient_singularity_type", "witness_for_prime",
]
