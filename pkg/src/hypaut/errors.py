"""Exception hierarchy shared by every module."""


class HypautError(Exception):
    pass


class DomainError(HypautError, ValueError):
    """An input is outside the domain of the operation."""


class ResourceError(HypautError):
    """A configured size or effort cap would be exceeded."""

    def __init__(self, message, cap_name=None, cap=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap = cap


class FactorizationIncomplete(ResourceError):
    """Factoring gave up before finishing.

    ``partial`` maps the primes found so far to their exponents and
    ``cofactor`` is the part of the input that is still unfactored.
    """

    def __init__(self, value, partial, cofactor, effort):
        super().__init__(
            f"factorization of {value} not completed within effort {effort}; "
            f"unfactored cofactor {cofactor}",
            cap_name="HYPAUT_EFFORT",
            cap=effort,
        )
        self.value = value
        self.partial = dict(partial)
        self.cofactor = cofactor


class UnsupportedError(HypautError):
    """The request is well formed but outside what this library decides."""


class InconsistencyError(HypautError):
    """A runtime consistency assertion about a transcribed formula failed."""
