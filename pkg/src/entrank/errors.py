"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: SpecError and MathDomainError to 2,
ResourceLimitError to 3, ConsistencyError to 4.
"""


class EntrankError(Exception):
    pass


class SpecError(EntrankError):
    """Invalid action specification (schema violation, bad field data, ...)."""


class MathDomainError(EntrankError):
    """Mathematically undefined request (n = 0, non-mixing direction, x = 0)."""


class UnsupportedPrimeError(EntrankError):
    """Prime fails the p-maximality check; place data would be unreliable."""


class ResourceLimitError(EntrankError):
    """A configured budget (lattice points, basis size, degree cap) was hit."""


class ConsistencyError(EntrankError):
    """Two internally redundant computations disagreed; indicates a bug."""
