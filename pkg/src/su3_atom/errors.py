"""
Exception hierarchy for the su3-atom package.
"""


class Su3AtomError(Exception):
    """Base class for every error raised by su3-atom."""


class DomainError(Su3AtomError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateManifoldError(DomainError):
    """The quantized manifold has Omega_nm = 0, so no dressed basis exists."""


class ContractViolation(Su3AtomError, ValueError):
    """A caller broke an input contract, e.g. passed unnormalized amplitudes."""


class OracleQualityError(Su3AtomError):
    """A numerical oracle drifted too far to be trusted."""


class DiagnosticError(Su3AtomError):
    """A diagnostic could not be computed from the data it was given."""


class UsageError(Su3AtomError, ValueError):
    """Invalid run configuration or inconsistent request."""


class TraceIOError(Su3AtomError, OSError):
    """A trace file or trace store could not be written."""
