"""
Exception hierarchy shared by the solver, the verifier and the CLI
"""

from typing import Optional


class CertificateError(Exception):
    """Base class for every error raised by this package"""


class ContractViolation(CertificateError, ValueError):
    "Raised when a caller breaks an operation's precondition (shape, sign, emptiness)."


class DimensionMismatch(ContractViolation):
    "Raised when vectors, matrices or polyhedra of different ambient dimension are combined."


class UnboundedWithoutBox(CertificateError):
    "Raised when vertices or minima of an unbounded polyhedron are requested without box bounds."


class NotFullDimensional(CertificateError):
    "Raised when an operation needs a full-dimensional polyhedron (e.g. facets)."


class DegenerateCut(CertificateError):
    "Raised when a certificate polyhedron is not full-dimensional, so strict satisfaction is not its interior."


class PreconditionViolated(CertificateError):
    "Raised when an operation is called on data that does not satisfy its stated precondition."


class BoxTooLarge(CertificateError):
    "Raised when an integer box holds more points than the configured enumeration cap."


class EmptyRegion(CertificateError):
    "Raised when a minimization or grid scan runs over an empty region."


class EmptySet(CertificateError):
    "Raised when a brute-force scan is asked for the minimum over an empty set."


class VNotSubsetOfS(CertificateError):
    "Raised when the V-condition is checked for points that are not in S."


class InternalInvariantBroken(CertificateError):
    """
    Raised when a property that always holds for a correct implementation fails
    (pairwise separation, V-condition, iteration bound). Indicates a bug.
    """


class MixedIntegerNotSupported(CertificateError):
    "Raised for sets with continuous factors, which cannot be enumerated."


class DocumentError(CertificateError):
    """Raised when an instance, certificate or witness document is malformed"""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
        self.reason = message


class UsageError(CertificateError):
    "Raised for malformed command lines (unknown flags, missing arguments)."
