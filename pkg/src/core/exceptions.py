"""
Custom exceptions for the rmwb workbench.

This module provides a standardized exception hierarchy so that the library
can fail with a precise technical message while the command line prints a
short user-facing line and picks the right exit code.
"""


class WorkbenchError(Exception):
    """Base exception for workbench errors."""

    def __init__(self, message: str, user_message: str | None = None) -> None:
        """
        Initialize workbench error.

        Args:
            message: Technical error message for logging
            user_message: One-line message printed by the CLI (optional)
        """
        super().__init__(message)
        self.user_message = user_message or message


class CycleDetected(WorkbenchError):
    """Raised when a cover relation contains a directed cycle."""

    def __init__(self, cycle: list) -> None:
        self.cycle = list(cycle)
        path = " < ".join(str(c) for c in self.cycle)
        super().__init__(
            f"Cover relation has a cycle: {path}",
            user_message=f"Error: cover relation has a cycle ({path})",
        )


class UnknownName(WorkbenchError):
    """Raised when a name does not denote an element of the carrier."""

    def __init__(self, name: str, where: str = "carrier") -> None:
        self.name = name
        super().__init__(
            f"Unknown name {name!r} in {where}",
            user_message=f"Error: unknown element {name!r}",
        )


class NotAPartialOrder(WorkbenchError):
    """Raised when a relation is not reflexive, antisymmetric and transitive."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class NotALattice(WorkbenchError):
    """Raised when a pair of elements has no meet or no join."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class NotAnUpSet(WorkbenchError):
    """Raised when a subset that must be upward closed is not."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class CarrierTooLarge(WorkbenchError):
    """Raised when a carrier exceeds the configured size limit."""

    def __init__(self, size: int, limit: int, what: str = "carrier") -> None:
        self.size = size
        self.limit = limit
        super().__init__(
            f"{what} has {size} elements, limit is {limit}",
            user_message=f"Error: {what} too large ({size} > {limit})",
        )


class NotResiduated(WorkbenchError):
    """Raised when a multiplication table has no residual."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class UnknownBuiltin(WorkbenchError):
    """Raised for a builtin name the workbench does not know."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(
            f"Unknown builtin {name!r}",
            user_message=f"Error: unknown builtin {name!r}",
        )


class SignatureError(WorkbenchError):
    """Raised when a structure lacks an operation or constant its profile needs."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class NotASubalgebra(WorkbenchError):
    """Raised when a subset is not closed under the operations."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")


class ConeNotBrouwerian(WorkbenchError):
    """Raised when multiplication differs from meet on a negative cone."""

    def __init__(self, witness: tuple) -> None:
        self.witness = witness
        super().__init__(
            f"Multiplication differs from meet on the negative cone at {witness}",
            user_message="Error: negative cone is not Brouwerian",
        )


class NotCovering(WorkbenchError):
    """Raised when U and V do not cover the space."""

    def __init__(self, missing: list) -> None:
        self.missing = list(missing)
        super().__init__(
            f"U and V do not cover the space, missing {self.missing}",
            user_message="Error: U and V must cover the space",
        )


class NotOdd(WorkbenchError):
    """Raised when an algebra required to be odd has neg(t) != t."""

    def __init__(self, name: str) -> None:
        super().__init__(
            f"Algebra {name!r} is not odd",
            user_message=f"Error: {name} is not odd (neg t differs from t)",
        )


class ValidationFailed(WorkbenchError):
    """Raised when a structure promised to be valid fails an axiom."""

    def __init__(self, report) -> None:
        self.report = report
        first = report.first_failure()
        where = f"{first.name} at {first.witness}" if first else "unknown axiom"
        super().__init__(
            f"{report.subject}: axiom {where} fails",
            user_message=f"FAIL {report.subject}: {where}",
        )


class OracleMismatch(WorkbenchError):
    """Raised when a closed form disagrees with its brute-force oracle."""

    def __init__(self, what: str, expected, got) -> None:
        self.expected = expected
        self.got = got
        super().__init__(
            f"{what}: closed form gives {got}, brute force gives {expected}",
            user_message=f"FAIL {what}: closed form disagrees with brute force",
        )


class ParseError(WorkbenchError):
    """Raised when an input file cannot be parsed."""

    def __init__(self, message: str, line_no: int | None = None) -> None:
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(
            f"{where}{message}",
            user_message=f"Parse error: {where}{message}",
        )


class ConfigurationError(WorkbenchError):
    """Raised when configuration is invalid."""

    def __init__(self, message: str) -> None:
        super().__init__(message, user_message=f"Error: {message}")
