"""Pass/fail reports for axiom sweeps."""
import logging
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ValidationFailed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AxiomResult:
    name: str
    passed: bool
    witness: tuple = ()

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: witness ({', '.join(str(w) for w in self.witness)})"


@dataclass
class ValidationReport:
    """Ordered list of axiom outcomes for one structure."""

    subject: str
    results: list[AxiomResult] = field(default_factory=list)

    def add(self, name: str, witness=None) -> bool:
        """Record an axiom; ``witness`` is None when it holds."""
        if witness is None:
            self.results.append(AxiomResult(name, True))
            return True
        self.results.append(AxiomResult(name, False, tuple(witness)))
        logger.debug(f"{self.subject}: {name} fails at {tuple(witness)}")
        return False

    def check(self, name: str, holds: bool, witness=()) -> bool:
        return self.add(name, None if holds else witness)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.witness))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def first_failure(self) -> AxiomResult | None:
        for r in self.results:
            if not r.passed:
                return r
        return None

    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def raise_if_failed(self) -> "ValidationReport":
        if not self.ok:
            logger.warning(f"Validation of {self.subject} failed: {self.first_failure().line()}")
            raise ValidationFailed(self)
        return self

    def __bool__(self) -> bool:
        return self.ok


def first_witness(mask: np.ndarray, names) -> tuple | None:
    """Names at the first True position of a violation mask, or None."""
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(names[int(i)] for i in hits[0])
