"""Exception types and the verdict container shared across modules."""

from __future__ import annotations

from dataclasses import dataclass, field


class EnclosureError(Exception):
    """Base class for every error raised by this package."""


class InfeasibleError(EnclosureError):
    """A counting condition needed by an extension step does not hold."""


class OutOfRegimeError(EnclosureError):
    """Parameters fall outside the ranges the constructions are proven for."""


class DecisionFailedError(EnclosureError):
    """The necessary and sufficient conditions reject the instance."""

    def __init__(self, decision):
        super().__init__(f"conditions failed: {', '.join(decision.failed())}")
        self.decision = decision


class ConstructionError(EnclosureError):
    """A construction stage failed although the theory says it cannot.

    Always a bug; ``stage`` names the pipeline step that broke.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class NotStrongError(ValueError):
    """A Hamiltonian enclosure was asked for an input class containing a cycle.

    Such an input has no Hamiltonian enclosure at all: a cycle inside a class
    can never become part of a spanning cycle on more vertices.
    """


class GenerationError(EnclosureError):
    """Random instance generation gave up after its retry budget."""


@dataclass
class Report:
    """Outcome of a verifier: ``ok`` iff no failure was recorded."""

    failures: list[str] = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def require(self, cond: bool, message: str) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(message)
        return cond

    def __bool__(self) -> bool:
        return self.ok
