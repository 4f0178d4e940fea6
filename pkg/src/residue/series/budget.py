"""Truncation windows and the escalation policy."""

import os
from dataclasses import dataclass

from ..errors import PrecisionError, PrecisionExhaustedError

ENV_MAX_ESCALATIONS = "RESIDUE_MAX_ESCALATIONS"


@dataclass(frozen=True)
class PrecisionBudget:
    """Widths of the ``u`` window (inner) and the ``g`` window (outer).

    Parameters
    ----------
    inner : int
        Number of ``u``-terms kept past the leading term of a branch.
    outer : int
        Number of ``g``-terms kept in tower expansions.
    factor : int
        Multiplier applied to both widths on each escalation.
    max_escalations : int
        How many times a computation may be retried at a larger budget.
    """

    inner: int = 24
    outer: int = 8
    factor: int = 2
    max_escalations: int = 4

    def __post_init__(self):
        if self.inner < 1 or self.outer < 1:
            raise ValueError("budget widths must be positive")
        if self.factor < 2:
            raise ValueError("escalation factor must be at least 2")
        if self.max_escalations < 0:
            raise ValueError("max_escalations must be non-negative")

    @classmethod
    def from_env(cls, **kwargs):
        """Default budget, with the escalation cap taken from the environment."""
        raw = os.environ.get(ENV_MAX_ESCALATIONS)
        if raw is not None and "max_escalations" not in kwargs:
            kwargs["max_escalations"] = int(raw)
        return cls(**kwargs)

    def escalate(self):
        return PrecisionBudget(
            self.inner * self.factor,
            self.outer * self.factor,
            self.factor,
            self.max_escalations,
        )

    def doubled(self):
        return PrecisionBudget(self.inner * 2, self.outer * 2, self.factor, self.max_escalations)

    def ladder(self):
        """The budgets tried in order: this one, then each escalation."""
        b = self
        yield b
        for _ in range(self.max_escalations):
            b = b.escalate()
            yield b


def with_escalation(budget, compute):
    """Run ``compute(b)`` over ``budget.ladder()`` until it stops raising
    :class:`PrecisionError`."""
    last = None
    for b in budget.ladder():
        try:
            return compute(b)
        except PrecisionError as exc:
            last = exc
    raise PrecisionExhaustedError(
        f"precision exhausted after {budget.max_escalations} escalations: {last}"
    ) from last
