"""Step traces and run results shared by the Fun and Core evaluators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

OK = "ok"
STUCK = "stuck"
FUEL = "fuel"


@dataclass(frozen=True)
class TraceStep:
    index: int
    rule: str
    term: str  # the term (or statement) after this step, printed


@dataclass
class RunResult:
    """Outcome of iterating a step function.

    ``status`` is ``ok`` (reached a value / terminal statement), ``stuck`` or
    ``fuel`` (budget exhausted; ``final`` is the last term reached).
    """

    status: str
    final: Any
    steps: int
    trace: list[TraceStep] = field(default_factory=list)
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == OK

    def rules(self) -> list[str]:
        return [s.rule for s in self.trace]

    def to_json(self, result_text: str) -> dict:
        return {
            "steps": [{"i": s.index, "rule": s.rule, "term": s.term} for s in self.trace],
            "result": result_text,
            "status": self.status,
        }
