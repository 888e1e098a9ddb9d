"""Outcome record shared by all property checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

VERDICTS = ("pass", "fail", "inconclusive")


@dataclass
class PropertyReport:
    """Result of one property check.

    ``bounds`` records the search limits so a "pass" is always read as
    "no counterexample within these bounds".  A failing report carries a
    counterexample with enough detail to replay it.
    """

    property: str
    verdict: str
    trials: int = 0
    counterexample: Optional[dict[str, Any]] = None
    seed: Optional[int] = None
    bounds: dict[str, Any] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and self.counterexample is None:
            raise ValueError("failing reports must carry a counterexample")

    def to_json(self) -> dict[str, Any]:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "trials": self.trials,
            "counterexample": self.counterexample,
            "seed": self.seed,
            "bounds": self.bounds,
            "notes": self.notes,
        }

    def text(self) -> str:
        lines = [f"property {self.property}: {self.verdict.upper()} ({self.trials} trials)"]
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        for key, value in sorted(self.bounds.items()):
            lines.append(f"  bound {key}: {value}")
        if self.counterexample:
            lines.append("  counterexample:")
            for key, value in sorted(self.counterexample.items()):
                lines.append(f"    {key}: {value}")
        if self.notes:
            lines.append(f"  note: {self.notes}")
        return "\n".join(lines)
