"""Decision traces for branch-counted solvers.

A solver threads a ``BranchTrace`` through its control flow and records every
data-dependent decision node (seed-sector tests, degenerate-case tests).
Loop iterations and convergence checks are bookkeeping, not decisions, and
are tallied separately as computation steps.  Tracing is optional: all
recording helpers accept ``trace=None`` and solvers produce bit-identical
numbers either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .complexity import smale_bound


@dataclass(frozen=True)
class Decision:
    label: str
    value: bool


@dataclass
class BranchTrace:
    """Append-only record of the decisions one solver run took."""

    decisions: list[Decision] = field(default_factory=list)
    computation_count: int = 0

    def record(self, label: str, value: bool) -> bool:
        self.decisions.append(Decision(label, bool(value)))
        return bool(value)

    def note_computation(self, steps: int = 1) -> None:
        self.computation_count += steps

    @property
    def branch_count(self) -> int:
        return len(self.decisions)

    def labels(self) -> list[str]:
        return [d.label for d in self.decisions]


def record_decision(trace: BranchTrace | None, label: str, value: bool) -> bool:
    """Record a decision node and hand the predicate back for inline use."""
    if trace is not None:
        return trace.record(label, value)
    return bool(value)


def worst_case_branches(traces: list[BranchTrace]) -> int:
    """Maximum decision count over a collection of runs."""
    if not traces:
        raise ValueError("no traces to measure")
    return max(t.branch_count for t in traces)


def distinct_decision_labels(traces: list[BranchTrace]) -> int:
    """Number of distinct decision labels seen across runs.

    Reported alongside the per-run maximum: the per-run count measures the
    depth of one computation path, this measures how many different decision
    sites the suite exercised.
    """
    if not traces:
        raise ValueError("no traces to measure")
    seen: set[str] = set()
    for t in traces:
        seen.update(t.labels())
    return len(seen)


@dataclass(frozen=True)
class ComplexityReport:
    """Measured branching of a solver family next to its lower bound."""

    degree: int
    measured_branches: int
    smale_lower_bound: float
    bound_satisfied: bool

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "measured_branches": self.measured_branches,
            "smale_lower_bound": self.smale_lower_bound,
            "bound_satisfied": self.bound_satisfied,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def make_report(degree: int, measured_branches: int) -> ComplexityReport:
    """Pair a measured worst-case branch count with the degree's lower bound.

    ``bound_satisfied`` is the strict inequality measured > bound.
    """
    if degree < 2:
        raise ValueError("bound undefined below degree 2")
    if measured_branches < 0:
        raise ValueError("measured_branches must be nonnegative")
    bound = smale_bound(degree)
    return ComplexityReport(
        degree=degree,
        measured_branches=measured_branches,
        smale_lower_bound=bound,
        bound_satisfied=measured_branches > bound,
    )
