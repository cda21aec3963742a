"""Check reports shared by all verifier modules.

Every ``check_*`` operation returns a CheckReport: a list of named clauses,
each pass / fail / unwitnessed.  Failing clauses always carry a witness (a
tuple of ids locating the offending cell); unwitnessed clauses carry the
bound that was exhausted.  The cli module serializes these canonically.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
UNWITNESSED = "unwitnessed"


@dataclass
class Clause:
    name: str
    status: str
    witness: Optional[tuple] = None
    detail: str = ""
    bound: Optional[int] = None

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.detail:
            d["detail"] = self.detail
        if self.bound is not None:
            d["bound"] = self.bound
        return d


@dataclass
class CheckReport:
    subject: str
    clauses: list = field(default_factory=list)

    def ok(self, name: str, detail: str = "") -> None:
        self.clauses.append(Clause(name, PASS, detail=detail))

    def fail(self, name: str, witness: tuple, detail: str = "") -> None:
        self.clauses.append(Clause(name, FAIL, witness=witness, detail=detail))

    def unwitnessed(self, name: str, bound: int, detail: str = "") -> None:
        self.clauses.append(Clause(name, UNWITNESSED, bound=bound, detail=detail))

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        for c in other.clauses:
            name = prefix + c.name if prefix else c.name
            self.clauses.append(Clause(name, c.status, c.witness, c.detail, c.bound))

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.clauses)

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.clauses)

    def first_failure(self) -> Optional[Clause]:
        for c in self.clauses:
            if c.status == FAIL:
                return c
        return None

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "clauses": [c.as_dict() for c in self.clauses],
        }

    def __str__(self) -> str:
        lines = [f"report for {self.subject}:"]
        for c in self.clauses:
            tail = ""
            if c.witness is not None:
                tail = f"  witness={c.witness}"
            if c.bound is not None:
                tail += f"  bound={c.bound}"
            if c.detail:
                tail += f"  ({c.detail})"
            lines.append(f"  [{c.status:>11}] {c.name}{tail}")
        return "\n".join(lines)


class CatdefError(Exception):
    """Base for structured errors; carries an optional report."""

    def __init__(self, message: str, report: Optional[CheckReport] = None):
        super().__init__(message)
        self.report = report
