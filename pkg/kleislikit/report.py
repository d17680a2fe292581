from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .exceptions import LawViolationError, StructuralError


@dataclass
class ValidationReport:
    """
    Outcome of a law check.

    Structural entries describe malformed tables (dangling ids, wrong typing of
    table keys); violations describe laws that fail on well-formed data.
    An empty report means the subject is valid.
    """
    subject: str
    structural: List[Dict[str, Any]] = field(default_factory=list)
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def add_structural(self, message: str, **detail: Any) -> None:
        entry = {"message": message}
        entry.update(detail)
        self.structural.append(entry)

    def add_violation(self, law: str, **detail: Any) -> None:
        entry = {"law": law}
        entry.update(detail)
        self.violations.append(entry)

    def merge(self, other: "ValidationReport", prefix: Optional[str] = None) -> "ValidationReport":
        for entry in other.structural:
            self.structural.append(dict(entry, where=prefix or other.subject))
        for entry in other.violations:
            self.violations.append(dict(entry, where=prefix or other.subject))
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "structural": list(self.structural),
            "violations": list(self.violations),
        }

    def raise_for_violations(self) -> None:
        if self.structural:
            first = self.structural[0]
            raise StructuralError(f"{self.subject}: {first['message']}")
        if self.violations:
            laws = sorted({v["law"] for v in self.violations})
            raise LawViolationError(
                f"{self.subject}: {len(self.violations)} violation(s) of {', '.join(laws)}",
                report=self,
            )
