"""Structured outcomes of verification checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Witness:
    """One concrete disagreement: where, and what the two sides were."""
    level: int
    label: str
    left: object
    right: object

    def to_dict(self):
        return {"level": self.level, "label": self.label,
                "left": str(self.left), "right": str(self.right)}


@dataclass
class VerificationReport:
    check_name: str
    objects: list = field(default_factory=list)
    max_level: int = 0
    status: str = "pass"  # pass | fail | skipped
    reason: str = ""
    witnesses: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.status == "pass"

    def fail(self, level, label, left, right):
        self.status = "fail"
        self.witnesses.append(Witness(level, label, left, right))

    def finish(self):
        if self.status == "fail" and not self.witnesses:
            raise AssertionError("fail status requires a witness")
        if self.status == "pass" and self.witnesses:
            raise AssertionError("pass status forbids witnesses")
        return self

    def to_dict(self):
        return {
            "check": self.check_name,
            "objects": list(self.objects),
            "max_level": self.max_level,
            "status": self.status,
            "reason": self.reason,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }
