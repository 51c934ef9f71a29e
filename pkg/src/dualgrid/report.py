"""Pass/fail reports with witnesses, shared by the labeling and drawing checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: dict[str, Any] | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: dict[str, Any] | None = None) -> None:
        self.checks.append(Check(name, bool(passed), None if passed else witness))

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_json(self) -> dict:
        return {
            "format": 1,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
