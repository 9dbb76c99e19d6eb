"""Machine-readable fibering certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class Check:
    name: str
    status: str
    data: Any = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "data": _plain(self.data)}


def _plain(obj):
    """Recursively convert to JSON-friendly values (Fractions become strings unless integral)."""
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


@dataclass
class FiberingCertificate:
    manifold: str
    checks: list = field(default_factory=list)
    axioms: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    conclusion: Optional[dict] = None
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, data=None) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, data))
        return ok

    def info(self, name: str, data=None):
        self.checks.append(Check(name, INFO, data))

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def conclude(self, fib: int, statement: str) -> bool:
        """Record Fib(M) = fib, only if every recorded check passed."""
        if not self.all_passed:
            self.conclusion = None
            return False
        self.conclusion = {"fib": fib, "statement": statement}
        return True

    @property
    def fib(self) -> Optional[int]:
        return None if self.conclusion is None else self.conclusion["fib"]

    def check(self, name: str) -> Optional[Check]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "checks": [c.to_dict() for c in self.checks],
            "axioms": list(self.axioms),
            "dims": _plain(self.dims),
            "conclusion": _plain(self.conclusion),
            "notes": list(self.notes),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)
