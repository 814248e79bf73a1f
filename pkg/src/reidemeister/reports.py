"""Pass/fail records returned by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    """Outcome of one verification.

    ``values`` holds the quantities compared; ``witness`` pins down the first
    failure (element indices, class ids, ...) and is None when the check passes.
    """

    name: str
    passed: bool
    values: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        out = {"name": self.name, "passed": self.passed, "values": self.values}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        vals = ", ".join(f"{k}={v}" for k, v in self.values.items())
        tail = f" witness={self.witness}" if self.witness else ""
        return f"[{status}] {self.name}: {vals}{tail}"
