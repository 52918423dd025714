from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Check:
    """One named pass/fail comparison.

    ``margin`` is signed so that a positive value means headroom. Checks the
    inputs cannot decide are kept with ``applicable=False`` and count as passed.
    """

    name: str
    passed: bool
    value: Optional[float] = None
    required: Optional[float] = None
    margin: Optional[float] = None
    applicable: bool = True
    note: str = ""

    @classmethod
    def not_applicable(cls, name, note=""):
        return cls(name=name, passed=True, applicable=False, note=note)

    @property
    def status(self):
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "FAIL"
