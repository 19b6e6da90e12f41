"""Machine-readable outcome of a verification run."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Discrepancy:
    location: dict[str, Any]
    exponent: Optional[int]
    lhs_coefficient: int
    rhs_coefficient: int

    def to_dict(self) -> dict:
        return {
            "location": self.location,
            "exponent": self.exponent,
            # decimal strings: counts and coefficients are unbounded integers
            "lhs_coefficient": str(self.lhs_coefficient),
            "rhs_coefficient": str(self.rhs_coefficient),
        }


@dataclass
class VerificationReport:
    check_name: str
    parameters: dict[str, Any]
    passed: bool
    first_discrepancy: Optional[Discrepancy] = None
    elapsed_ms: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.passed != (self.first_discrepancy is None):
            raise ValueError("a report passes exactly when it has no discrepancy")

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self, include_timing: bool = False) -> dict:
        out: dict[str, Any] = {
            "check": self.check_name,
            "parameters": self.parameters,
            "pass": self.passed,
            "first_discrepancy": (self.first_discrepancy.to_dict()
                                  if self.first_discrepancy else None),
        }
        if self.details:
            out["details"] = self.details
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        line = f"{status}  {self.check_name}({params})"
        d = self.first_discrepancy
        if d is not None:
            line += (f"  first discrepancy at {d.location}"
                     f" exponent={d.exponent} lhs={d.lhs_coefficient} rhs={d.rhs_coefficient}")
        return line


class Stopwatch:
    def __init__(self) -> None:
        self._t0 = time.perf_counter()

    def ms(self) -> int:
        return int((time.perf_counter() - self._t0) * 1000)


def report(check_name: str, parameters: dict[str, Any], watch: Stopwatch,
           discrepancy: Optional[Discrepancy] = None, **details: Any) -> VerificationReport:
    return VerificationReport(check_name, parameters, discrepancy is None, discrepancy,
                              watch.ms(), dict(details))


def combine(check_name: str, parameters: dict[str, Any],
            parts: list[VerificationReport], watch: Stopwatch) -> VerificationReport:
    """Fold sub-reports into one; the first failing part supplies the discrepancy."""
    first = None
    for part in parts:
        if not part.passed:
            d = part.first_discrepancy
            first = Discrepancy({"check": part.check_name, **part.parameters, **d.location},
                                d.exponent, d.lhs_coefficient, d.rhs_coefficient)
            break
    return report(check_name, parameters, watch, first, checked=len(parts))
