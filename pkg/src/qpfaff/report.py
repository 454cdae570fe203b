"""Outcome record for one identity check."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass

__all__ = ["Report", "REPORT_KEYS", "stopwatch"]

REPORT_KEYS = ("identity", "size", "regime", "holds", "residual_terms", "elapsed_ms")


@dataclass(frozen=True)
class Report:
    identity: str
    size: int
    regime: str
    holds: bool
    residual_terms: int
    elapsed_ms: int

    def __post_init__(self):
        if self.holds != (self.residual_terms == 0):
            raise ValueError("holds must mirror a zero residual")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if set(d) != set(REPORT_KEYS):
            raise ValueError(f"report keys {sorted(d)} != {sorted(REPORT_KEYS)}")
        return cls(
            identity=str(d["identity"]),
            size=int(d["size"]),
            regime=str(d["regime"]),
            holds=bool(d["holds"]),
            residual_terms=int(d["residual_terms"]),
            elapsed_ms=int(d["elapsed_ms"]),
        )

    def text(self) -> str:
        status = "holds" if self.holds else "FAILS"
        return (
            f"{self.identity:<16} size={self.size:<2} {self.regime:<10} {status:<5} "
            f"residual_terms={self.residual_terms} ({self.elapsed_ms} ms)"
        )


@contextmanager
def stopwatch():
    """Yields a dict whose ``ms`` key is filled in on exit."""
    box = {"ms": 0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = int(round((time.perf_counter() - t0) * 1000))
