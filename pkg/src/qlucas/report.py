"""Outcome records for identity checks."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from .exactalg import LaurentPoly, QSeries

Side = Union[LaurentPoly, QSeries]

COUNTEREXAMPLE_TERMS = 20


@dataclass(frozen=True)
class IdentityReport:
    id: str
    params: dict
    status: str  # "pass" | "fail"
    counterexample: str | None = None
    elapsed: float = 0.0  # seconds
    note: str | None = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "counterexample": self.counterexample,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def render_difference(diff: Side, full: bool = False) -> str:
    return diff.render(None if full else COUNTEREXAMPLE_TERMS)


def compare(pairs: Sequence[tuple[Side, Side]]) -> str | None:
    """Rendered LHS-RHS of the first unequal pair, or None when all agree."""
    for lhs, rhs in pairs:
        diff = lhs - rhs
        if not diff.is_zero():
            return render_difference(diff)
    return None


def run_timed(
    identity_id: str,
    params: dict,
    sides: Callable[[], Iterable[tuple[Side, Side]]],
    note: str | None = None,
) -> IdentityReport:
    start = time.perf_counter()
    cex = compare(list(sides()))
    elapsed = time.perf_counter() - start
    return IdentityReport(
        id=identity_id,
        params=dict(params),
        status="pass" if cex is None else "fail",
        counterexample=cex,
        elapsed=elapsed,
        note=note,
    )
