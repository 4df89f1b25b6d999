"""Check outcomes and reports.

Reports are deterministic: runs are sorted by check id, rationals are
serialized as strings, and wall-clock timings are only included on request.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

REPORT_VERSION = "1.0"


def serialize(x: Any) -> Any:
    """JSON-friendly form of witnesses: numbers and polynomials become strings."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): serialize(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [serialize(v) for v in x]
    return str(x)


@dataclass
class CheckOutcome:
    check_id: str
    anchor: str
    status: str = "pass"
    points_tested: int = 0
    witness: Any = None
    details: dict = field(default_factory=dict)
    elapsed: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, witness: Any) -> "CheckOutcome":
        self.status = "fail"
        if self.witness is None:
            self.witness = witness
        return self

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "points_tested": self.points_tested,
            "witness": serialize(self.witness),
            "details": serialize(self.details),
        }
        if timings and self.elapsed is not None:
            d["elapsed"] = round(self.elapsed, 3)
        return d


def outcome(check_id: str, anchor: str = "", points: int = 0) -> CheckOutcome:
    return CheckOutcome(check_id, anchor, "pass", points)


@dataclass
class CheckReport:
    suite: str
    seed: int
    points: int
    runs: list[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.runs)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "version": REPORT_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "points": self.points,
            "runs": [r.to_dict(timings) for r in sorted(self.runs, key=lambda r: r.check_id)],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_markdown(self, timings: bool = False) -> str:
        lines = [
            f"# g2verify report: suite `{self.suite}`",
            "",
            f"version {REPORT_VERSION}, seed {self.seed}, points {self.points}",
            "",
            "| check | anchor | status | points |" + (" elapsed (s) |" if timings else ""),
            "|---|---|---|---|" + ("---|" if timings else ""),
        ]
        for r in sorted(self.runs, key=lambda r: r.check_id):
            row = f"| {r.check_id} | {r.anchor} | {r.status} | {r.points_tested} |"
            if timings:
                row += f" {r.elapsed:.3f} |" if r.elapsed is not None else " |"
            lines.append(row)
        fails = [r for r in self.runs if r.status == "fail"]
        if fails:
            lines += ["", "## Failures", ""]
            for r in sorted(fails, key=lambda r: r.check_id):
                lines.append(f"- `{r.check_id}`: {json.dumps(serialize(r.witness), sort_keys=True)}")
        return "\n".join(lines) + "\n"
