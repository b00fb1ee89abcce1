"""Check reports and deterministic serialization.

JSON output is byte-stable for fixed inputs: keys are sorted, floats are
rendered with fixed 12-digit scientific notation, and complex numbers are
emitted as two-element [re, im] arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"
SKIP = "skip"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INCOMPLETE = 3


@dataclass
class Verdict:
    claim: str
    status: str
    residual: float | None = None
    witness: object = None
    detail: str = ""


@dataclass
class CheckReport:
    """Per-subject verdict list; every failing verdict carries a witness."""

    subject: str
    verdicts: list[Verdict] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)

    def add(self, claim: str, ok, residual: float | None = None, witness=None, detail: str = ""):
        """Record a verdict; ok may be True/False or None for unknown."""
        if ok is None:
            status = UNKNOWN
        else:
            status = PASS if ok else FAIL
        if status == FAIL and witness is None:
            witness = {"claim": claim, "detail": detail or "no further witness data"}
        self.verdicts.append(Verdict(claim=claim, status=status, residual=residual, witness=witness, detail=detail))

    def skip(self, claim: str, detail: str = ""):
        self.verdicts.append(Verdict(claim=claim, status=SKIP, detail=detail))

    def caveat(self, text: str):
        if text not in self.caveats:
            self.caveats.append(text)

    def merge(self, other: "CheckReport"):
        self.verdicts.extend(other.verdicts)
        for c in other.caveats:
            self.caveat(c)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNKNOWN: 0, SKIP: 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    @property
    def all_pass(self) -> bool:
        return all(v.status in (PASS, SKIP) for v in self.verdicts)

    def exit_code(self) -> int:
        counts = self.counts()
        if counts[FAIL]:
            return EXIT_FAILED
        if counts[UNKNOWN]:
            return EXIT_INCOMPLETE
        return EXIT_OK

    def sorted_verdicts(self) -> list[Verdict]:
        return sorted(self.verdicts, key=lambda v: v.claim)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "caveats": sorted(self.caveats),
            "summary": self.counts(),
            "verdicts": [
                {
                    "claim": v.claim,
                    "status": v.status,
                    "residual": v.residual,
                    "witness": v.witness,
                    "detail": v.detail,
                }
                for v in self.sorted_verdicts()
            ],
        }

    def to_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for v in self.sorted_verdicts():
            mark = {PASS: "PASS", FAIL: "FAIL", UNKNOWN: "????", SKIP: "skip"}[v.status]
            res = f" residual={v.residual:.3e}" if v.residual is not None else ""
            det = f" ({v.detail})" if v.detail else ""
            lines.append(f"  [{mark}] {v.claim}{res}{det}")
        counts = self.counts()
        lines.append(
            f"summary: {counts[PASS]} pass, {counts[FAIL]} fail, "
            f"{counts[UNKNOWN]} unknown, {counts[SKIP]} skipped"
        )
        for c in sorted(self.caveats):
            lines.append(f"caveat: {c}")
        return "\n".join(lines)


def _jsonable(value):
    """Normalize numbers, numpy types, and dataclasses into plain JSON data."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    return str(value)


def _emit(value, out: list):
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format(value, ".12e"))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _emit(value[key], out)
        out.append("}")
    elif isinstance(value, list):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:  # pragma: no cover - _jsonable leaves only the types above
        out.append(json.dumps(str(value)))


def dump_json(data) -> str:
    """Deterministic JSON text: sorted keys, fixed 12-digit float formatting."""
    out: list[str] = []
    _emit(_jsonable(data), out)
    return "".join(out)
