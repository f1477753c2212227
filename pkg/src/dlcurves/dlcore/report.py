"""Verification reports: one record per check, JSON and CSV serialization.

Each check is either asserted (status pass or fail) or measured-only
(status "measured", never fails a run).  Budget refusals and skipped checks
are recorded with their own statuses.  Wall times are optional so that two
runs with the same seed can produce byte-identical reports.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import time
from contextlib import contextmanager

__all__ = ["Check", "VerificationReport", "STATUSES"]

STATUSES = ("pass", "fail", "measured", "refused", "skipped")
FIELDS = ("family", "p", "m", "q", "check_name", "status", "measured", "expected",
          "provenance_tag", "seed", "elapsed_ms")


def _plain(x):
    """Convert numpy scalars and containers to JSON-native values."""
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclasses.dataclass
class Check:
    family: str
    p: int
    m: int
    q: int
    check_name: str
    status: str
    measured: object = None
    expected: object = None
    provenance_tag: str = "measurement"
    seed: int | None = None
    elapsed_ms: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        self.measured = _plain(self.measured)
        self.expected = _plain(self.expected)

    @property
    def failed(self):
        return self.status == "fail"


@dataclasses.dataclass
class VerificationReport:
    params: dict
    checks: list = dataclasses.field(default_factory=list)
    timing: bool = False
    seed: int | None = None

    def add(self, name, status, measured=None, expected=None, tag="measurement", elapsed_ms=None):
        P = self.params
        c = Check(P["family"], P["p"], P["m"], P["q"], name, status, measured, expected, tag,
                  self.seed, elapsed_ms if self.timing else None)
        self.checks.append(c)
        return c

    def asserted(self, name, ok, measured=None, expected=None, tag="measurement", elapsed_ms=None):
        return self.add(name, "pass" if ok else "fail", measured, expected, tag, elapsed_ms)

    @contextmanager
    def timer(self):
        """Yields a dict; its "ms" entry is filled on exit."""
        box = {}
        t0 = time.perf_counter()
        try:
            yield box
        finally:
            box["ms"] = round((time.perf_counter() - t0) * 1000.0, 3)

    @property
    def ok(self):
        return not any(c.failed for c in self.checks)

    def status_counts(self):
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    # -- serialization --------------------------------------------------------

    def to_dict(self):
        return {"params": _plain(self.params), "seed": self.seed, "timing": self.timing,
                "checks": [dataclasses.asdict(c) for c in self.checks]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d):
        rep = cls(dict(d["params"]), [], bool(d.get("timing", False)), d.get("seed"))
        rep.checks = [Check(**c) for c in d["checks"]]
        return rep

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for c in self.checks:
            row = []
            for f in FIELDS:
                v = getattr(c, f)
                row.append(json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else
                           ("" if v is None else v))
            w.writerow(row)
        return buf.getvalue()
