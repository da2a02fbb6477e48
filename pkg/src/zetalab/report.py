"""Structured results for the batch checks.

A run produces a :class:`Report`: the resolved configuration, a SHA-256
fingerprint of that configuration (so two runs can be compared byte for
byte after stripping runtime fields), and one :class:`CheckRecord` per
check.  JSON is the primary format; CSV is a flat row-per-check view.
Complex numbers serialize as ``{"re": ..., "im": ...}`` objects in JSON
and as ``a+bi`` strings in CSV, matching what the command line accepts.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = [
    "CheckRecord",
    "Report",
    "config_fingerprint",
    "format_complex",
    "jsonify",
]

#: Configuration keys that describe where/how output goes rather than what
#: is computed; they never enter the fingerprint.
_NON_SEMANTIC_KEYS = frozenset({"out", "format", "jobs"})


def format_complex(value: complex) -> str:
    """Render ``a+bi`` with repr-roundtrip precision (the CLI's inverse)."""
    value = complex(value)
    real = repr(value.real)
    imag = repr(abs(value.imag))
    sign = "-" if value.imag < 0 else "+"
    return f"{real}{sign}{imag}i"


def jsonify(obj: Any) -> Any:
    """Recursively convert a result object into plain JSON-able data."""
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        c = complex(obj)
        return {"re": jsonify(c.real), "im": jsonify(c.imag)}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, np.ndarray):
        return [jsonify(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    return str(obj)


def config_fingerprint(config: dict) -> str:
    """SHA-256 over the canonical JSON of the semantic configuration."""
    semantic = {k: v for k, v in config.items() if k not in _NON_SEMANTIC_KEYS}
    canonical = json.dumps(
        jsonify(semantic), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class CheckRecord:
    """One named check: what came out, what was expected, did it pass."""

    name: str
    passed: bool
    value: Any = None
    expected: Any = None
    error: float | None = None
    tolerance: float | None = None
    runtime_s: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        # Comparisons against numpy scalars produce np.bool_, which the
        # stdlib json encoder rejects; normalize once at the source.
        self.passed = bool(self.passed)

    def row(self) -> dict:
        def pair(v) -> tuple[str, str]:
            """CSV flattens complex quantities to paired re/im columns."""
            if v is None:
                return "", ""
            if isinstance(v, (complex, np.complexfloating)):
                c = complex(v)
                return repr(c.real), repr(c.imag)
            if isinstance(v, (float, np.floating)):
                return repr(float(v)), ""
            if isinstance(v, (int, np.integer)):
                return str(int(v)), ""
            return str(v), ""

        v_re, v_im = pair(self.value)
        e_re, e_im = pair(self.expected)
        return {
            "name": self.name,
            "passed": str(self.passed).lower(),
            "value_re": v_re,
            "value_im": v_im,
            "expected_re": e_re,
            "expected_im": e_im,
            "error": "" if self.error is None else repr(float(self.error)),
            "tolerance": "" if self.tolerance is None else repr(float(self.tolerance)),
            "runtime_s": repr(float(self.runtime_s)),
        }


@dataclass
class Report:
    """Everything one command run produced."""

    command: str
    config: dict
    records: list[CheckRecord] = field(default_factory=list)
    runtime_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def fingerprint(self) -> str:
        return config_fingerprint({"command": self.command, **self.config})

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "command": self.command,
            "config": jsonify(self.config),
            "fingerprint": self.fingerprint,
            "version": __version__,
            "passed": bool(self.passed),
            "summary": {
                "pass_count": sum(1 for r in self.records if r.passed),
                "fail_count": sum(1 for r in self.records if not r.passed),
            },
            "runtime_s": jsonify(self.runtime_s),
            "checks": [
                {
                    "name": r.name,
                    "passed": bool(r.passed),
                    "value": jsonify(r.value),
                    "expected": jsonify(r.expected),
                    "error": jsonify(r.error),
                    "tolerance": jsonify(r.tolerance),
                    "runtime_s": jsonify(r.runtime_s),
                    "detail": jsonify(r.detail),
                }
                for r in self.records
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = [
            "name",
            "passed",
            "value_re",
            "value_im",
            "expected_re",
            "expected_im",
            "error",
            "tolerance",
            "runtime_s",
        ]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for record in self.records:
            writer.writerow(record.row())
        return buf.getvalue()
