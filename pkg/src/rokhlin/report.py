"""Versioned JSON reports."""
from __future__ import annotations

import json

from . import __version__

SCHEMA = "rokhlin-report/1"


def make_report(command: str, input_echo, verdict, certificates=(), axioms=(), timings=None) -> dict:
    out = {
        "schema": SCHEMA,
        "engine_version": __version__,
        "command": command,
        "input": input_echo,
        "verdict": verdict,
        "certificates": list(certificates),
        "axiom_flags": sorted(set(axioms)),
    }
    if timings is not None:
        out["timings"] = {k: round(v, 3) for k, v in timings.items()}
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
