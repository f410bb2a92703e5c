"""Deterministic JSON and table rendering of bounds reports."""

from __future__ import annotations

import json

from . import __version__
from .invariants import BoundsReport

FORMAT = 1


def report_document(report: BoundsReport, seed: int, schedule, n_max, timings: dict | None = None) -> dict:
    doc = report.to_dict()
    doc["format"] = FORMAT
    doc["toolkit"] = {"name": "dsgbounds", "version": __version__}
    doc["options"] = {"seed": seed, "schedule": list(schedule), "n_max": n_max}
    if timings is not None:
        # wall-clock values; only emitted on request because they break byte-identity
        doc["timings_ms"] = timings
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_table(doc: dict) -> str:
    rows = [
        ("status", doc["status"]),
        ("field", doc["field"]),
        ("relations", "; ".join(doc["relations"])),
        ("dim R (d)", doc["d"]),
        ("minor size (h)", doc["h"]),
        ("Jacobian ideal", ", ".join(doc["jacobian_gens"]) or "-"),
        ("certificate L", doc["L"]),
        ("nu(J)", doc["nu"]),
        ("ll(R/J)", doc["ll"]),
        ("e(J) reduction", doc["e_reduction"]),
        ("e(J) Hilbert-Samuel", doc["e_hilbert"]),
        ("(nu-d+1)*ll-1", doc["bound_thm1"]),
        ("e-1", doc["bound_thm2"]),
        ("2*ll-1", doc["bound_bfk"]),
        ("conclusion", doc.get("conclusion")),
    ]
    if doc.get("message"):
        rows.append(("message", doc["message"]))
    width = max(len(k) for k, _ in rows)
    out = [f"{k.ljust(width)}  {'-' if v is None else v}" for k, v in rows]
    for w in doc.get("warnings", []):
        out.append(f"warning: {w}")
    return "\n".join(out) + "\n"
