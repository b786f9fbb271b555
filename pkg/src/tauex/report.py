"""JSON report assembly and emission."""
from __future__ import annotations

import json
import sys
from typing import Sequence

from .indecs import Universe
from .verify import StatementResult, _seq_json


def universe_json(universe: Universe) -> dict:
    return {
        "certified": universe.certified,
        "bound": list(universe.bound) if universe.bound is not None else None,
        "count": len(universe),
    }


def sequences_json(seqs: dict) -> list:
    out = []
    for flavor in ("plain", "signed", "brick"):
        for s in seqs.get(flavor, []):
            out.append({"flavor": flavor, "entries": _seq_json(s)})
    return out


def build_report(universe: Universe, results: Sequence[StatementResult], seqs: dict) -> dict:
    A = universe.algebra
    return {
        "algebra": A.name,
        "field": A.field.to_json(),
        "universe": universe_json(universe),
        "statements": [r.to_json() for r in results],
        "sequences": sequences_json(seqs),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def emit_report(report: dict, path: str | None = None) -> None:
    """Write the report to ``path`` (stdout when ``None`` or ``-``)."""
    text = dumps(report)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
