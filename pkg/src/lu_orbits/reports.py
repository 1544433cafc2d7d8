"""Deterministic JSON / CSV / text serialisation of results.

CSV headers are fixed:

* theorem rows: ``THEOREM_HEADER``
* surveys: ``SURVEY_HEADER``, one line per histogram bin
* stabilizer reports: ``STABILIZER_HEADER``
* Theorem 2 results: ``THEOREM2_HEADER``; the histogram is packed as
  ``dim:count`` pairs joined by ``;``

Non-finite floats are written as the string ``"inf"`` in every format.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .harness import SurveyResult, Theorem2Result, TheoremRow
from .stabilizer import StabilizerReport

FORMATS = ("json", "csv", "text")

THEOREM_HEADER = (
    "dims", "expected_orbit_dim", "witness_orbit_dim", "witness_stab_dim",
    "center_only", "sv_gap", "pass", "status", "reason",
)
SURVEY_HEADER = (
    "dims", "samples", "seed", "rank", "orbit_dim", "count",
    "generic_fraction", "max_observed", "warnings",
)
STABILIZER_HEADER = (
    "dims", "orbit_dim", "stabilizer_dim", "sv_gap", "center_only", "classification", "residual_max",
)
THEOREM2_HEADER = (
    "dims", "expected_orbit_dim", "witness_orbit_dim", "witness_stab_dim", "center_only",
    "sv_gap", "candidate_status", "samples", "seed", "max_observed", "generic_fraction",
    "histogram", "theorem_pass",
)


def _num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else "-inf"
    return x


def theorem_row_dict(row: TheoremRow) -> dict:
    return {
        "dims": list(row.dims.dims),
        "expected_orbit_dim": row.expected_orbit_dim,
        "witness_orbit_dim": row.witness_orbit_dim,
        "witness_stab_dim": row.witness_stab_dim,
        "center_only": row.center_only,
        "sv_gap": _num(row.sv_gap),
        "pass": row.passed,
        "status": row.status,
        "reason": row.reason,
    }


def survey_dict(s: SurveyResult) -> dict:
    return {
        "dims": list(s.dims.dims),
        "samples": s.samples,
        "seed": s.seed,
        "rank": s.rank,
        # JSON object keys must be strings
        "orbit_dim_histogram": {str(k): v for k, v in s.orbit_dim_histogram.items()},
        "generic_fraction": s.generic_fraction,
        "max_observed": s.max_observed,
        "warnings": s.warnings,
        "min_sv_gap": _num(s.min_sv_gap),
    }


def theorem2_dict(r: Theorem2Result) -> dict:
    return {"row": theorem_row_dict(r.row), "survey": survey_dict(r.survey), "theorem_pass": r.passed}


def to_dict(item) -> dict:
    if isinstance(item, TheoremRow):
        return theorem_row_dict(item)
    if isinstance(item, SurveyResult):
        return survey_dict(item)
    if isinstance(item, Theorem2Result):
        return theorem2_dict(item)
    if isinstance(item, StabilizerReport):
        return {k: _num(v) for k, v in item.to_dict().items()}
    raise TypeError(f"cannot serialise {type(item).__name__}")


def _dims_cell(dims) -> str:
    return "x".join(map(str, dims.dims))


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _csv_rows(item) -> list[tuple]:
    if isinstance(item, TheoremRow):
        return [(
            _dims_cell(item.dims), item.expected_orbit_dim, item.witness_orbit_dim, item.witness_stab_dim,
            _bool(item.center_only), _num(item.sv_gap), _bool(item.passed), item.status, item.reason,
        )]
    if isinstance(item, SurveyResult):
        return [
            (_dims_cell(item.dims), item.samples, item.seed, item.rank, dim, count,
             item.generic_fraction, item.max_observed, item.warnings)
            for dim, count in item.orbit_dim_histogram.items()
        ]
    if isinstance(item, StabilizerReport):
        return [(
            _dims_cell(item.dims), item.orbit_dim, item.stabilizer_dim, _num(item.sv_gap),
            _bool(item.center_only), item.classification.value, _num(item.residual_max),
        )]
    if isinstance(item, Theorem2Result):
        row, s = item.row, item.survey
        hist = ";".join(f"{d}:{c}" for d, c in s.orbit_dim_histogram.items())
        return [(
            _dims_cell(row.dims), row.expected_orbit_dim, row.witness_orbit_dim, row.witness_stab_dim,
            _bool(row.center_only), _num(row.sv_gap), row.status, s.samples, s.seed, s.max_observed,
            s.generic_fraction, hist, _bool(item.passed),
        )]
    raise TypeError(f"cannot serialise {type(item).__name__}")


def _header_for(item) -> tuple:
    return {
        TheoremRow: THEOREM_HEADER,
        SurveyResult: SURVEY_HEADER,
        StabilizerReport: STABILIZER_HEADER,
        Theorem2Result: THEOREM2_HEADER,
    }[type(item)]


def _as_list(payload) -> tuple[list, bool]:
    if isinstance(payload, (list, tuple)):
        items = list(payload)
        if len({type(x) for x in items}) > 1:
            raise TypeError("a report must hold items of a single type")
        return items, True
    return [payload], False


def emit_report(payload, fmt: str = "json") -> bytes:
    """Serialise theorem rows, surveys or stabilizer reports.

    Lists produce a JSON array; a single object produces a JSON object.
    An empty list falls back to the theorem-row header for CSV and text.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    items, is_list = _as_list(payload)
    if fmt == "json":
        data = [to_dict(x) for x in items] if is_list else to_dict(items[0])
        return (json.dumps(data, indent=2) + "\n").encode()

    header = _header_for(items[0]) if items else THEOREM_HEADER
    rows = [r for x in items for r in _csv_rows(x)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().encode()

    cells = [list(header)] + [[_text_cell(c) for c in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return ("\n".join(lines) + "\n").encode()


def _text_cell(c) -> str:
    if isinstance(c, float):
        return "inf" if math.isinf(c) else f"{c:.4g}"
    return str(c)
