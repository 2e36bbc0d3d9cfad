"""Deterministic file writers: curve CSV, SVG overlays and JSON reports."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .core import CurveSamples

CSV_COLUMNS = ("t", "x", "y", "theta", "kappa")

# Okabe-Ito colours; the dash pattern alone already tells the curves apart.
STYLES = {
    "reference": ("#000000", None),
    "solution": ("#0072B2", (4, 2)),
    "baseline": ("#D55E00", (1, 1.5)),
    "seed": ("#009E73", (6, 2, 1, 2)),
}


def format_float(x: float) -> str:
    return "%.17g" % x


def curve_rows(c: CurveSamples) -> np.ndarray:
    return np.column_stack((c.t, c.position[:, 0], c.position[:, 1], c.heading, c.curvature))


def curve_csv_text(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in np.asarray(rows, dtype=float):
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def write_curve_csv(path, c: CurveSamples) -> Path:
    path = Path(path)
    path.write_text(curve_csv_text(curve_rows(c)))
    return path


def read_curve_csv(path) -> np.ndarray:
    """Rows of a curve CSV as an (N, 5) array."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].split(",") != list(CSV_COLUMNS):
        raise ValueError(f"{path}: expected header {','.join(CSV_COLUMNS)}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != len(CSV_COLUMNS):
            raise ValueError(f"{path}:{lineno}: expected {len(CSV_COLUMNS)} fields, got {len(fields)}")
        rows.append([float(f) for f in fields])
    return np.array(rows, dtype=float).reshape(-1, len(CSV_COLUMNS))


def _num(x: float) -> str:
    s = "%.6g" % x
    return "0" if s == "-0" else s


def svg_text(curves: dict) -> str:
    """Overlay of named polylines; y points up.  Names select the dash style."""
    if not curves:
        raise ValueError("nothing to draw")
    pts = np.vstack([np.asarray(p, dtype=float) for p in curves.values()])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = hi - lo
    diag = math.hypot(*span) or 1.0
    margin = 0.05 * np.where(span > 0, span, diag)
    x0, y0 = lo - margin
    w, h = span + 2 * margin
    width = 0.01 * diag
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%s %s %s %s">'
        % (_num(x0), _num(-(y0 + h)), _num(w), _num(h)),
    ]
    for name, p in curves.items():
        color, dash = STYLES.get(name, ("#000000", None))
        p = np.asarray(p, dtype=float)
        d = "M" + " L".join("%s %s" % (_num(x), _num(-y)) for x, y in p)
        attrs = 'fill="none" stroke="%s" stroke-width="%s" stroke-linejoin="round"' % (color, _num(width))
        if dash:
            attrs += ' stroke-dasharray="%s"' % " ".join(_num(k * width) for k in dash)
        out.append('  <path id="%s" %s d="%s"/>' % (name, attrs, d))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, curves: dict) -> Path:
    path = Path(path)
    path.write_text(svg_text(curves))
    return path


def _finite_or_none(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def json_text(data) -> str:
    """Sorted, indented JSON; non-finite floats become null."""
    return json.dumps(_finite_or_none(data), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path, data) -> Path:
    path = Path(path)
    path.write_text(json_text(data))
    return path
