"""Output writers: JSON, CSV tables and SVG polygon overlays."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .polygons import ConvexPolygon

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj, indent=2) -> str:
    return json.dumps(obj, default=_default, indent=indent, sort_keys=False)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([str(x) for x in row])
    return buf.getvalue()


def polygon_rows(polygons: dict) -> tuple:
    """CSV header and rows (k, slope and value per named polygon)."""
    names = list(polygons)
    n = max(len(P) for P in polygons.values())
    header = ["k"] + [f"{name}_{col}" for name in names for col in ("slope", "value")]
    rows = []
    for k in range(1, n + 1):
        row = [k]
        for name in names:
            P = polygons[name]
            if k <= len(P):
                row += [P.slopes[k - 1], P.value(k)]
            else:
                row += ["", ""]
        rows.append(row)
    return header, rows


def polygon_svg(polygons: dict, width: int = 480, height: int = 360, margin: int = 40) -> str:
    """Overlay of convex polygons, one polyline per entry of ``polygons``."""
    pts = {name: [(k, float(P.value(k))) for k in range(len(P) + 1)] for name, P in polygons.items()}
    xmax = max(max(x for x, _ in v) for v in pts.values()) or 1
    ymax = max(max(y for _, y in v) for v in pts.values()) or 1
    sx = (width - 2 * margin) / xmax
    sy = (height - 2 * margin) / ymax

    def xy(x, y):
        return f"{margin + x * sx:.2f},{height - margin - y * sy:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
           f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
           f'<text x="{width - margin}" y="{height - margin + 16}" font-size="11" text-anchor="end">{xmax}</text>',
           f'<text x="{margin - 4}" y="{margin + 4}" font-size="11" text-anchor="end">{ymax:g}</text>']
    for n, (name, v) in enumerate(pts.items()):
        color = _COLORS[n % len(_COLORS)]
        dash = ' stroke-dasharray="5,3"' if n else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} '
                   f'points="{" ".join(xy(x, y) for x, y in v)}"/>')
        out.append(f'<text x="{margin + 8}" y="{margin + 14 * (n + 1)}" font-size="12" fill="{color}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def overlay(delta, p: int, a: int, length: int, newton: ConvexPolygon = None) -> dict:
    """The polygons drawn by the CLI: a p_Delta, (p-1) a H_Delta and an optional NP."""
    from .polygons import arithmetic_polygon, hodge_polygon

    out = {"a*p_Delta": arithmetic_polygon(delta, p, length).scale(a),
           "(p-1)*a*Hodge": hodge_polygon(delta, length).scale((p - 1) * a)}
    if newton is not None:
        out["NP"] = newton
    return out
