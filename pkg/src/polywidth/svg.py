"""Deterministic SVG rendering of 2D moment polytopes.

Output is byte-stable for equal inputs: coordinates are fixed-point
decimals computed from exact rationals (floor at six places), never
floats.  The drawing carries the facet polygon, axis labels for the two
diagonal lengths, vertex labels in angular order, and optionally the
fitted cross.
"""

from __future__ import annotations

import string
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from .polytopes import HPolytope
from .width import CrossFit


def _dec(value: Fraction) -> str:
    """Fixed-point decimal with six places, exact floor, no float round-trip."""
    scaled = value * 10**6
    floored = scaled.numerator // scaled.denominator
    sign = "-" if floored < 0 else ""
    floored = abs(floored)
    whole, frac = divmod(floored, 10**6)
    return f"{sign}{whole}.{frac:06d}"


def _angular_order(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    cx = sum((p[0] for p in points), Fraction(0)) / len(points)
    cy = sum((p[1] for p in points), Fraction(0)) / len(points)

    def half(p) -> int:
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def compare(p, q) -> int:
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        px, py = p[0] - cx, p[1] - cy
        qx, qy = q[0] - cx, q[1] - cy
        cross = px * qy - py * qx
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=cmp_to_key(compare))


def emit_svg(polytope: HPolytope, cross: Optional[CrossFit] = None) -> str:
    """SVG document for a full-dimensional 2D polytope."""
    if polytope.dim != 2:
        raise ValueError("SVG rendering is for 2D polytopes only")
    if polytope.is_empty() or not polytope.is_full_dimensional():
        raise ValueError("SVG rendering needs a nonempty full-dimensional polytope")
    lo, hi = polytope.bounding_box()
    margin_x = (hi[0] - lo[0]) * Fraction(1, 20)
    margin_y = (hi[1] - lo[1]) * Fraction(1, 20)
    x0, y0 = lo[0] - margin_x, lo[1] - margin_y
    width, height = (hi[0] - lo[0]) + 2 * margin_x, (hi[1] - lo[1]) + 2 * margin_y

    def place(p) -> tuple[str, str]:
        # flip the vertical axis: SVG y grows downward
        return _dec(p[0]), _dec(y0 + height - (p[1] - y0))

    ordered = _angular_order(list(polytope.vertices))
    path_parts = []
    for i, p in enumerate(ordered):
        x, y = place(p)
        path_parts.append(f"{'M' if i == 0 else 'L'} {x} {y}")
    path = " ".join(path_parts) + " Z"

    stroke = _dec(max(width, height) * Fraction(1, 200))
    font = _dec(max(width, height) * Fraction(1, 25))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_dec(x0)} {_dec(y0)} {_dec(width)} {_dec(height)}">',
        f'<path d="{path}" fill="#e8f0fe" stroke="#1a43a0" stroke-width="{stroke}"/>',
    ]
    labels = string.ascii_uppercase
    for i, p in enumerate(ordered):
        x, y = place(p)
        name = labels[i] if i < len(labels) else f"V{i}"
        lines.append(
            f'<circle cx="{x}" cy="{y}" r="{stroke}" fill="#1a43a0"/>'
        )
        lines.append(
            f'<text x="{x}" y="{y}" dx="{font}" dy="-{font}" '
            f'font-size="{font}">{name}</text>'
        )
    ax, ay = place((lo[0], lo[1]))
    lines.append(
        f'<text x="{ax}" y="{ay}" dy="{font}" font-size="{font}">d1</text>'
    )
    lines.append(
        f'<text x="{ax}" y="{ay}" dx="-{font}" font-size="{font}">d2</text>'
    )
    if cross is not None:
        for (minus, plus) in cross.endpoints():
            (x1, y1), (x2, y2) = place(minus), place(plus)
            lines.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="#c02020" stroke-width="{stroke}"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
