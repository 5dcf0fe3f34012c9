"""Plain-text formats.

point set   first line "D N", then N rows of D rationals
layered     first line "d m", then per layer a row "height n_i" and n_i rows of d rationals
spheres     first line "d n", then n rows "c_1 ... c_d r"

Rationals are written "p/q" or "p"; '#' starts a comment; blank lines are ignored.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exact import format_rational, parse_rational
from .layers import LayeredPointSet
from .spheres import CircularityReport, SphereSet


class FormatError(ValueError):
    pass


def _rows(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _header(row: list[str], what: str) -> tuple[int, int]:
    if len(row) != 2:
        raise FormatError(f"{what} header must have two integers")
    try:
        a, b = int(row[0]), int(row[1])
    except ValueError:
        raise FormatError(f"{what} header must have two integers") from None
    if a < 0 or b < 0:
        raise FormatError(f"{what} header must be nonnegative")
    return a, b


def _numbers(row: list[str], count: int, lineno: int) -> tuple:
    if len(row) != count:
        raise FormatError(f"row {lineno}: expected {count} values, got {len(row)}")
    try:
        return tuple(parse_rational(x) for x in row)
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"row {lineno}: {e}") from None


def _fmt(values: Iterable) -> str:
    return " ".join(format_rational(x) for x in values)


def parse_points(text: str) -> list[tuple]:
    rows = _rows(text)
    if not rows:
        raise FormatError("empty point file")
    D, N = _header(rows[0], "point set")
    if len(rows) - 1 != N:
        raise FormatError(f"expected {N} points, found {len(rows) - 1}")
    return [_numbers(r, D, i + 2) for i, r in enumerate(rows[1:])]


def format_points(points: Sequence[Sequence]) -> str:
    D = len(points[0]) if points else 0
    return "\n".join([f"{D} {len(points)}"] + [_fmt(p) for p in points]) + "\n"


def parse_layered(text: str) -> LayeredPointSet:
    rows = _rows(text)
    if not rows:
        raise FormatError("empty layered file")
    d, m = _header(rows[0], "layered")
    pos = 1
    layers = []
    for _ in range(m):
        if pos >= len(rows) or len(rows[pos]) != 2:
            raise FormatError("missing layer header 'height n_i'")
        height = parse_rational(rows[pos][0])
        n_i = int(rows[pos][1])
        pts = [_numbers(r, d, pos + j + 2) for j, r in enumerate(rows[pos + 1:pos + 1 + n_i])]
        if len(pts) != n_i:
            raise FormatError("layer ends early")
        layers.append((height, tuple(pts)))
        pos += 1 + n_i
    if pos != len(rows):
        raise FormatError("trailing rows after the last layer")
    try:
        return LayeredPointSet(d, tuple(layers))
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_layered(layered: LayeredPointSet) -> str:
    lines = [f"{layered.d} {layered.m}"]
    for h, pts in layered.layers:
        lines.append(f"{format_rational(h)} {len(pts)}")
        lines.extend(_fmt(p) for p in pts)
    return "\n".join(lines) + "\n"


def parse_spheres(text: str) -> SphereSet:
    rows = _rows(text)
    if not rows:
        raise FormatError("empty sphere file")
    d, n = _header(rows[0], "sphere")
    if len(rows) - 1 != n:
        raise FormatError(f"expected {n} spheres, found {len(rows) - 1}")
    spheres = []
    for i, r in enumerate(rows[1:]):
        vals = _numbers(r, d + 1, i + 2)
        spheres.append((vals[:d], vals[d]))
    try:
        return SphereSet(d, tuple(spheres))
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_spheres(spheres: SphereSet) -> str:
    lines = [f"{spheres.d} {len(spheres)}"]
    lines.extend(_fmt(tuple(c) + (r,)) for c, r in spheres.spheres)
    return "\n".join(lines) + "\n"


def format_report(report: CircularityReport, use_components: bool = True) -> str:
    src = report.components if use_components else report.counts
    lines = ["circularity,count"] + [f"{l},{src[l]}" for l in range(report.d)]
    return "\n".join(lines) + "\n"


def format_witnesses(report: CircularityReport) -> str:
    """One passing lifted face per line, "dim; sphere ids", sorted like a lattice dump."""
    rows = []
    for circ, ws in report.witnesses.items():
        dim = report.d - circ - 1
        rows.extend((dim, ids) for ids in ws)
    rows.sort()
    return "".join(f"{dim}; " + ",".join(map(str, ids)) + "\n" for dim, ids in rows)
