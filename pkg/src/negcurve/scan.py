"""Membership of slope pairs ``(s, t)`` in the diamond of a fixed polynomial."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .laurent import newton_polygon, xi, zeta
from .lattice_geom import DegenerateSlopes, RationalPolygon, area, format_rational, min_triangle

POLYNOMIALS = {
    "xi": (xi, 3),
    "zeta": (zeta, 7),
}

# padded slope box of the theorem's alpha interval (s in [15/7, 735/331], t in [735/208, 15/4])
DEFAULT_S_RANGE = (Fraction(2), Fraction(12, 5))
DEFAULT_T_RANGE = (Fraction(16, 5), Fraction(4))


@dataclass(frozen=True)
class ScanCell:
    s: Fraction
    t: Fraction
    min_area: Optional[Fraction]  # None when the slopes are degenerate
    member: bool
    boundary: bool

    @property
    def degenerate(self) -> bool:
        return self.min_area is None


def parse_range(text: str) -> Tuple[Fraction, Fraction]:
    m = re.fullmatch(r"\s*([-+]?\d+(?:/\d+)?)\s*\.\.\s*([-+]?\d+(?:/\d+)?)\s*", text)
    if not m:
        raise ValueError(f"range must look like 'a/b..c/d', got {text!r}")
    lo, hi = Fraction(m.group(1)), Fraction(m.group(2))
    if not lo < hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def grid_values(lo: Fraction, hi: Fraction, n: int) -> List[Fraction]:
    if n < 2:
        raise ValueError("grid needs at least 2 points per axis")
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def evaluate_cell(newton: RationalPolygon, m: int, s: Fraction, t: Fraction) -> ScanCell:
    try:
        a = area(min_triangle(newton, s, t))
    except DegenerateSlopes:
        return ScanCell(s, t, None, False, False)
    bound = Fraction(m * m, 2)
    return ScanCell(s, t, a, a <= bound, a == bound)


def scan(poly: str, s_range, t_range, grid: int) -> List[ScanCell]:
    """Cells in row-major order, ``s`` varying fastest."""
    if poly not in POLYNOMIALS:
        raise ValueError(f"unknown polynomial {poly!r}; choose from {sorted(POLYNOMIALS)}")
    make, m = POLYNOMIALS[poly]
    newton = newton_polygon(make())
    ss = grid_values(*s_range, grid)
    ts = grid_values(*t_range, grid)
    return [evaluate_cell(newton, m, s, t) for t in ts for s in ss]


def to_csv(cells: List[ScanCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "t", "min_area", "member", "boundary"])
    for c in cells:
        w.writerow([
            format_rational(c.s),
            format_rational(c.t),
            "degenerate" if c.degenerate else format_rational(c.min_area),
            str(c.member).lower(),
            str(c.boundary).lower(),
        ])
    return buf.getvalue()


def to_svg(cells: List[ScanCell], grid: int, cell_px: int = 8) -> str:
    """Member cells filled, boundary cells in a second colour; ``t`` increases upward."""
    size = grid * cell_px
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for k, c in enumerate(cells):
        if not c.member:
            continue
        col, row = k % grid, k // grid
        x, y = col * cell_px, (grid - 1 - row) * cell_px
        fill = "#d62728" if c.boundary else "#1f77b4"
        out.append(
            f'<rect x="{x}" y="{y}" width="{cell_px}" height="{cell_px}" fill="{fill}">'
            f"<title>s={format_rational(c.s)} t={format_rational(c.t)}</title></rect>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
