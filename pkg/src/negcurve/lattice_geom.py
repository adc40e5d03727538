"""Exact rational convex polygons in the plane.

Coordinates are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

Rational = Fraction
Point = Tuple[Fraction, Fraction]
LatticePoint = Tuple[int, int]

NON_INTEGRAL = "non-integral"

RationalLike = Union[int, str, Fraction]


class DegenerateSlopes(ValueError):
    """Support lines in the requested directions do not close above the base."""


def as_rational(v: RationalLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(v)


def format_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence[RationalLike]]) -> List[Point]:
    """Counter-clockwise hull without collinear points, starting at the lowest-leftmost vertex."""
    pts = sorted({(as_rational(x), as_rational(y)) for x, y in points}, key=lambda p: (p[1], p[0]))
    if len(pts) <= 2:
        return pts
    # Andrew's monotone chain on (y, x)-sorted input builds the hull CCW from the bottom.
    pts.sort(key=lambda p: (p[0], p[1]))
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    start = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
    return hull[start:] + hull[:start]


@dataclass(frozen=True)
class RationalPolygon:
    """Convex polygon; ``vertices`` are CCW from the lowest-leftmost one.

    A single point and a segment are valid (degenerate) polygons.
    """

    vertices: Tuple[Point, ...]

    def __init__(self, vertices: Iterable[Sequence[RationalLike]]):
        hull = convex_hull(vertices)
        if not hull:
            raise ValueError("polygon needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(hull))

    def __repr__(self):
        vs = ", ".join(f"({format_rational(x)}, {format_rational(y)})" for x, y in self.vertices)
        return f"RationalPolygon([{vs}])"

    @property
    def edges(self) -> List[Tuple[Point, Point]]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @property
    def y_range(self) -> Tuple[Fraction, Fraction]:
        ys = [y for _, y in self.vertices]
        return min(ys), max(ys)

    def x_interval_at(self, y: Fraction) -> Tuple[Fraction, Fraction] | None:
        """Exact horizontal slice of the polygon at height ``y``."""
        xs = []
        vs = self.vertices
        for x0, y0 in vs:
            if y0 == y:
                xs.append(x0)
        for (x0, y0), (x1, y1) in self.edges:
            if (y0 - y) * (y1 - y) < 0:
                xs.append(x0 + (x1 - x0) * (y - y0) / (y1 - y0))
        if not xs:
            return None
        return min(xs), max(xs)

    def contains(self, p: Sequence[RationalLike]) -> bool:
        px, py = as_rational(p[0]), as_rational(p[1])
        lo, hi = self.y_range
        if not lo <= py <= hi:
            return False
        interval = self.x_interval_at(py)
        return interval is not None and interval[0] <= px <= interval[1]

    def to_json(self) -> dict:
        return {"vertices": [[format_rational(x), format_rational(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "RationalPolygon":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls([(Fraction(x), Fraction(y)) for x, y in obj["vertices"]])


_RATIONAL_RE = re.compile(r"[-+]?\d+(?:/\d+)?")


def parse_polygon(spec: str) -> RationalPolygon:
    """Parse ``"(-3/14,0),(15/14,0),(3,7)"`` or ``"-3/14,0,15/14,0,3,7"``."""
    nums = [Fraction(tok) for tok in _RATIONAL_RE.findall(spec)]
    if not nums or len(nums) % 2:
        raise ValueError(f"polygon spec needs an even, nonzero count of coordinates: {spec!r}")
    return RationalPolygon(list(zip(nums[0::2], nums[1::2])))


def area(P: RationalPolygon) -> Fraction:
    vs = P.vertices
    if len(vs) < 3:
        return Fraction(0)
    twice = sum(
        vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
        for i in range(len(vs))
    )
    return abs(twice) / 2


def _ceil(v: Fraction) -> int:
    return -((-v.numerator) // v.denominator)


def _floor(v: Fraction) -> int:
    return v.numerator // v.denominator


def lattice_points(P: RationalPolygon) -> List[LatticePoint]:
    """Integer points in ``P`` (boundary included), sorted by ``(x, y)``."""
    lo, hi = P.y_range
    pts = []
    for y in range(_ceil(lo), _floor(hi) + 1):
        interval = P.x_interval_at(Fraction(y))
        if interval is None:
            continue
        for x in range(_ceil(interval[0]), _floor(interval[1]) + 1):
            pts.append((x, y))
    pts.sort()
    return pts


def lattice_lengths(P: RationalPolygon) -> List[Union[int, str]]:
    """Lattice length of each edge, or :data:`NON_INTEGRAL` if an endpoint is not a lattice point."""
    out: List[Union[int, str]] = []
    for (x0, y0), (x1, y1) in P.edges:
        if any(c.denominator != 1 for c in (x0, y0, x1, y1)):
            out.append(NON_INTEGRAL)
        else:
            out.append(math.gcd(int(x1 - x0), int(y1 - y0)))
    return out


def scale(P: RationalPolygon, k: int) -> RationalPolygon:
    if k <= 0:
        raise ValueError("scale factor must be positive")
    return RationalPolygon([(k * x, k * y) for x, y in P.vertices])


def translate(P: RationalPolygon, dx: RationalLike, dy: RationalLike = 0) -> RationalPolygon:
    dx, dy = as_rational(dx), as_rational(dy)
    return RationalPolygon([(x + dx, y + dy) for x, y in P.vertices])


def min_triangle(P: RationalPolygon, s: RationalLike, t: RationalLike) -> RationalPolygon:
    """Smallest triangle around ``P`` with a horizontal base and side slopes ``s`` (left), ``t`` (right).

    Each side is the support line of ``P`` in its direction, so the triangle is
    unique. Raises :class:`DegenerateSlopes` when the two sides do not meet
    above the base.
    """
    s, t = as_rational(s), as_rational(t)
    if s == 0 or t == 0:
        raise DegenerateSlopes(f"horizontal side slope in pair (s={s}, t={t})")
    u, v = 1 / s, 1 / t  # run per unit rise
    if u <= v:
        raise DegenerateSlopes(f"sides of slopes (s={s}, t={t}) do not close above the base")
    y0 = P.y_range[0]
    x_left = min(x - (y - y0) * u for x, y in P.vertices)
    x_right = max(x - (y - y0) * v for x, y in P.vertices)
    height = (x_right - x_left) / (u - v)
    apex = (x_left + height * u, y0 + height)
    return RationalPolygon([(x_left, y0), (x_right, y0), apex])
