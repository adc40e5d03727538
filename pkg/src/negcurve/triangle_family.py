"""The one-parameter family of triangles ``(a, 0), (a + 9/7, 0), (3, 7)`` and its grading."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .lattice_geom import RationalLike, RationalPolygon, area, as_rational, format_rational

ALPHA_MIN = Fraction(-4, 15)
ALPHA_MAX = Fraction(-16, 105)
BASE_PER_MULTIPLICITY = Fraction(3, 7)


class InvalidDegree(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParameter:
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))

    @property
    def p(self) -> int:
        return self.alpha.numerator

    @property
    def q(self) -> int:
        return self.alpha.denominator

    @property
    def in_theorem_range(self) -> bool:
        return ALPHA_MIN <= self.alpha <= ALPHA_MAX

    def __str__(self):
        return format_rational(self.alpha)


AlphaLike = Union[FamilyParameter, RationalLike]


def as_family(alpha: AlphaLike) -> FamilyParameter:
    return alpha if isinstance(alpha, FamilyParameter) else FamilyParameter(as_rational(alpha))


@dataclass(frozen=True)
class SlopeData:
    s: Fraction
    t: Fraction
    n_L: int
    n_R: int

    @property
    def orientation(self) -> str:
        """``"left"`` when ``n_L | n_R`` (grading by the left vertex), ``"right"`` when only ``n_R | n_L``."""
        if self.n_R % self.n_L == 0:
            return "left"
        if self.n_L % self.n_R == 0:
            return "right"
        return "none"


@dataclass(frozen=True)
class DegreeIndex:
    """Degree ``(x_L, m)`` on the zero-self-intersection ray; the base length is ``3m/7``."""

    x_L: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "x_L", as_rational(self.x_L))
        if self.m < 0:
            raise InvalidDegree(f"m must be nonnegative, got {self.m}")

    @property
    def base(self) -> Fraction:
        return BASE_PER_MULTIPLICITY * self.m

    @property
    def x_R(self) -> Fraction:
        return self.x_L + self.base

    def __add__(self, other: "DegreeIndex") -> "DegreeIndex":
        return DegreeIndex(self.x_L + other.x_L, self.m + other.m)

    def __sub__(self, other: "DegreeIndex") -> "DegreeIndex":
        return DegreeIndex(self.x_L - other.x_L, self.m - other.m)

    def __str__(self):
        return f"xL={format_rational(self.x_L)},m={self.m}"

    @classmethod
    def parse(cls, text: str) -> "DegreeIndex":
        m = re.fullmatch(r"\s*xL\s*=\s*([-+]?\d+(?:/\d+)?)\s*,\s*m\s*=\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"degree must look like 'xL=p/q,m=K', got {text!r}")
        return cls(Fraction(m.group(1)), int(m.group(2)))


def triangle_of(alpha: AlphaLike) -> RationalPolygon:
    a = as_family(alpha).alpha
    return RationalPolygon([(a, 0), (a + Fraction(9, 7), 0), (3, 7)])


def slopes(alpha: AlphaLike) -> SlopeData:
    fam = as_family(alpha)
    p, q = fam.p, fam.q
    den_s = 3 * q - p
    den_t = 7 * (3 * q - p) - 9 * q
    if den_s == 0 or den_t == 0:
        raise ValueError(f"degenerate side slope for alpha={fam}")
    s = Fraction(7 * q, den_s)
    t = Fraction(49 * q, den_t)
    return SlopeData(s=s, t=t, n_L=abs(s.numerator), n_R=abs(t.numerator))


def xi_degree(alpha: AlphaLike) -> DegreeIndex:
    return DegreeIndex(as_family(alpha).alpha, 3)


def zeta_degree(alpha: AlphaLike = None) -> DegreeIndex:
    return DegreeIndex(Fraction(0), 7)


def x_degree() -> DegreeIndex:
    return DegreeIndex(Fraction(1), 0)


def validate_degree(alpha: AlphaLike, deg: DegreeIndex) -> None:
    """Raise :class:`InvalidDegree` unless both lower vertices satisfy the Weil integrality condition."""
    sd = slopes(alpha)
    if (deg.x_L * sd.n_L).denominator != 1:
        raise InvalidDegree(f"x_L={format_rational(deg.x_L)} is not in (1/{sd.n_L})Z")
    if (deg.x_R * sd.n_R).denominator != 1:
        raise InvalidDegree(
            f"x_R={format_rational(deg.x_R)} of degree ({deg}) is not in (1/{sd.n_R})Z"
        )


def is_valid_degree(alpha: AlphaLike, deg: DegreeIndex) -> bool:
    try:
        validate_degree(alpha, deg)
    except InvalidDegree:
        return False
    return True


def degree_triangle(alpha: AlphaLike, deg: DegreeIndex) -> RationalPolygon:
    """Triangle with base ``[x_L, x_L + 3m/7]`` on the x-axis and the family's side slopes."""
    sd = slopes(alpha)
    if deg.m == 0:
        return RationalPolygon([(deg.x_L, 0)])
    u, v = 1 / sd.s, 1 / sd.t
    height = deg.base / (u - v)
    apex = (deg.x_L + height * u, height)
    return RationalPolygon([(deg.x_L, 0), (deg.x_R, 0), apex])


def triangle_vertices(alpha: AlphaLike, deg: DegreeIndex):
    """``(left, right, top)`` vertices of the degree triangle (all equal when ``m == 0``)."""
    sd = slopes(alpha)
    left = (deg.x_L, Fraction(0))
    right = (deg.x_R, Fraction(0))
    if deg.m == 0:
        return left, right, left
    u, v = 1 / sd.s, 1 / sd.t
    height = deg.base / (u - v)
    return left, right, (deg.x_L + height * u, height)


def self_intersection(alpha: AlphaLike, deg: DegreeIndex) -> Fraction:
    return 2 * area(degree_triangle(alpha, deg)) - deg.m ** 2
