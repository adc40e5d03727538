"""The restriction map ``s(x, y) -> s(x+1, y+1) mod (x, y)^m`` as an integer matrix.

Its kernel mod 2 is the graded piece of the section ring, its cokernel the
graded piece of the obstruction module, and the 2-adic valuations of its
invariant factors decide whether a mod-2 curve lifts mod ``2^q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as el
from .exact_linalg import IntegerMatrix
from .laurent import LaurentPolynomial, gbinom
from .lattice_geom import LatticePoint, RationalPolygon, lattice_points, scale
from .triangle_family import (
    AlphaLike,
    DegreeIndex,
    as_family,
    degree_triangle,
    validate_degree,
    xi_degree,
    zeta_degree,
)

LIFTABLE = "liftable"
NOT_LIFTABLE = "not-liftable"


def row_index(m: int) -> List[Tuple[int, int]]:
    """Monomials ``x^i y^j`` with ``i + j <= m - 1``, in lexicographic order."""
    return [(i, j) for i in range(m) for j in range(m - i)]


@dataclass(frozen=True)
class PhiMatrix:
    matrix: IntegerMatrix
    col_index: Tuple[LatticePoint, ...]
    row_index: Tuple[Tuple[int, int], ...]
    polygon: RationalPolygon
    m: int
    degree: Optional[DegreeIndex] = None

    def coefficient_vector(self, p: LaurentPolynomial) -> List[int]:
        """Coefficients of ``p`` in column order; ``p`` must be supported on the columns."""
        pos = {e: k for k, e in enumerate(self.col_index)}
        v = [0] * len(pos)
        for e, c in p.items():
            if e not in pos:
                raise ValueError(f"term at {e} lies outside the support polygon")
            v[pos[e]] = c
        return v

    def apply(self, p: LaurentPolynomial) -> LaurentPolynomial:
        """Image of ``p`` as a polynomial of degree < m."""
        values = self.matrix.apply(self.coefficient_vector(p))
        return LaurentPolynomial(dict(zip(self.row_index, values)), p.ring)


def build_phi(polygon: RationalPolygon, m: int, degree: DegreeIndex | None = None) -> PhiMatrix:
    """Entry at row ``(i, j)``, column ``(a, b)`` is ``C(a, i) * C(b, j)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    cols = lattice_points(polygon)
    if not cols:
        raise ValueError(f"{polygon!r} contains no lattice points")
    rows = row_index(m)
    xb = {a: [gbinom(a, i) for i in range(m)] for a in {a for a, _ in cols}}
    yb = {b: [gbinom(b, j) for j in range(m)] for b in {b for _, b in cols}}
    entries = []
    for i, j in rows:
        for a, b in cols:
            entries.append(xb[a][i] * yb[b][j])
    mat = IntegerMatrix(len(rows), len(cols), tuple(entries))
    return PhiMatrix(mat, tuple(cols), tuple(rows), polygon, m, degree)


def _odd_binomial(a: int, i: int) -> bool:
    # Lucas: C(n, i) is odd iff i's bits are a subset of n's; C(a, i) = +-C(i - a - 1, i) for a < 0.
    n = a if a >= 0 else i - a - 1
    return n & i == i


def phi_rows_mod2(cols: Sequence[LatticePoint], m: int) -> List[int]:
    """Rows of the restriction matrix mod 2 as column bitmasks."""
    xs = [0] * m
    ys = [0] * m
    for k, (a, b) in enumerate(cols):
        bit = 1 << k
        for i in range(m):
            if _odd_binomial(a, i):
                xs[i] |= bit
            if _odd_binomial(b, i):
                ys[i] |= bit
    return [xs[i] & ys[j] for i, j in row_index(m)]


def phi_rank_mod2(cols: Sequence[LatticePoint], m: int) -> int:
    return el.rank_mod2_bits(phi_rows_mod2(cols, m))


@dataclass(frozen=True)
class GradedDimensions:
    degree: DegreeIndex
    dim_R: int
    dim_M: int
    rows: int
    cols: int


def graded_dims(alpha: AlphaLike, deg: DegreeIndex) -> GradedDimensions:
    """Dimensions of kernel and cokernel of the restriction map over F2 in degree ``deg``."""
    validate_degree(alpha, deg)
    if deg.m == 0:
        integral = deg.x_L.denominator == 1
        return GradedDimensions(deg, int(integral), 0, 0, int(integral))
    cols = lattice_points(degree_triangle(alpha, deg))
    rows = deg.m * (deg.m + 1) // 2
    r = phi_rank_mod2(cols, deg.m) if cols else 0
    return GradedDimensions(deg, len(cols) - r, rows - r, rows, len(cols))


@dataclass(frozen=True)
class LiftReport:
    element: str
    q: int
    verdict: str
    divisors: Tuple[int, ...]
    shape: Tuple[int, int]
    rank: int
    m: int

    @property
    def liftable(self) -> bool:
        return self.verdict == LIFTABLE

    @property
    def last_nonzero_divisor(self) -> int:
        return next((d for d in reversed(self.divisors) if d), 0)

    def to_json(self) -> dict:
        return {
            "case": self.element,
            "shape": list(self.shape),
            "divisors": list(self.divisors),
            "rank": self.rank,
            "mod_exp": self.q,
            "verdict": self.verdict,
        }


def lift_report(phi: PhiMatrix, q: int, element: str = "custom") -> LiftReport:
    dec = el.snf(phi.matrix, transforms=False)
    A = phi.matrix
    primitive = el.primitive_kernel_from_divisors(dec.divisors, dec.rank, A.cols, q)
    padded = tuple(dec.divisors) + (0,) * (max(A.shape) - len(dec.divisors))
    return LiftReport(
        element=element,
        q=q,
        verdict=LIFTABLE if primitive else NOT_LIFTABLE,
        divisors=padded,
        shape=A.shape,
        rank=dec.rank,
        m=phi.m,
    )


def lift_check(polygon: RationalPolygon, m: int, q: int, element: str = "custom") -> LiftReport:
    """Does some polynomial on ``polygon``, nonzero mod 2, vanish to order ``m`` at e mod ``2^q``?"""
    if q < 2:
        raise ValueError("lift checks need q >= 2")
    return lift_report(build_phi(polygon, m), q, element)


# ---------------------------------------------------------------------------
# fixed verification suites

def element_degrees(alpha: AlphaLike) -> Dict[str, Tuple[DegreeIndex, int]]:
    """Degree and lifting exponent of the four elements whose obstructions are checked."""
    a = as_family(alpha).alpha
    xd, zd = xi_degree(a), zeta_degree()
    return {
        "xi": (xd, 2),
        "xi2": (xd + xd, 3),
        "zeta": (zd, 2),
        "zeta2": (zd + zd, 3),
    }


@dataclass
class SuiteReport:
    name: str
    cases: List[LiftReport] = field(default_factory=list)

    @property
    def all_not_liftable(self) -> bool:
        return all(c.verdict == NOT_LIFTABLE for c in self.cases)

    def case(self, element: str) -> LiftReport:
        return next(c for c in self.cases if c.element == element)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "all_not_liftable": self.all_not_liftable,
            "cases": [c.to_json() for c in self.cases],
        }


def verify_alpha_suite(alpha: AlphaLike) -> SuiteReport:
    fam = as_family(alpha)
    report = SuiteReport(f"alpha={fam}")
    for name, (deg, q) in element_degrees(fam).items():
        phi = build_phi(degree_triangle(fam, deg), deg.m, deg)
        report.cases.append(lift_report(phi, q, name))
    return report


ENLARGED_TRIANGLES = (
    RationalPolygon([(Fraction(-4, 15), 0), (Fraction(15, 14), 0), (3, 7)]),
    RationalPolygon([(Fraction(-3, 14), 0), (Fraction(17, 15), 0), (3, 7)]),
)
TRAPEZOID_BREAKS = (Fraction(331), Fraction(335), Fraction(339), Fraction(683, 2), Fraction(343))


def trapezoid(i: int) -> RationalPolygon:
    """Trapezoid holding the zeta-triangles whose apex x-coordinate lies in the i-th sub-interval."""
    lo, hi = TRAPEZOID_BREAKS[i - 1], TRAPEZOID_BREAKS[i]
    top = Fraction(49, 3)
    return RationalPolygon([(0, 0), (3, 0), (lo / 45, top), (hi / 45, top)])


def interval_cases() -> List[Tuple[str, RationalPolygon, int]]:
    cases = []
    for k, tri in enumerate(ENLARGED_TRIANGLES, start=1):
        cases.append((f"xi2-enlarged-{k}", scale(tri, 2), 6))
    for i in range(1, 5):
        cases.append((f"zeta2-trapezoid-{i}", scale(trapezoid(i), 2), 14))
    return cases


def verify_interval_suite() -> SuiteReport:
    """xi^2 and zeta^2 obstructions on regions covering the whole alpha interval."""
    report = SuiteReport("interval")
    for name, poly, m in interval_cases():
        report.cases.append(lift_check(poly, m, 3, name))
    return report
