"""Checks that the ray's section ring is F2[xi, zeta, x^(+-1)], one degree at a time."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import exact_linalg as el
from .laurent import GF2, LaurentPolynomial, lowest_form, multiplicity_at_e, truncate_shift, xi, zeta
from .lattice_geom import format_rational, lattice_points
from .obstruction import graded_dims, phi_rows_mod2
from .triangle_family import (
    AlphaLike,
    DegreeIndex,
    as_family,
    degree_triangle,
    is_valid_degree,
    triangle_vertices,
    xi_degree,
    zeta_degree,
)


class InternalInconsistency(RuntimeError):
    """A step that must succeed for elements of the ring failed."""


@dataclass(frozen=True, order=True)
class MonomialIndex:
    """``x^l xi^i zeta^j``; ordered by ``j`` first to match enumeration order."""

    j: int
    i: int
    l: int

    @classmethod
    def of(cls, l: int, i: int, j: int) -> "MonomialIndex":
        return cls(j=j, i=i, l=l)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.l, self.i, self.j)

    def degree(self, alpha: AlphaLike) -> DegreeIndex:
        a = as_family(alpha).alpha
        return DegreeIndex(self.l + a * self.i, 3 * self.i + 7 * self.j)

    def __repr__(self):
        return f"MonomialIndex(l={self.l}, i={self.i}, j={self.j})"


@dataclass(frozen=True)
class Decomposition:
    terms: Tuple[MonomialIndex, ...]
    remainder: LaurentPolynomial = field(default_factory=lambda: LaurentPolynomial(ring=GF2))


def monomial_basis(alpha: AlphaLike, deg: DegreeIndex) -> List[MonomialIndex]:
    """All ``(l, i, j)`` with ``3i + 7j = m`` and ``l + alpha*i = x_L``, ``j`` ascending."""
    a = as_family(alpha).alpha
    out = []
    for j in range(deg.m // 7 + 1):
        rest = deg.m - 7 * j
        if rest % 3:
            continue
        i = rest // 3
        l = deg.x_L - a * i
        if l.denominator == 1:
            out.append(MonomialIndex.of(int(l), i, j))
    return out


@lru_cache(maxsize=None)
def _xi_power(i: int) -> LaurentPolynomial:
    return xi() ** i


@lru_cache(maxsize=None)
def _zeta_power(j: int) -> LaurentPolynomial:
    return zeta() ** j


def evaluate_monomial(idx: MonomialIndex) -> LaurentPolynomial:
    return (_xi_power(idx.i) * _zeta_power(idx.j)).shift_exponents(idx.l)


def evaluate(terms: Sequence[MonomialIndex]) -> LaurentPolynomial:
    total = LaurentPolynomial(ring=GF2)
    for idx in terms:
        total = total + evaluate_monomial(idx)
    return total


# ---------------------------------------------------------------------------
# exact division

def _key(e):
    return (e[1], e[0])


def exact_divide(s: LaurentPolynomial, d: LaurentPolynomial) -> LaurentPolynomial:
    """Quotient ``s / d`` in the Laurent ring; raises if ``d`` does not divide ``s``.

    Long division on the leading term for the lex order on ``(y, x)`` exponents.
    The quotient's support is confined to a box fixed by the supports of ``s``
    and ``d``, which bounds the loop.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if s.is_zero():
        return s
    if s.ring != d.ring:
        raise TypeError("ring mismatch")
    ds = d.support()
    lead_d = max(ds, key=_key)
    inv = d.coefficient(*lead_d)
    inv_c = d.ring.reduce(pow(inv, -1, d.ring.modulus)) if d.ring.modulus else inv
    if d.ring.modulus is None and inv not in (1, -1):
        raise ValueError("leading coefficient of divisor must be a unit")
    ss = s.support()
    a_lo = min(a for a, _ in ss) - min(a for a, _ in ds)
    a_hi = max(a for a, _ in ss) - max(a for a, _ in ds)
    b_lo = min(b for _, b in ss) - min(b for _, b in ds)
    b_hi = max(b for _, b in ss) - max(b for _, b in ds)
    quotient: Dict[Tuple[int, int], int] = {}
    r = s
    while r:
        lead_r = max(r.support(), key=_key)
        e = (lead_r[0] - lead_d[0], lead_r[1] - lead_d[1])
        if not (a_lo <= e[0] <= a_hi and b_lo <= e[1] <= b_hi):
            raise InternalInconsistency(f"division is not exact (stuck at exponent {e})")
        c = s.ring.reduce(r.coefficient(*lead_r) * inv_c)
        quotient[e] = c
        r = r - (d * c).shift_exponents(*e)
    return LaurentPolynomial(quotient, s.ring)


# ---------------------------------------------------------------------------
# decomposition into monomials in xi, zeta, x

def _present(s: LaurentPolynomial, vertex) -> bool:
    x, y = vertex
    return x.denominator == 1 and y.denominator == 1 and s.coefficient(int(x), int(y)) != 0


def check_in_degree(s: LaurentPolynomial, alpha: AlphaLike, deg: DegreeIndex) -> None:
    if s.ring != GF2:
        raise ValueError("decompose works over F2")
    tri = degree_triangle(alpha, deg)
    outside = [e for e in s.support() if not tri.contains(e)]
    if outside:
        raise ValueError(f"terms {outside[:5]} lie outside the triangle of degree ({deg})")
    if deg.m and s and truncate_shift(s, deg.m):
        raise ValueError(f"polynomial does not vanish to order {deg.m} at e")


def _decompose(s: LaurentPolynomial, alpha, deg: DegreeIndex) -> List[MonomialIndex]:
    if s.is_zero():
        return []
    if deg.m == 0:
        if deg.x_L.denominator == 1:
            l = int(deg.x_L)
            if s == LaurentPolynomial.monomial(l, 0, 1, GF2):
                return [MonomialIndex.of(l, 0, 0)]
        raise InternalInconsistency(f"nonzero element {s.to_text()} in point degree ({deg})")
    left, right, top = triangle_vertices(alpha, deg)
    if not _present(s, top):
        if deg.m < 7:
            raise InternalInconsistency(f"top vertex missing in degree ({deg}) with m < 7")
        q = exact_divide(s, zeta())
        return [MonomialIndex.of(t.l, t.i, t.j + 1) for t in _decompose(q, alpha, deg - zeta_degree())]
    if not (_present(s, left) and _present(s, right)):
        if deg.m < 3:
            raise InternalInconsistency(f"base vertex missing in degree ({deg}) with m < 3")
        q = exact_divide(s, xi())
        return [MonomialIndex.of(t.l, t.i + 1, t.j) for t in _decompose(q, alpha, deg - xi_degree(alpha))]
    # all three vertices are lattice points of the support: an integral triangle
    if deg.x_L.denominator != 1 or deg.m % 7:
        raise InternalInconsistency(f"all vertices present in non-integral degree ({deg})")
    lead = MonomialIndex.of(int(deg.x_L), 0, deg.m // 7)
    return [lead] + _decompose(s - evaluate_monomial(lead), alpha, deg)


def decompose(s: LaurentPolynomial, alpha: AlphaLike, deg: DegreeIndex) -> Decomposition:
    """Write ``s`` as a sum of monomials ``x^l xi^i zeta^j`` by peeling off vertices."""
    fam = as_family(alpha)
    check_in_degree(s, fam, deg)
    counts = Counter(_decompose(s, fam, deg))
    terms = tuple(sorted(t for t, n in counts.items() if n % 2))
    remainder = s - evaluate(terms)
    if remainder:
        raise InternalInconsistency("decomposition does not reproduce the input")
    return Decomposition(terms, remainder)


def axis_intervals(alpha: AlphaLike, basis: Sequence[MonomialIndex]) -> List[Tuple[Fraction, Fraction]]:
    """Each monomial's Newton polygon restricted to ``y = 0``: ``[l, l + i + 3j]``."""
    return [(Fraction(t.l), Fraction(t.l + t.i + 3 * t.j)) for t in basis]


# ---------------------------------------------------------------------------
# dimension cross-check

@dataclass(frozen=True)
class CrosscheckRecord:
    x_L: Fraction
    m: int
    basis_count: int
    kernel_dim: int
    independent: bool
    in_kernel: bool

    @property
    def ok(self) -> bool:
        return self.basis_count == self.kernel_dim and self.independent and self.in_kernel

    def to_json(self) -> dict:
        return {
            "xL": format_rational(self.x_L),
            "m": self.m,
            "basis_count": self.basis_count,
            "kernel_dim": self.kernel_dim,
            "independent": self.independent,
        }


@dataclass
class CrosscheckReport:
    alpha: Fraction
    records: List[CrosscheckRecord]

    @property
    def mismatches(self) -> List[CrosscheckRecord]:
        return [r for r in self.records if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def nonzero_degrees(self) -> List[int]:
        return sorted({r.m for r in self.records if r.kernel_dim})

    def to_json(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "ok": self.ok,
            "records": [r.to_json() for r in self.records],
        }


DEFAULT_XL_WINDOW = (Fraction(-3), Fraction(3))


def crosscheck_degrees(alpha: AlphaLike, m_max: int, window=DEFAULT_XL_WINDOW) -> List[DegreeIndex]:
    """Degrees ``(alpha*i + l, m)`` with ``3i <= m``, ``l`` integral, ``x_L`` in ``window``.

    These are all degrees whose monomial-basis equation can have a solution, up
    to the integer translations covered by the window; degrees with
    ``m - 3i`` not divisible by 7 probe the gaps of the semigroup.
    """
    a = as_family(alpha).alpha
    lo, hi = map(Fraction, window)
    out = []
    for m in range(m_max + 1):
        seen = set()
        for i in range(m // 3 + 1):
            base = a * i
            l_lo = -((-(lo - base).numerator) // (lo - base).denominator)
            l_hi = (hi - base).numerator // (hi - base).denominator
            for l in range(l_lo, l_hi + 1):
                x_L = base + l
                if x_L in seen:
                    continue
                seen.add(x_L)
                deg = DegreeIndex(x_L, m)
                if is_valid_degree(a, deg):
                    out.append(deg)
    return sorted(out, key=lambda d: (d.m, d.x_L))


def crosscheck_degree(alpha: AlphaLike, deg: DegreeIndex) -> CrosscheckRecord:
    fam = as_family(alpha)
    basis = monomial_basis(fam, deg)
    gd = graded_dims(fam, deg)
    cols = lattice_points(degree_triangle(fam, deg))
    pos = {e: k for k, e in enumerate(cols)}
    masks = []
    supported = True
    for idx in basis:
        mask = 0
        for e in evaluate_monomial(idx).support():
            k = pos.get(e)
            if k is None:
                supported = False
                continue
            mask |= 1 << k
        masks.append(mask)
    independent = el.rank_mod2_bits(masks) == len(masks)
    in_kernel = supported
    if deg.m and masks:
        rows = phi_rows_mod2(cols, deg.m)
        in_kernel = supported and all(
            bin(r & v).count("1") % 2 == 0 for v in masks for r in rows
        )
    return CrosscheckRecord(deg.x_L, deg.m, len(basis), gd.dim_R, independent, in_kernel)


def dim_crosscheck(alpha: AlphaLike, m_max: int, window=DEFAULT_XL_WINDOW) -> CrosscheckReport:
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    fam = as_family(alpha)
    records = [crosscheck_degree(fam, d) for d in crosscheck_degrees(fam, m_max, window)]
    return CrosscheckReport(fam.alpha, records)


def degree_support(m_max: int) -> List[int]:
    """Elements of the numerical semigroup generated by 3 and 7 up to ``m_max``."""
    return [m for m in range(m_max + 1) if any((m - 7 * j) % 3 == 0 for j in range(m // 7 + 1))]


# ---------------------------------------------------------------------------
# tangent cone of xi at e

def _dehomogenize(form: LaurentPolynomial, keep: str) -> Tuple[int, ...]:
    """Coefficients (low to high) of the form with the other variable set to 1."""
    k = 0 if keep == "x" else 1
    deg = max(e[k] for e in form.support())
    coeffs = [0] * (deg + 1)
    for e, c in form.items():
        coeffs[e[k]] = (coeffs[e[k]] + c) % 2
    return tuple(coeffs)


def _format_univariate(coeffs: Sequence[int]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        if coeffs[k]:
            parts.append("1" if k == 0 else ("t" if k == 1 else f"t^{k}"))
    return " + ".join(parts) or "0"


def tangent_cone_check() -> dict:
    form = lowest_form(xi())
    expected = LaurentPolynomial.from_text("x^3 + x^2*y + y^3", GF2)
    conventions = {}
    for setting, keep in (("y=1", "x"), ("x=1", "y")):
        coeffs = _dehomogenize(form, keep)
        values = [sum(coeffs[k] * t ** k for k in range(len(coeffs))) % 2 for t in (0, 1)]
        conventions[setting] = {
            "cubic": _format_univariate(coeffs),
            "values_at_0_1": values,
            "has_root": 0 in values,
        }
    target = "t^3 + t + 1"
    matching = [k for k, v in conventions.items() if v["cubic"] == target]
    return {
        "multiplicity": multiplicity_at_e(xi()),
        "lowest_form": form.to_text(),
        "lowest_form_ok": form == expected,
        "dehomogenized": conventions,
        "matching_convention": matching[0] if matching else None,
        "irreducible_cubic": bool(matching) and not conventions[matching[0]]["has_root"],
    }
