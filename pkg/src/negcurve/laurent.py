"""Sparse Laurent polynomials in ``x, y`` over Z, Z/2^k and F2.

Also home to the two curves of the construction: ``xi_tilde`` and
``zeta_tilde`` are fixed integral representatives, and ``xi()``/``zeta()`` are
their reductions mod 2.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .lattice_geom import RationalPolygon

Exponent = Tuple[int, int]

DEFAULT_MULTIPLICITY_CAP = 64


class RingMismatch(TypeError):
    pass


class MultiplicityCapExceeded(RuntimeError):
    pass


class NotInKernel(ValueError):
    """Low-degree part of a shifted polynomial is not divisible by 2."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``modulus=None`` is Z, otherwise Z/modulus with modulus a power of 2."""

    modulus: Optional[int] = None

    def __post_init__(self):
        m = self.modulus
        if m is not None and (m < 2 or m & (m - 1)):
            raise ValueError(f"modulus must be a power of two >= 2, got {m}")

    @property
    def name(self) -> str:
        if self.modulus is None:
            return "Z"
        if self.modulus == 2:
            return "F2"
        return f"Z/2^{self.modulus.bit_length() - 1}"

    def reduce(self, c: int) -> int:
        return c if self.modulus is None else c % self.modulus

    @classmethod
    def parse(cls, name: str) -> "Ring":
        name = name.strip()
        if name == "Z":
            return ZZ
        if name in ("F2", "GF2"):
            return GF2
        m = re.fullmatch(r"Z/2\^(\d+)", name)
        if m:
            return mod2k(int(m.group(1)))
        raise ValueError(f"unknown ring {name!r}")

    def __repr__(self):
        return self.name


ZZ = Ring(None)
GF2 = Ring(2)


def mod2k(k: int) -> Ring:
    if k < 1:
        raise ValueError("k must be >= 1")
    return Ring(1 << k)


def gbinom(a: int, i: int) -> int:
    """Generalized binomial ``a(a-1)...(a-i+1)/i!``, valid for negative ``a``."""
    if i < 0:
        return 0
    if a >= 0:
        return math.comb(a, i)
    # C(a, i) = (-1)^i C(i - a - 1, i)
    c = math.comb(i - a - 1, i)
    return -c if i & 1 else c


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial; zero coefficients are never stored."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[Tuple[Exponent, int]] = (), ring: Ring = ZZ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, int] = {}
        for (a, b), c in items:
            key = (int(a), int(b))
            acc[key] = acc.get(key, 0) + int(c)
        self.ring = ring
        self._terms = {e: ring.reduce(c) for e, c in acc.items() if ring.reduce(c)}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int], ring: Ring) -> "LaurentPolynomial":
        # terms must already be reduced and zero-free
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1, ring: Ring = ZZ) -> "LaurentPolynomial":
        return cls({(a, b): c}, ring)

    @classmethod
    def constant(cls, c: int, ring: Ring = ZZ) -> "LaurentPolynomial":
        return cls({(0, 0): c}, ring)

    # basic protocol ------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self._terms.items()))

    def support(self) -> List[Exponent]:
        return sorted(self._terms)

    def coefficient(self, a: int, b: int) -> int:
        return self._terms.get((a, b), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.ring)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text()!r}, ring={self.ring.name})"

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.ring)
        if not isinstance(other, LaurentPolynomial):
            raise TypeError(f"cannot combine LaurentPolynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        ring = self.ring
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = ring.reduce(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(out, ring)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return LaurentPolynomial._raw({e: ring.reduce(-c) for e, c in self._terms.items()}, ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ring = self.ring
        out: Dict[Exponent, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out, ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = LaurentPolynomial.constant(1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def unit_inverse(self) -> "LaurentPolynomial":
        """Inverse of a monomial with unit coefficient."""
        if len(self._terms) == 1:
            ((a, b), c), = self._terms.items()
            mod = self.ring.modulus
            if c in (1, -1):
                return LaurentPolynomial.monomial(-a, -b, c, self.ring)
            if mod is not None and c % 2:
                return LaurentPolynomial.monomial(-a, -b, pow(c, -1, mod), self.ring)
        raise ValueError("only monomials with unit coefficient are invertible")

    def shift_exponents(self, da: int, db: int = 0) -> "LaurentPolynomial":
        """Multiply by the monomial ``x^da y^db``."""
        return LaurentPolynomial._raw(
            {(a + da, b + db): c for (a, b), c in self._terms.items()}, self.ring
        )

    def scale(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e: k * c for e, c in self._terms.items()}, self.ring)

    def frobenius(self) -> "LaurentPolynomial":
        """``p(x^2, y^2)``."""
        return LaurentPolynomial._raw(
            {(2 * a, 2 * b): c for (a, b), c in self._terms.items()}, self.ring
        )

    # ring changes ------------------------------------------------------------

    def reduce(self, ring: Ring) -> "LaurentPolynomial":
        """Reduce coefficients into ``ring`` (Z -> Z/2^k -> F2)."""
        if ring.modulus is None:
            if self.ring.modulus is not None:
                raise ValueError("use lift() to go from a quotient ring to Z")
            return self
        if self.ring.modulus is not None and self.ring.modulus % ring.modulus:
            raise ValueError(f"no reduction map {self.ring.name} -> {ring.name}")
        return LaurentPolynomial(self._terms, ring)

    def lift(self) -> "LaurentPolynomial":
        """Integral representative with coefficients in ``[0, modulus)``."""
        return LaurentPolynomial._raw(dict(self._terms), ZZ)

    # derived quantities ------------------------------------------------------

    def total_degrees(self) -> List[int]:
        return sorted({a + b for a, b in self._terms})

    def min_exponents(self) -> Exponent:
        return (min(a for a, _ in self._terms), min(b for _, b in self._terms))

    # text / JSON -----------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            if a:
                factors.append("x" if a == 1 else f"x^{a}")
            if b:
                factors.append("y" if b == 1 else f"y^{b}")
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            parts.append((sign, "*".join(factors)))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def from_text(cls, text: str, ring: Ring = ZZ) -> "LaurentPolynomial":
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial text")
        # split at +/- that are not exponent signs
        chunks = re.split(r"(?<!\^)(?=[+-])", s)
        terms: Dict[Exponent, int] = {}
        for chunk in chunks:
            if not chunk:
                continue
            sign = -1 if chunk[0] == "-" else 1
            body = chunk.lstrip("+-")
            coeff, a, b = 1, 0, 0
            for factor in body.split("*"):
                if not factor:
                    raise ValueError(f"bad term {chunk!r}")
                m = re.fullmatch(r"([xy])(?:\^\(?([+-]?\d+)\)?)?", factor)
                if m:
                    e = int(m.group(2)) if m.group(2) is not None else 1
                    if m.group(1) == "x":
                        a += e
                    else:
                        b += e
                elif re.fullmatch(r"\d+", factor):
                    coeff *= int(factor)
                else:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
            terms[(a, b)] = terms.get((a, b), 0) + sign * coeff
        return cls(terms, ring)

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "terms": [[a, b, str(c)] for (a, b), c in self.items()]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "LaurentPolynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = Ring.parse(obj["ring"])
        return cls({(int(a), int(b)): int(c) for a, b, c in obj["terms"]}, ring)


X = LaurentPolynomial.monomial(1, 0)
Y = LaurentPolynomial.monomial(0, 1)


# ---------------------------------------------------------------------------
# substitution x -> x+1, y -> y+1

def shift_subst(p: LaurentPolynomial) -> LaurentPolynomial:
    """Exact ``p(x+1, y+1)``; requires nonnegative exponents."""
    out: Dict[Exponent, int] = {}
    for (a, b), c in p._terms.items():
        if a < 0 or b < 0:
            raise ValueError(
                f"negative exponent ({a}, {b}) has no finite expansion; use truncate_shift"
            )
        for i in range(a + 1):
            ci = c * math.comb(a, i)
            for j in range(b + 1):
                e = (i, j)
                out[e] = out.get(e, 0) + ci * math.comb(b, j)
    return LaurentPolynomial(out, p.ring)


def _series_mul(f: Tuple[int, ...], g: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    out = [0] * n
    for i, fi in enumerate(f):
        if fi:
            for j in range(n - i):
                out[i + j] += fi * g[j]
    return tuple(out)


@lru_cache(maxsize=4096)
def _one_plus_t_power(a: int, n: int) -> Tuple[int, ...]:
    """Coefficients of ``(1 + t)^a`` modulo ``t^n``; negative ``a`` via the geometric series."""
    if a >= 0:
        return tuple(math.comb(a, i) for i in range(n))
    inverse = tuple(-1 if i & 1 else 1 for i in range(n))  # 1 - t + t^2 - ...
    result = (1,) + (0,) * (n - 1)
    base, k = inverse, -a
    while k:
        if k & 1:
            result = _series_mul(result, base, n)
        k >>= 1
        if k:
            base = _series_mul(base, base, n)
    return result


def truncate_shift(p: LaurentPolynomial, m: int) -> LaurentPolynomial:
    """``p(x+1, y+1)`` modulo ``(x, y)^m``, as the polynomial of its terms of degree < m."""
    if m < 1:
        raise ValueError("truncation order m must be positive")
    out: Dict[Exponent, int] = {}
    for (a, b), c in p._terms.items():
        xs = _one_plus_t_power(a, m)
        ys = _one_plus_t_power(b, m)
        for i in range(m):
            ci = xs[i]
            if not ci:
                continue
            ci *= c
            for j in range(m - i):
                if ys[j]:
                    out[(i, j)] = out.get((i, j), 0) + ci * ys[j]
    return LaurentPolynomial(out, p.ring)


def multiplicity_at_e(p: LaurentPolynomial, cap: int = DEFAULT_MULTIPLICITY_CAP) -> float | int:
    """Order of vanishing at ``(1, 1)``: least total degree in ``p(x+1, y+1)``."""
    if p.is_zero():
        return math.inf
    m = 1
    while True:
        low = truncate_shift(p, m)
        if low:
            return min(low.total_degrees())
        if m > cap:
            raise MultiplicityCapExceeded(f"multiplicity exceeds cap {cap}")
        m = min(2 * m, cap + 1)


def newton_polygon(p: LaurentPolynomial) -> RationalPolygon:
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polygon")
    return RationalPolygon(p.support())


def lowest_form(p: LaurentPolynomial, cap: int = DEFAULT_MULTIPLICITY_CAP) -> LaurentPolynomial:
    """Lowest-degree homogeneous part of ``p(x+1, y+1)`` (the tangent cone at e)."""
    d = multiplicity_at_e(p, cap)
    if d == math.inf:
        return p
    low = truncate_shift(p, d + 1)
    return LaurentPolynomial({e: c for e, c in low._terms.items() if sum(e) == d}, p.ring)


# ---------------------------------------------------------------------------
# 2-adic order

def _v2(c: int) -> int:
    return (c & -c).bit_length() - 1


def ord2(p: LaurentPolynomial) -> float | int:
    """Largest ``k`` with ``2^k`` dividing every coefficient; ``inf`` for zero."""
    if p.ring != ZZ:
        raise RingMismatch("ord2 is defined for integer polynomials")
    if p.is_zero():
        return math.inf
    return min(_v2(c) for c in p._terms.values())


def initial_terms(p: LaurentPolynomial) -> LaurentPolynomial:
    k = ord2(p)
    if k == math.inf:
        return p
    return LaurentPolynomial({e: c for e, c in p._terms.items() if _v2(c) == k}, ZZ)


# ---------------------------------------------------------------------------
# the two curves

def xi_tilde() -> LaurentPolynomial:
    """``1 + x(1 + y + y^2) + x^2 y^4 + x^3 y^7`` over Z."""
    return LaurentPolynomial({(0, 0): 1, (1, 0): 1, (1, 1): 1, (1, 2): 1, (2, 4): 1, (3, 7): 1})


def zeta_tilde() -> LaurentPolynomial:
    """``x (y - 1) xi~^2 + (x y^2 - 1)^7`` over Z."""
    xt = xi_tilde()
    return X * (Y - 1) * xt * xt + (X * Y * Y - 1) ** 7


@lru_cache(maxsize=None)
def xi() -> LaurentPolynomial:
    return xi_tilde().reduce(GF2)


@lru_cache(maxsize=None)
def zeta() -> LaurentPolynomial:
    return zeta_tilde().reduce(GF2)


@dataclass(frozen=True)
class LiftSplit:
    """``F(x+1, y+1) = 2 f + g`` with ``g`` of total degree >= ``threshold``."""

    f: LaurentPolynomial
    g: LaurentPolynomial
    threshold: int


def lift_split(p: LaurentPolynomial, m: int) -> LiftSplit:
    if m < 1:
        raise ValueError("threshold must be positive")
    if p.ring != ZZ:
        raise RingMismatch("lift_split takes an integer polynomial")
    shifted = shift_subst(p)
    low, high = {}, {}
    for (a, b), c in shifted._terms.items():
        (low if a + b < m else high)[(a, b)] = c
    odd = sorted(e for e, c in low.items() if c % 2)
    if odd:
        raise NotInKernel(f"odd coefficients below degree {m} at {odd}")
    return LiftSplit(
        f=LaurentPolynomial({e: c // 2 for e, c in low.items()}, ZZ),
        g=LaurentPolynomial(high, ZZ),
        threshold=m,
    )
