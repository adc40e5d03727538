import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negcurve.laurent import (
    GF2,
    ZZ,
    LaurentPolynomial,
    MultiplicityCapExceeded,
    NotInKernel,
    Ring,
    RingMismatch,
    X,
    Y,
    gbinom,
    initial_terms,
    lift_split,
    lowest_form,
    mod2k,
    multiplicity_at_e,
    newton_polygon,
    ord2,
    shift_subst,
    truncate_shift,
    xi,
    xi_tilde,
    zeta,
    zeta_tilde,
)
from negcurve.lattice_geom import lattice_lengths
from oracles import shift_by_expansion


def laurent(lo=-3, hi=4, coeffs=st.integers(-5, 5), ring=ZZ, max_size=6):
    exps = st.tuples(st.integers(lo, hi), st.integers(lo, hi))
    return st.dictionaries(exps, coeffs, max_size=max_size).map(lambda d: LaurentPolynomial(d, ring))


polys = laurent()
nonneg = laurent(lo=0, hi=5)
f2polys = laurent(coeffs=st.integers(0, 1), ring=GF2)


def test_gbinom_examples():
    assert gbinom(5, 2) == 10
    assert gbinom(-1, 3) == -1
    assert gbinom(-2, 2) == 3
    assert gbinom(3, 5) == 0
    assert gbinom(3, -1) == 0


@given(st.integers(-30, 30), st.integers(0, 12))
def test_gbinom_pascal(a, i):
    # Pascal's rule holds for every integer top argument
    assert gbinom(a + 1, i + 1) == gbinom(a, i) + gbinom(a, i + 1)


def test_rings():
    assert Ring.parse("Z") == ZZ and Ring.parse("F2") == GF2
    assert Ring.parse("Z/2^3") == mod2k(3)
    with pytest.raises(ValueError):
        Ring(6)
    with pytest.raises(RingMismatch):
        LaurentPolynomial({(0, 0): 1}, ZZ) + LaurentPolynomial({(0, 0): 1}, GF2)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=100)
@given(polys, polys, st.integers(1, 6))
def test_shift_is_a_ring_homomorphism(a, b, m):
    trunc = lambda p: truncate_shift(p, m)
    assert trunc(a + b) == trunc(a) + trunc(b)
    # product of the truncations, cut at degree m
    full = trunc(a) * trunc(b)
    prod = LaurentPolynomial({e: c for e, c in full.items() if sum(e) < m})
    assert trunc(a * b) == prod


@settings(max_examples=100)
@given(polys, st.integers(1, 7))
def test_truncate_shift_matches_series_oracle(p, m):
    assert truncate_shift(p, m).terms == shift_by_expansion(p.terms, m)


@given(nonneg)
def test_shift_subst_agrees_with_truncation(p):
    full = shift_subst(p)
    low = LaurentPolynomial({e: c for e, c in full.items() if sum(e) < 6})
    assert truncate_shift(p, 6) == low


def test_shift_subst_rejects_negative_exponents():
    with pytest.raises(ValueError):
        shift_subst(LaurentPolynomial({(-1, 0): 1}))


@settings(max_examples=60)
@given(f2polys, f2polys)
def test_multiplicity_is_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert multiplicity_at_e(a * b) == math.inf
    else:
        assert multiplicity_at_e(a * b) == multiplicity_at_e(a) + multiplicity_at_e(b)


def test_multiplicity_examples():
    assert multiplicity_at_e(X - 1) == 1
    assert multiplicity_at_e((X - 1) ** 3 * (Y - 1) ** 2) == 5
    assert multiplicity_at_e(LaurentPolynomial(ring=GF2)) == math.inf
    with pytest.raises(MultiplicityCapExceeded):
        multiplicity_at_e((X - 1) ** 10, cap=4)


@given(f2polys)
def test_frobenius_is_squaring_mod2(p):
    assert p.frobenius() == p * p


@given(polys, polys)
def test_ord2_additive(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert ord2(a * b) == ord2(a) + ord2(b)
    assert ord2(a.scale(8)) == ord2(a) + 3


def test_ord2_and_initial_terms():
    p = LaurentPolynomial({(0, 0): 4, (1, 0): 12, (0, 1): 8})
    assert ord2(p) == 2
    assert initial_terms(p) == LaurentPolynomial({(0, 0): 4, (1, 0): 12})
    with pytest.raises(RingMismatch):
        ord2(xi())


@given(polys)
def test_text_and_json_round_trip(p):
    assert LaurentPolynomial.from_text(p.to_text()) == p
    assert LaurentPolynomial.from_json(p.to_json()) == p


def test_negative_powers():
    assert X ** -2 * X ** 2 == 1
    with pytest.raises(ValueError):
        (X + 1) ** -1


def test_xi_construction():
    NP = newton_polygon(xi())
    assert NP.vertices == ((0, 0), (1, 0), (3, 7))
    assert lattice_lengths(NP) == [1, 1, 1]
    assert multiplicity_at_e(xi()) == 3
    assert lowest_form(xi()) == LaurentPolynomial.from_text("x^3 + x^2*y + y^3", GF2)


def test_zeta_construction():
    NP = newton_polygon(zeta())
    assert NP.vertices == ((0, 0), (3, 0), (7, 15))
    assert lattice_lengths(NP)[1:] == [1, 1]
    assert multiplicity_at_e(zeta()) == 7
    assert zeta_tilde().coefficient(7, 14) % 2 == 0


def test_xi_shift_expansion():
    shifted = shift_subst(xi_tilde())
    low = LaurentPolynomial({e: c for e, c in shifted.items() if sum(e) < 3})
    cubic = LaurentPolynomial({e: c for e, c in shifted.items() if sum(e) == 3})
    assert low == LaurentPolynomial.from_text("4*x^2 + 32*x*y + 28*y^2 + 8*x + 14*y + 6")
    assert cubic == LaurentPolynomial.from_text("x^3 + 25*x^2*y + 76*x*y^2 + 39*y^3")


def test_lift_split_xi():
    split = lift_split(xi_tilde(), 3)
    assert split.f.reduce(GF2) == LaurentPolynomial.from_text("1 + y", GF2)
    cubic = LaurentPolynomial({e: c for e, c in split.g.items() if sum(e) == 3})
    assert cubic.reduce(GF2) == LaurentPolynomial.from_text("x^3 + x^2*y + y^3", GF2)
    assert shift_subst(xi_tilde()) == split.f.scale(2) + split.g


def test_lift_split_small_example():
    # (2x + 2y)(x+1, y+1) = 2x + 2y + 4, so f = x + y + 2
    split = lift_split(LaurentPolynomial.from_text("2*x + 2*y"), 2)
    assert split.f == LaurentPolynomial.from_text("x + y + 2")
    assert split.g == 0
    with pytest.raises(NotInKernel):
        lift_split(xi_tilde(), 4)


@given(polys)
def test_reduce_then_lift(p):
    q = p.reduce(GF2)
    assert q.lift().reduce(GF2) == q
    assert all(c == 1 for _, c in q.lift().items())
