from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negcurve.exact_linalg import IntegerMatrix, elementary_divisors_padded, kernel_basis_mod2
from negcurve.laurent import LaurentPolynomial, gbinom, truncate_shift, xi_tilde
from negcurve.lattice_geom import RationalPolygon, lattice_points, scale
from negcurve.obstruction import (
    LIFTABLE,
    NOT_LIFTABLE,
    build_phi,
    graded_dims,
    lift_check,
    phi_rank_mod2,
    row_index,
    verify_alpha_suite,
    verify_interval_suite,
)
from negcurve.triangle_family import DegreeIndex, InvalidDegree, degree_triangle, triangle_of, xi_degree

A = F(-3, 14)

small_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=7)
polygons = st.lists(st.tuples(small_rationals, small_rationals), min_size=1, max_size=5).map(RationalPolygon)


def test_row_index():
    assert row_index(3) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_phi_entries_and_shape():
    phi = build_phi(triangle_of(A), 3)
    assert phi.matrix.shape == (6, 6)
    for r, (i, j) in enumerate(phi.row_index):
        for c, (a, b) in enumerate(phi.col_index):
            assert phi.matrix[r, c] == gbinom(a, i) * gbinom(b, j)
    assert build_phi(RationalPolygon([(0, 0)]), 1).matrix == IntegerMatrix.from_rows([[1]])
    with pytest.raises(ValueError):
        build_phi(RationalPolygon([(F(1, 2), 0)]), 2)


def test_xi_degree_divisors():
    phi = build_phi(triangle_of(A), 3)
    assert elementary_divisors_padded(phi.matrix) == [1, 1, 1, 1, 1, 2]
    assert len(kernel_basis_mod2(phi.matrix)) == 1


@settings(max_examples=120)
@given(polygons, st.integers(1, 6), st.data())
def test_phi_action_equals_truncate_shift(poly, m, data):
    cols = lattice_points(poly)
    if not cols:
        return
    coeffs = data.draw(st.lists(st.integers(-9, 9), min_size=len(cols), max_size=len(cols)))
    p = LaurentPolynomial(dict(zip(cols, coeffs)))
    phi = build_phi(poly, m)
    assert phi.apply(p) == truncate_shift(p, m)


@settings(max_examples=60)
@given(polygons, st.integers(1, 6))
def test_mod2_rows_agree_with_integer_matrix(poly, m):
    cols = lattice_points(poly)
    if not cols:
        return
    phi = build_phi(poly, m)
    assert len(cols) - phi_rank_mod2(cols, m) == len(kernel_basis_mod2(phi.matrix))


@settings(max_examples=60)
@given(polygons, polygons, st.integers(1, 5))
def test_enlarging_support_never_shrinks_kernel(p1, p2, m):
    inner = lattice_points(p1)
    outer = lattice_points(RationalPolygon(list(p1.vertices) + list(p2.vertices)))
    k_in = len(inner) - phi_rank_mod2(inner, m) if inner else 0
    k_out = len(outer) - phi_rank_mod2(outer, m) if outer else 0
    assert k_out >= k_in


def test_graded_dims_examples():
    assert graded_dims(A, xi_degree(A)).dim_R == 1
    gd = graded_dims(A, DegreeIndex(0, 0))
    assert (gd.dim_R, gd.dim_M) == (1, 0)
    gd = graded_dims(A, DegreeIndex(0, 1))
    assert gd.dim_R == 0
    assert gd.cols - gd.dim_R == gd.rows - gd.dim_M  # rank-nullity on both sides
    with pytest.raises(InvalidDegree):
        graded_dims(A, DegreeIndex(F(1, 3), 7))


def test_graded_dims_match_kernel_basis():
    for m in range(1, 12):
        for l in range(-2, 3):
            deg = DegreeIndex(l, m)
            try:
                gd = graded_dims(A, deg)
            except InvalidDegree:
                continue
            cols = lattice_points(degree_triangle(A, deg))
            if cols:
                assert gd.dim_R == len(kernel_basis_mod2(build_phi(degree_triangle(A, deg), m).matrix))


def test_lift_examples():
    assert lift_check(triangle_of(A), 3, 2).verdict == NOT_LIFTABLE
    doubled = scale(triangle_of(A), 2)
    r8 = lift_check(doubled, 6, 3)
    assert r8.verdict == NOT_LIFTABLE
    assert r8.divisors[-2:] == (4, 0) and r8.rank == 20
    assert lift_check(doubled, 6, 2).verdict == LIFTABLE
    with pytest.raises(ValueError):
        lift_check(doubled, 6, 1)


def test_kernel_side_zero_means_liftable():
    # more columns than rows: a rational kernel vector exists for every q
    poly = RationalPolygon([(0, 0), (3, 0), (0, 3)])
    assert lift_check(poly, 2, 3).verdict == LIFTABLE


def test_alpha_suite_reference():
    suite = verify_alpha_suite(A)
    assert suite.all_not_liftable
    assert [suite.case(n).last_nonzero_divisor for n in ("xi", "xi2", "zeta", "zeta2")] == [2, 4, 14, 28]
    z2 = suite.case("zeta2")
    assert z2.shape == (105, 102)
    assert list(z2.divisors) == [1] * 101 + [28, 0, 0, 0]
    assert suite.case("zeta").divisors[-2:] == (1, 14)
    assert suite.to_json()["cases"][0]["case"] == "xi"


@pytest.mark.parametrize("alpha", [F(-4, 15), F(-16, 105), F(-1, 5)])
def test_alpha_suite_elsewhere(alpha):
    assert verify_alpha_suite(alpha).all_not_liftable


def test_interval_suite():
    suite = verify_interval_suite()
    assert suite.all_not_liftable
    shapes = [c.shape for c in suite.cases]
    assert shapes == [(21, 21), (21, 21), (105, 104), (105, 104), (105, 105), (105, 103)]
    assert [c.last_nonzero_divisor for c in suite.cases] == [4, 4, 28, 15652, 42028, 4]
    for c in suite.cases:
        assert c.rank == c.shape[1]
        assert not any(d and d % 8 == 0 for d in c.divisors)
    assert list(suite.cases[0].divisors) == [1] * 20 + [4]


def test_xi_tilde_image_is_even():
    phi = build_phi(triangle_of(A), 3)
    image = phi.apply(xi_tilde())
    assert all(c % 2 == 0 for _, c in image.items())
