import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negcurve.exact_linalg import (
    IntegerMatrix,
    elementary_divisors,
    elementary_divisors_padded,
    has_primitive_kernel_vector,
    kernel_basis_mod2,
    rank_mod2,
    snf,
)
from oracles import brute_primitive_kernel, minor_gcds, rank_mod2_naive


def matrices(max_rows=6, max_cols=6, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def check_snf_invariants(rows):
    """All SNF postconditions plus the gcd-of-minors characterisation."""
    A = IntegerMatrix.from_rows(rows)
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.S
    assert abs(dec.U.determinant()) == 1
    assert abs(dec.V.determinant()) == 1
    r, c = A.shape
    for i in range(r):
        for j in range(c):
            if i != j:
                assert dec.S[i, j] == 0
    diag = [dec.S[i, i] for i in range(min(r, c))]
    assert diag == list(dec.divisors)
    assert all(d >= 0 for d in dec.divisors)
    nonzero = [d for d in dec.divisors if d]
    assert dec.rank == len(nonzero)
    assert list(dec.divisors) == nonzero + [0] * (len(diag) - dec.rank)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    # d_1 ... d_k = gcd of k x k minors
    prod = 1
    for k, g in enumerate(minor_gcds(rows), start=1):
        if k <= dec.rank:
            prod *= dec.divisors[k - 1]
            assert g == prod
        else:
            assert g == 0


@settings(max_examples=500)
@given(matrices())
def test_snf_invariants_random(rows):
    check_snf_invariants(rows)


@settings(max_examples=100)
@given(matrices(max_rows=8, max_cols=8, lo=-1000, hi=1000))
def test_snf_fast_path_agrees(rows):
    A = IntegerMatrix.from_rows(rows)
    assert snf(A, transforms=False).divisors == snf(A).divisors


def test_snf_examples():
    assert elementary_divisors(IntegerMatrix.from_rows([[2, 4], [6, 8]])) == (2, 4)
    assert elementary_divisors_padded(IntegerMatrix.from_rows([[1, 2], [2, 4], [3, 6]])) == [1, 0, 0]
    assert elementary_divisors(IntegerMatrix.zeros(3, 2)) == (0, 0)
    assert elementary_divisors(IntegerMatrix.identity(2)) == (1, 1)
    assert elementary_divisors_padded(IntegerMatrix.zeros(2, 3)) == [0, 0, 0]


def test_snf_large_entries_stay_exact():
    big = 10 ** 40
    A = IntegerMatrix.from_rows([[big, big + 1], [big + 2, big + 3]])
    dec = snf(A)
    assert dec.divisors == (1, 2)
    assert dec.U @ A @ dec.V == dec.S


@settings(max_examples=150)
@given(matrices(max_rows=4, max_cols=4, lo=-6, hi=6), st.integers(1, 3))
def test_primitive_kernel_matches_brute_force(rows, q):
    A = IntegerMatrix.from_rows(rows)
    assert has_primitive_kernel_vector(A, q) == brute_primitive_kernel(rows, q)


@settings(max_examples=100)
@given(matrices(max_rows=5, max_cols=5), st.randoms(use_true_random=False), st.integers(1, 3))
def test_liftability_invariant_under_permutation_and_transpose(rows, rnd, q):
    A = IntegerMatrix.from_rows(rows)
    rp = list(range(A.rows))
    cp = list(range(A.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    B = A.permuted(rp, cp)
    assert elementary_divisors(B) == elementary_divisors(A)
    assert has_primitive_kernel_vector(B, q) == has_primitive_kernel_vector(A, q)
    assert elementary_divisors(A.transpose()) == elementary_divisors(A)


def test_primitive_kernel_rejects_bad_q():
    with pytest.raises(ValueError):
        has_primitive_kernel_vector(IntegerMatrix.identity(2), 0)


def test_liftability_examples():
    # 2x = 0 mod 4 forces x even
    assert not has_primitive_kernel_vector(IntegerMatrix.from_rows([[2]]), 2)
    assert has_primitive_kernel_vector(IntegerMatrix.from_rows([[4]]), 2)
    assert has_primitive_kernel_vector(IntegerMatrix.from_rows([[1, 1]]), 3)


@settings(max_examples=200)
@given(matrices(max_rows=7, max_cols=7))
def test_kernel_basis_mod2(rows):
    A = IntegerMatrix.from_rows(rows)
    basis = kernel_basis_mod2(A)
    r = rank_mod2(A)
    assert r == rank_mod2_naive(rows)
    assert len(basis) == A.cols - r
    for v in basis:
        assert all(x in (0, 1) for x in v)
        assert all(sum(a * x for a, x in zip(row, v)) % 2 == 0 for row in rows)
    if basis:
        assert rank_mod2_naive(basis) == len(basis)


@given(matrices())
def test_text_and_json_round_trip(rows):
    A = IntegerMatrix.from_rows(rows)
    assert IntegerMatrix.from_text(A.to_text()) == A
    assert IntegerMatrix.from_json(A.to_json()) == A


def test_from_text_errors():
    with pytest.raises(ValueError):
        IntegerMatrix.from_text("")
    with pytest.raises(ValueError):
        IntegerMatrix.from_text("2 2\n1 2\n")
    with pytest.raises(ValueError):
        IntegerMatrix.from_rows([[1, 2], [3]])
