import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from skewring.exactlin import (
    ExactMatrix,
    FieldError,
    FieldSpec,
    column_space_basis,
    extend_basis,
    kernel_basis,
    left_inverse,
    solve_affine,
)

F2, F3, F7, Q = FieldSpec(2), FieldSpec(3), FieldSpec(7), FieldSpec(None)


def test_field_validation():
    with pytest.raises(FieldError):
        FieldSpec(4)
    with pytest.raises(FieldError):
        FieldSpec(1)
    assert FieldSpec(2**31 - 1).p == 2**31 - 1
    assert str(F7) == "F_7" and str(Q) == "Q"


def test_scalars_reduce_mod_p():
    assert F7.scalar(-1) == 6
    assert F7.scalar("1/2") == 4
    assert Q.scalar("3/6") == Fraction(1, 2)
    with pytest.raises(FieldError):
        F3.scalar(Fraction(1, 3))
    assert F7.inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def test_kernel_small_examples():
    m = ExactMatrix(Q, [[1, 2], [2, 4]])
    k = kernel_basis(m)
    assert k.cols == 1
    assert (m @ k).is_zero()
    assert k.tolist() == [[-2], [1]]
    assert kernel_basis(ExactMatrix.identity(F2, 3)).cols == 0
    assert kernel_basis(ExactMatrix.zeros(F2, 0, 3)).cols == 3


def test_large_prime_uses_object_storage():
    p = 2**31 - 1
    f = FieldSpec(p)
    m = ExactMatrix(f, [[p - 1, 2], [3, 4]])
    inv = m.inverse()
    assert m @ inv == ExactMatrix.identity(f, 2)


def _nullity_by_enumeration(m: ExactMatrix) -> int:
    p = m.field.p
    count = 0
    for vals in itertools.product(range(p), repeat=m.cols):
        x = ExactMatrix.column(m.field, list(vals))
        if (m @ x).is_zero():
            count += 1
    return round(np.log(count) / np.log(p))


@st.composite
def small_matrices(draw, field, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    lo, hi = (0, field.p - 1) if field.p else (-3, 3)
    vals = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return ExactMatrix(field, np.array(vals, dtype=object).reshape(r, c).tolist())


@given(small_matrices(F3))
def test_nullity_matches_enumeration(m):
    assert kernel_basis(m).cols == _nullity_by_enumeration(m)


@given(st.sampled_from([F2, F7, Q]).flatmap(lambda f: small_matrices(f, 5, 5)))
def test_rank_nullity_and_kernel(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert m.rank() + k.cols == m.cols
    assert k.rank() == k.cols


@given(st.sampled_from([F3, Q]).flatmap(lambda f: small_matrices(f, 4, 4)))
def test_solve_affine_consistency(m):
    rng = np.random.default_rng(0)
    x0 = ExactMatrix.random(m.field, m.cols, 2, rng)
    b = m @ x0
    x = solve_affine(m, b)
    assert x is not None and m @ x == b


def test_solve_affine_inconsistent():
    m = ExactMatrix(F7, [[1, 1], [1, 1]])
    assert solve_affine(m, ExactMatrix.column(F7, [1, 2])) is None


@given(st.sampled_from([F2, F7, Q]).flatmap(lambda f: small_matrices(f, 5, 4)))
def test_column_space_and_left_inverse(m):
    b = column_space_basis(m)
    assert b.cols == m.rank()
    if b.cols:
        L = left_inverse(b)
        assert L @ b == ExactMatrix.identity(m.field, b.cols)
        # coordinates of every column of m in the basis reproduce it
        assert b @ (L @ m) == m


def test_extend_basis_picks_new_directions():
    base = ExactMatrix(F2, [[1], [0], [0]])
    cand = ExactMatrix(F2, [[1, 0, 1], [0, 1, 1], [0, 0, 0]])
    assert extend_basis(base, cand) == [1]


@given(st.sampled_from([F3, Q]).flatmap(lambda f: small_matrices(f, 3, 3)))
def test_inverse_roundtrip(m):
    inv = m.inverse()
    if m.rows == m.cols == m.rank():
        assert inv is not None and m @ inv == ExactMatrix.identity(m.field, m.rows)
        assert inv @ m == ExactMatrix.identity(m.field, m.rows)
    else:
        assert inv is None


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        ExactMatrix.identity(F2, 2) @ ExactMatrix.identity(F3, 2)
