import numpy as np
import pytest
from hypothesis import given, strategies as st

from skewring.algcore import (
    Algebra,
    AlgebraError,
    Module,
    ModuleError,
    algebra_from_products,
    complement_of_split,
    direct_sum,
    free_module,
    hom_dim,
    hom_space,
    is_direct_summand,
    is_isomorphic,
    quotient_module,
    random_cyclic_submodule,
    regular_module,
    zero_module,
)
from skewring.exactlin import ExactMatrix, kernel_basis

from conftest import F2, F3, Q, all_matrices, field_algebra, trivial_module


def _brute_hom_dim(M, N):
    """Count intertwiners ``X`` with ``X rho_M(b) = rho_N(b) X`` by enumeration."""
    p = M.field.p
    count = 0
    for X in all_matrices(M.field, N.dim, M.dim):
        if all(X @ a == b @ X for a, b in zip(M.action, N.action)):
            count += 1
    return round(np.log(count) / np.log(p))


def test_associativity_violation_named():
    # b1 b1 = b0 but b0 is not a unit for b1
    with pytest.raises(AlgebraError, match="associativity|unit"):
        algebra_from_products(F2, ["a", "b"], {(0, 0): {0: 1}, (1, 1): {0: 1}}, [1, 0])


def test_unit_violation():
    with pytest.raises(AlgebraError, match="unit"):
        algebra_from_products(F3, ["a", "b"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 0])


def test_unit_length_checked():
    with pytest.raises(AlgebraError):
        Algebra(F2, ["1"], [[[1]]], [1, 0])


def test_opposite_of_quiver(quiver_f2):
    op = quiver_f2.opposite
    x = quiver_f2.basis_vector(1)
    y = quiver_f2.basis_vector(2)
    assert op.mul(x, y) == quiver_f2.mul(y, x)
    assert not quiver_f2.is_commutative()


def test_module_validation(f2c2):
    with pytest.raises(ModuleError):
        Module(f2c2, [ExactMatrix(F2, [[1]])])
    # t acting by a non-involution violates t*t = 1
    with pytest.raises(ModuleError):
        Module(f2c2, [ExactMatrix.identity(F2, 2), ExactMatrix(F2, [[1, 1], [0, 0]])])
    with pytest.raises(ModuleError):
        Module(f2c2, [ExactMatrix(F2, [[1]])] * 2, side="middle")


def test_regular_module_dims(f2s3):
    assert regular_module(f2s3).dim == 6
    assert free_module(f2s3, 2, "right").dim == 12
    assert zero_module(f2s3).dim == 0


def test_hom_examples(f2c2, f3c2):
    k = trivial_module(f2c2)
    A = regular_module(f2c2)
    assert hom_dim(k, A) == 1
    assert hom_dim(A, A) == 2
    sign = trivial_module(f3c2, value=2)
    assert hom_dim(trivial_module(f3c2), sign) == 0
    assert hom_dim(zero_module(f3c2), sign) == 0


def _random_module(draw, alg, max_dim):
    """A random quotient-of-free module: cyclic submodules keep things small."""
    rng = np.random.default_rng(draw(st.integers(0, 10**6)))
    free = free_module(alg, 1)
    sub, basis = random_cyclic_submodule(free, rng)
    if draw(st.booleans()) and basis.cols < free.dim:
        Q_, _, _ = quotient_module(free, basis)
        return Q_
    return sub


@st.composite
def module_pairs(draw):
    from skewring.builtins import dual_numbers, quiver_algebra
    alg = draw(st.sampled_from([quiver_algebra(F2), dual_numbers(F3)]))
    return _random_module(draw, alg, 4), _random_module(draw, alg, 4)


@given(module_pairs())
def test_hom_dim_matches_enumeration(pair):
    M, N = pair
    if M.dim * N.dim > 10:
        return
    assert hom_dim(M, N) == (_brute_hom_dim(M, N) if M.dim and N.dim else 0)


@given(module_pairs())
def test_hom_basis_are_morphisms(pair):
    M, N = pair
    for h in hom_space(M, N):
        assert h.is_homomorphism()


def test_isomorphism_with_change_of_basis(quiver_f2):
    from skewring.algcore import change_basis
    A = regular_module(quiver_f2)
    P = ExactMatrix(F2, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    B = change_basis(A, P)
    v = is_isomorphic(A, B)
    assert v.status == "true"
    X = v.witness
    assert X.is_invertible()
    assert all(X @ a == b @ X for a, b in zip(A.action, B.action))


def test_non_isomorphic_certified(f2c2):
    k = trivial_module(f2c2)
    v = is_isomorphic(direct_sum(k, k), regular_module(f2c2))
    assert v.status == "false"


def test_summand_split_pair(f3c2):
    k, s = trivial_module(f3c2), trivial_module(f3c2, value=2)
    N = direct_sum(s, k)
    v = is_direct_summand(k, N)
    assert v.holds
    F, G = v.witness
    assert G @ F == ExactMatrix.identity(F3, 1)
    C = complement_of_split(N, F, G)
    assert is_isomorphic(C, s).holds


def test_summand_negative(f2c2):
    # k sits inside the regular module but does not split off over F_2
    v = is_direct_summand(trivial_module(f2c2), regular_module(f2c2))
    assert v.status == "false"


def test_random_cyclic_submodule_is_closed(quiver_f2):
    rng = np.random.default_rng(3)
    A = regular_module(quiver_f2)
    sub, basis = random_cyclic_submodule(A, rng)
    for m in A.action:
        img = m @ basis
        both = ExactMatrix.hstack(F2, [basis, img])
        assert both.rank() == basis.rank()
    assert sub.dim == basis.cols


def test_quotient_sequence(quiver_f2):
    rng = np.random.default_rng(5)
    A = regular_module(quiver_f2)
    sub, basis = random_cyclic_submodule(A, rng)
    Qm, proj, section = quotient_module(A, basis)
    assert Qm.dim + sub.dim == A.dim
    assert (proj @ basis).is_zero()
    assert proj @ section == ExactMatrix.identity(F2, Qm.dim)
    assert kernel_basis(proj).cols == sub.dim


def test_rational_module():
    A = field_algebra(Q)
    M = Module(A, [ExactMatrix.identity(Q, 2)])
    assert hom_dim(M, M) == 4
