import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from skewring.action import cyclic_group, symmetric_group_3
from skewring.algcore import free_module, random_cyclic_submodule
from skewring.builtins import dual_numbers, quiver_algebra, upper_triangular
from skewring.exactlin import ExactMatrix
from skewring.meataxe import (
    composition_factors,
    is_semisimple,
    primitive_idempotents,
    radical_basis,
    simple_dims,
    simple_modules,
)

from conftest import F2, F3, F7, Q, group_algebra


def _span(vectors, p):
    """All vectors in the span, as a set of tuples; grown one generator at a time."""
    vectors = list(vectors)
    n = len(vectors[0])
    out = {tuple([0] * n)}
    for w in vectors:
        if w in out:
            continue
        out = {tuple((s[i] + c * w[i]) % p for i in range(n)) for s in out for c in range(p)}
    return out


def _brute_is_simple(M):
    """Every nonzero ``v`` has ``A v = M`` (exhaustive over F_p).

    The unit is a combination of basis elements, so the span of the
    ``rho(b) v`` is the submodule generated by ``v``.
    """
    p, n = M.field.p, M.dim
    mats = [np.array(m.a, dtype=np.int64) for m in M.action]
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        gens = [tuple(int(x) % p for x in m @ np.array(v)) for m in mats]
        if len(_span(gens, p)) < p ** n:
            return False
    return True


@pytest.mark.parametrize("alg,dims", [
    (group_algebra(F2, symmetric_group_3()), [1, 2]),
    (group_algebra(F3, symmetric_group_3()), [1, 1]),
    (group_algebra(F7, symmetric_group_3()), [1, 1, 2]),
    (group_algebra(F2, cyclic_group(3)), [1, 2]),
    (group_algebra(F7, cyclic_group(3)), [1, 1, 1]),
    (quiver_algebra(F2), [1, 1]),
    (upper_triangular(F3), [1, 1]),
])
def test_simple_dims(alg, dims):
    assert simple_dims(alg) == dims
    for S in simple_modules(alg):
        if S.dim <= 3:
            assert _brute_is_simple(S)


@pytest.mark.parametrize("alg,rad", [
    (group_algebra(F2, cyclic_group(2)), 1),
    (quiver_algebra(F2), 2),
    (group_algebra(F3, symmetric_group_3()), 4),
    (group_algebra(F2, symmetric_group_3()), 1),
    (group_algebra(F7, symmetric_group_3()), 0),
    (dual_numbers(Q), 1),
    (group_algebra(Q, cyclic_group(3)), 0),
])
def test_radical_dims(alg, rad):
    J = radical_basis(alg)
    assert J.cols == rad
    assert is_semisimple(alg) == (rad == 0)
    # the radical is a nilpotent two-sided ideal
    vs = [J.col(i) for i in range(J.cols)]
    for x in vs:
        for y in vs:
            assert ExactMatrix.hstack(alg.field, [J, alg.mul(x, y)]).rank() == J.cols
    if vs:
        L = [alg.left_mult_by(x) for x in vs]
        prod = L[0]
        for _ in range(alg.dim):
            prod = prod @ L[0]
        assert prod.is_zero()


@given(st.integers(0, 10**6))
def test_composition_factors_are_simple(seed):
    alg = quiver_algebra(F2)
    rng = np.random.default_rng(seed)
    M, _ = random_cyclic_submodule(free_module(alg, 2), rng)
    facs = composition_factors(M, seed)
    assert sum(S.dim for S in facs) == M.dim
    for S in facs:
        assert _brute_is_simple(S)


@pytest.mark.parametrize("alg,count", [
    (group_algebra(F2, symmetric_group_3()), 3),
    (quiver_algebra(F2), 2),
    (group_algebra(F7, cyclic_group(3)), 3),
    (upper_triangular(F3), 2),
])
def test_primitive_idempotents(alg, count):
    es = primitive_idempotents(alg)
    assert len(es) == count
    total = es[0]
    for e in es[1:]:
        total = total + e
    assert total == alg.unit
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            assert alg.mul(a, b) == (a if i == j else a.scale(0))
