import itertools

import pytest

from skewring.action import (
    ActionError,
    FiniteGroup,
    GroupAction,
    GroupError,
    action_from_generator_images,
    cyclic_group,
    direct_product,
    subgroup,
    symmetric_group_3,
    trivial_action,
    twist_module,
)
from skewring.algcore import regular_module
from skewring.builtins import QUIVER_SWAP, dual_numbers, quiver_algebra
from skewring.exactlin import ExactMatrix

from conftest import F2, F3


@pytest.mark.parametrize("G", [cyclic_group(1), cyclic_group(4), symmetric_group_3(),
                               direct_product(cyclic_group(2), cyclic_group(3))])
def test_group_axioms(G):
    e = G.identity
    for a, b, c in itertools.product(G.elements(), repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in G.elements():
        assert G.mul(a, G.inv(a)) == e == G.mul(G.inv(a), a)


def test_s3_is_nonabelian():
    S = symmetric_group_3()
    assert any(S.mul(a, b) != S.mul(b, a) for a in S.elements() for b in S.elements())


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([])
    # a Latin square without associativity: the quasigroup x*y = -x-y mod 3
    with pytest.raises(GroupError):
        FiniteGroup([[(-a - b) % 3 for b in range(3)] for a in range(3)])


def test_subgroup_and_cosets():
    S = symmetric_group_3()
    H = subgroup(S, [0, 1])
    assert H.index == 3 and H.left_coset_reps[0] == S.identity
    seen = set()
    for k, r in enumerate(H.left_coset_reps):
        coset = {S.mul(r, h) for h in H.elements}
        assert not (coset & seen)
        seen |= coset
        for g in coset:
            kk, h = H.coset_of(g)
            assert kk == k and S.mul(r, h) == g
    assert seen == set(S.elements())


def test_subgroup_errors():
    S = symmetric_group_3()
    with pytest.raises(GroupError):
        subgroup(S, [0, 1, 2])
    with pytest.raises(GroupError):
        subgroup(S, [])
    with pytest.raises(GroupError):
        subgroup(S, [0, 9])
    with pytest.raises(GroupError):
        subgroup(S, [0, 4])  # missing the inverse of the 3-cycle


def test_swap_action_on_quiver():
    A = quiver_algebra(F2)
    act = GroupAction(cyclic_group(2), A, [ExactMatrix.identity(F2, 4), QUIVER_SWAP])
    assert not act.is_trivial()
    x = A.basis_vector(0)
    assert act.apply(1, x) == A.basis_vector(1)


def test_non_automorphism_rejected():
    A = quiver_algebra(F2)
    # swaps the vertices but fixes the arrows: not multiplicative
    bad = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(ActionError, match="axiom 1"):
        GroupAction(cyclic_group(2), A, [ExactMatrix.identity(F2, 4), bad])
    # an automorphism of order 2 cannot represent the generator of C3
    with pytest.raises(ActionError, match="axiom 2"):
        GroupAction(cyclic_group(3), A, [ExactMatrix.identity(F2, 4), QUIVER_SWAP, QUIVER_SWAP])


def test_generator_images_extend():
    A = dual_numbers(F3)
    act = action_from_generator_images(cyclic_group(2), A, {1: [[1, 0], [0, 2]]})
    assert act.auto[1] @ act.auto[1] == ExactMatrix.identity(F3, 2)
    with pytest.raises(ActionError):
        action_from_generator_images(cyclic_group(3), A, {})


def test_twist_is_module():
    A = quiver_algebra(F2)
    act = GroupAction(cyclic_group(2), A, [ExactMatrix.identity(F2, 4), QUIVER_SWAP])
    M = regular_module(A)
    T = twist_module(act, 1, M)
    T.validate()
    assert T.dim == M.dim
    assert twist_module(trivial_action(cyclic_group(2), A), 1, M).equals(M)
