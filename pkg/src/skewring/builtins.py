"""Built-in instances, written as instance-file specs.

Every builder returns an :class:`~skewring.instfile.InstanceSpec`; the
shipped ``data/*.inst`` files are the serializations of these specs.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .action import cyclic_group, direct_product, symmetric_group_3
from .algcore import Algebra, algebra_from_products
from .exactlin import ExactMatrix, FieldSpec
from .instfile import InstanceSpec, ModuleDecl, serialize

DATA_DIR = Path(__file__).with_name("data")


def _spec(name, alg: Algebra, group, autos=None, H=(0,), grading=None, modules=()) -> InstanceSpec:
    nz = np.argwhere(alg.c != 0)
    consts = {(int(i), int(j), int(k)): alg.c[i, j, k] for i, j, k in nz}
    table = [[group.mul(a, b) for b in group.elements()] for a in group.elements()]
    autos = {g: ExactMatrix(alg.field, m) for g, m in (autos or {}).items()}
    return InstanceSpec(name, alg.field, list(alg.labels), alg.unit.entries(), consts, table,
                        autos, tuple(H), grading, list(modules))


def _field_algebra(f: FieldSpec) -> Algebra:
    return Algebra(f, ["1"], [[[1]]], [1])


def _one_dim(f, name, side, over, group_vals: dict, base_dim: int = 1) -> ModuleDecl:
    """A one-dimensional module on which ``b_0`` acts by 1 and ``g`` by a scalar."""
    m = ModuleDecl(name, side, over, 1)
    for i in range(base_dim):
        m.base_actions[i] = ExactMatrix(f, [[1 if i == 0 else 0]])
    for g, v in group_vals.items():
        m.group_actions[g] = ExactMatrix(f, [[v]])
    return m


def _trivial_module(f, group, name="k", side="left") -> ModuleDecl:
    return _one_dim(f, name, side, "RG", {g: 1 for g in group.elements() if g != group.identity})


# ----------------------------------------------------------------------------
# algebras


def quiver_algebra(f: FieldSpec) -> Algebra:
    """Path algebra of two vertices ``x, y`` with arrows ``beta: x -> y``, ``gamma: y -> x``,
    modulo paths of length two; written with basis ``e_x, e_y, beta, gamma``."""
    prods = {(0, 0): {0: 1}, (1, 1): {1: 1}, (1, 2): {2: 1}, (2, 0): {2: 1},
             (0, 3): {3: 1}, (3, 1): {3: 1}}
    return algebra_from_products(f, ["ex", "ey", "beta", "gamma"], prods, [1, 1, 0, 0])


QUIVER_SWAP = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]


def dual_numbers(f: FieldSpec) -> Algebra:
    return algebra_from_products(f, ["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [1, 0])


def product_algebra(f: FieldSpec, n: int) -> Algebra:
    """``k^n`` with orthogonal idempotents ``e_0, ..., e_{n-1}``."""
    return algebra_from_products(f, [f"e{i}" for i in range(n)], {(i, i): {i: 1} for i in range(n)},
                                 [1] * n)


def four_element_field() -> Algebra:
    """``F_4 = F_2[w] / (w^2 + w + 1)`` on the basis ``1, w``."""
    f = FieldSpec(2)
    return algebra_from_products(f, ["1", "w"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
                                                 (1, 1): {0: 1, 1: 1}}, [1, 0])


def upper_triangular(f: FieldSpec) -> Algebra:
    """Upper triangular ``2 x 2`` matrices on ``E11, E12, E22``."""
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return algebra_from_products(f, ["E11", "E12", "E22"], prods, [1, 0, 1])


def group_algebra_c2(f: FieldSpec) -> Algebra:
    return algebra_from_products(f, ["1", "t"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
                                                 (1, 1): {0: 1}}, [1, 0])


def _cyclic_perm(n: int) -> list:
    return [[1 if i == (j + 1) % n else 0 for j in range(n)] for i in range(n)]


# ----------------------------------------------------------------------------
# instances


def _group_algebra(name, p, group, H, modules=()):
    f = FieldSpec(p)
    return _spec(name, _field_algebra(f), group, H=H, modules=modules)


F2, F3, F7, Q = FieldSpec(2), FieldSpec(3), FieldSpec(7), FieldSpec(None)
C2, C3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group_3()
V4 = direct_product(C2, C2)
# S3: {0, 1} is generated by a transposition; S3_C3 is the alternating subgroup
S3_C2 = tuple(sorted({0, 1}))
S3_C3 = tuple(sorted(g for g in S3.elements() if S3.mul(S3.mul(g, g), g) == 0))


def _quiver_swap_f2():
    S = ModuleDecl("Sx", "left", "RH", 1)
    for i, v in enumerate([1, 0, 0, 0]):
        S.base_actions[i] = ExactMatrix(F2, [[v]])
    return _spec("quiver_swap_f2", quiver_algebra(F2), C2, {1: QUIVER_SWAP}, (0,), modules=[S])


def _q_c2():
    mods = [_one_dim(Q, "k", "left", "RG", {1: 1}), _one_dim(Q, "sign", "left", "RG", {1: -1})]
    return _spec("q_c2", _field_algebra(Q), C2, H=(0,), modules=mods)


def _smash(name, alg, group, grading):
    return _spec(name, alg, group, H=(0,), grading=tuple(grading))


BUILDERS = {
    "quiver_swap_f2": _quiver_swap_f2,
    "f2_c2": lambda: _group_algebra("f2_c2", 2, C2, (0,), [_trivial_module(F2, C2)]),
    "f3_c2": lambda: _group_algebra("f3_c2", 3, C2, (0,), [_trivial_module(F3, C2)]),
    "f3_c2_full": lambda: _group_algebra("f3_c2_full", 3, C2, (0, 1)),
    "f2_c2_full": lambda: _group_algebra("f2_c2_full", 2, C2, (0, 1), [_trivial_module(F2, C2)]),
    "f2_c3": lambda: _group_algebra("f2_c3", 2, C3, (0,)),
    "f3_c3": lambda: _group_algebra("f3_c3", 3, C3, (0,), [_trivial_module(F3, C3)]),
    "f7_s3_c2": lambda: _group_algebra("f7_s3_c2", 7, S3, S3_C2),
    "f2_s3_c2": lambda: _group_algebra("f2_s3_c2", 2, S3, S3_C2),
    "f3_s3_c3": lambda: _group_algebra("f3_s3_c3", 3, S3, S3_C3),
    "f2_s3_c3": lambda: _group_algebra("f2_s3_c3", 2, S3, S3_C3),
    "f7_s3_e": lambda: _group_algebra("f7_s3_e", 7, S3, (0,)),
    "f2_klein_c2": lambda: _group_algebra("f2_klein_c2", 2, V4, (0, 1)),
    "q_c2": _q_c2,
    "q_c3": lambda: _group_algebra("q_c3", None, C3, (0,), [_trivial_module(Q, C3)]),
    "quiver_swap_f3": lambda: _spec("quiver_swap_f3", quiver_algebra(F3), C2, {1: QUIVER_SWAP}, (0,)),
    "f4_frobenius": lambda: _spec("f4_frobenius", four_element_field(), C2, {1: [[1, 1], [0, 1]]}, (0,)),
    "dual_numbers_f3": lambda: _spec("dual_numbers_f3", dual_numbers(F3), C2, {1: [[1, 0], [0, 2]]}, (0,)),
    "dual_numbers_f2": lambda: _spec("dual_numbers_f2", dual_numbers(F2), C2, None, (0,)),
    "q_dual_numbers": lambda: _spec("q_dual_numbers", dual_numbers(Q), C2, {1: [[1, 0], [0, -1]]}, (0,)),
    "q_qxq_swap": lambda: _spec("q_qxq_swap", product_algebra(Q, 2), C2, {1: _cyclic_perm(2)}, (0,)),
    "f2xf2_swap": lambda: _spec("f2xf2_swap", product_algebra(F2, 2), C2, {1: _cyclic_perm(2)}, (0,)),
    "f7_c3_perm": lambda: _spec("f7_c3_perm", product_algebra(F7, 3), C3, {1: _cyclic_perm(3)}, (0,)),
    "t2_f3": lambda: _spec("t2_f3", upper_triangular(F3), C2, None, (0,)),
    "smash_f2_dual_trivial": lambda: _smash("smash_f2_dual_trivial", dual_numbers(F2), C2, (0, 0)),
    "smash_f2_c2_graded": lambda: _smash("smash_f2_c2_graded", group_algebra_c2(F2), C2, (0, 1)),
    "smash_f3_dual_graded": lambda: _smash("smash_f3_dual_graded", dual_numbers(F3), C2, (0, 1)),
    "smash_f3_trivial_c3": lambda: _smash("smash_f3_trivial_c3", _field_algebra(F3), C3, (0,)),
}

NAMES = tuple(BUILDERS)


def builtin_spec(name: str) -> InstanceSpec:
    if name not in BUILDERS:
        raise KeyError(f"unknown built-in instance {name!r}; known: {', '.join(NAMES)}")
    return BUILDERS[name]()


def builtin_text(name: str) -> str:
    return serialize(builtin_spec(name))


def write_data_files(directory: Path = DATA_DIR) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in NAMES:
        path = directory / f"{name}.inst"
        path.write_text(builtin_text(name), encoding="utf-8")
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_data_files():
        print(p)
