"""Skew group algebras, smash products, matrix algebras and separability.

Basis conventions
-----------------
* ``RG`` has basis ``b_i * g`` at index ``g * dim(R) + i``.
* ``R#G`` has basis ``b_i p_g`` at index ``g * dim(R) + i``.
* ``M_n(R)`` has basis ``E_ab (x) b_i`` at index ``(a * n + b) * dim(R) + i``.

The tensor product ``RG (x)_RH RG`` is modelled on the left coset
representatives ``r_1, ..., r_k``: ``RG`` is free as a right ``RH``-module
on them, so every element is uniquely ``sum_j r_j (x) y_j`` with ``y_j`` in
``RG`` and the coordinate space is ``k`` copies of ``RG``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .action import FiniteGroup, GroupAction, SubgroupEmbedding, subgroup
from .algcore import Algebra, AlgebraError, combine
from .exactlin import ExactMatrix, solve_affine

# unknown count above which a rational separability solve is not attempted
RATIONAL_SOLVE_BUDGET = 4000


class SkewGroupAlgebra:
    """``RG`` for an action of ``G`` on ``R``."""

    def __init__(self, action: GroupAction, *, check: bool = True):
        self.action = action
        self.base = R = action.algebra
        self.group = G = action.group
        f, d, n = R.field, R.dim, G.order
        c = f.zeros((d * n, d * n, d * n))
        # (b_i g)(b_j h) = b_i g(b_j) gh = sum_{l,k} A_g[l, j] c[i, l, k] b_k (gh)
        for g in range(n):
            Ag = action.auto[g].a
            t = f.reduce(np.tensordot(Ag, R.c, axes=([0], [1])))       # (j, i, k)
            t = np.transpose(t, (1, 0, 2))                           # (i, j, k)
            for h in range(n):
                gh = G.mul(g, h)
                c[g * d:(g + 1) * d, h * d:(h + 1) * d, gh * d:(gh + 1) * d] = t
        unit = [0] * (d * n)
        for i, u in enumerate(R.unit.entries()):
            unit[G.identity * d + i] = u
        labels = [f"{lab}*g{g}" for g in range(n) for lab in R.labels]
        self.algebra = Algebra(f, labels, c, unit, check=check)
        self._subs: dict = {}

    def __repr__(self):
        return f"SkewGroupAlgebra(dim R={self.base.dim}, |G|={self.group.order})"

    @property
    def field(self):
        return self.base.field

    def index(self, g: int, i: int) -> int:
        return g * self.base.dim + i

    def element(self, r: ExactMatrix, g: int) -> ExactMatrix:
        """Coordinates of ``r * g`` in ``RG``."""
        f, d = self.field, self.base.dim
        v = f.zeros((self.algebra.dim, 1))
        v[g * d:(g + 1) * d, 0] = r.a[:, 0]
        return ExactMatrix._wrap(f, v)

    def group_element(self, g: int) -> ExactMatrix:
        return self.element(self.base.unit, g)

    def base_embedding(self) -> list:
        """Indices of ``b_i * e``: the copy of ``R`` inside ``RG``."""
        return [self.index(self.group.identity, i) for i in range(self.base.dim)]

    def sub(self, H: SubgroupEmbedding) -> "SubSkew":
        key = H.elements
        if key not in self._subs:
            self._subs[key] = SubSkew(self, H)
        return self._subs[key]


def skew_group_algebra(action: GroupAction) -> SkewGroupAlgebra:
    return SkewGroupAlgebra(action)


class SubSkew:
    """``RH`` inside ``RG`` together with the coset data used by the functors."""

    def __init__(self, skew: SkewGroupAlgebra, H: SubgroupEmbedding):
        if H.parent != skew.group:
            raise AlgebraError("subgroup of a different group")
        self.skew = skew
        self.H = H
        Hgrp, Hact = skew.action.restrict(H)
        if len(H.elements) == skew.group.order and H.elements[0] == skew.group.identity \
                and list(H.elements) == list(range(skew.group.order)):
            self.algebra = skew.algebra
        else:
            self.algebra = SkewGroupAlgebra(Hact, check=False).algebra
        d = skew.base.dim
        # RH index (position of h in H.elements, i)  ->  RG index (h, i)
        self.embed = [skew.index(h, i) for h in H.elements for i in range(d)]
        self.pos = {h: p for p, h in enumerate(H.elements)}

    @property
    def reps(self) -> tuple:
        return self.H.left_coset_reps

    @property
    def index(self) -> int:
        return self.H.index

    def rh_element(self, r: ExactMatrix, h: int) -> ExactMatrix:
        """Coordinates in ``RH`` of ``r * h``."""
        f, d = self.skew.field, self.skew.base.dim
        v = f.zeros((self.algebra.dim, 1))
        p = self.pos[h]
        v[p * d:(p + 1) * d, 0] = r.a[:, 0]
        return ExactMatrix._wrap(f, v)

    def to_rg(self, x: ExactMatrix) -> ExactMatrix:
        f = self.skew.field
        v = f.zeros((self.skew.algebra.dim, 1))
        v[self.embed, 0] = x.a[:, 0]
        return ExactMatrix._wrap(f, v)

    def rewrite_left(self, i: int, g: int, j: int) -> tuple:
        """``(b_i g) r_j = r_k z`` with ``z`` in ``RH``; returns ``(k, z)``."""
        sk = self.skew
        G = sk.group
        k, h = self.H.coset_of(G.mul(g, self.reps[j]))
        rk_inv = sk.action.auto[G.inv(self.reps[k])]
        return k, self.rh_element(rk_inv.col(i), h)

    def rewrite_right(self, j: int, i: int, g: int) -> tuple:
        """``s_j (b_i g) = z s_k`` for right coset reps ``s_j = r_j^-1``; ``(k, z)``."""
        sk = self.skew
        G = sk.group
        s = [G.inv(r) for r in self.reps]
        sg = G.mul(s[j], g)
        # sg = h s_k  <=>  sg^-1 = r_k h^-1
        k, hinv = self.H.coset_of(G.inv(sg))
        h = G.inv(hinv)
        return k, self.rh_element(sk.action.auto[s[j]].col(i), h)

    @cached_property
    def freeness_ranks(self) -> tuple:
        """Ranks of ``(+)_j RH -> RG`` on ``x_j -> r_j x_j`` and ``x_j -> x_j r_j^-1``."""
        sk = self.skew
        G, f = sk.group, sk.field
        d = sk.base.dim
        right_cols, left_cols = [], []
        for r in self.reps:
            for h in self.H.elements:
                for i in range(d):
                    right_cols.append(sk.element(sk.action.auto[r].col(i), G.mul(r, h)))
                    left_cols.append(sk.element(sk.base.basis_vector(i), G.mul(h, G.inv(r))))
        return (ExactMatrix.hstack(f, right_cols).rank(), ExactMatrix.hstack(f, left_cols).rank())

    def is_free(self) -> bool:
        n = self.skew.algebra.dim
        return self.freeness_ranks == (n, n)


def subalgebra_RH(skew: SkewGroupAlgebra, H: SubgroupEmbedding) -> SubSkew:
    return skew.sub(H)


# ----------------------------------------------------------------------------
# separability


@dataclass
class SeparabilityCertificate:
    status: str                      # "separable" | "not_separable" | "unknown_over_Q"
    witness: Optional[ExactMatrix] = None
    reps: tuple = ()
    labels: Sequence[str] = ()
    verified: bool = False

    def __bool__(self):
        return self.status == "separable"

    def terms(self) -> list:
        """Witness as ``[(rep, {label: coeff})]`` pieces of ``sum_j r_j (x) y_j``."""
        if self.witness is None:
            return []
        n = len(self.labels)
        out = []
        vals = self.witness.entries()
        for j, r in enumerate(self.reps):
            y = {self.labels[t]: vals[j * n + t] for t in range(n) if vals[j * n + t]}
            if y:
                out.append((r, y))
        return out


def _tensor_operators(sub: SubSkew):
    """Left/right multiplication by each RG basis element on ``RG (x)_RH RG``."""
    sk = sub.skew
    RG, f = sk.algebra, sk.field
    n, k, d = RG.dim, sub.index, sk.base.dim
    Lz_cache = {}
    left_ops, right_ops = [], []
    for g in range(sk.group.order):
        for i in range(d):
            x = sk.index(g, i)
            L = f.zeros((k * n, k * n))
            for j in range(k):
                kk, z = sub.rewrite_left(i, g, j)
                key = (kk, tuple(z.entries()))
                if key not in Lz_cache:
                    Lz_cache[key] = RG.left_mult_by(sub.to_rg(z)).a
                L[kk * n:(kk + 1) * n, j * n:(j + 1) * n] = Lz_cache[key]
            left_ops.append(ExactMatrix._wrap(f, L))
            right_ops.append(ExactMatrix.block_diag(f, [RG.right_mult[x]] * k))
    return left_ops, right_ops


def _mu_matrix(sub: SubSkew) -> ExactMatrix:
    sk = sub.skew
    RG = sk.algebra
    return ExactMatrix.hstack(sk.field, [RG.left_mult_by(sk.group_element(r)) for r in sub.reps])


def separability_witness(skew: SkewGroupAlgebra, H: SubgroupEmbedding) -> SeparabilityCertificate:
    """Solve for ``e`` in ``RG (x)_RH RG`` with ``mu(e) = 1`` and ``x e = e x``.

    The centrality constraints use a generating set of ``RG``; a returned
    witness is then re-checked against every basis element.
    """
    sub = skew.sub(H)
    RG, f = skew.algebra, skew.field
    n, k = RG.dim, sub.index
    if f.p is None and n * k > RATIONAL_SOLVE_BUDGET:
        return SeparabilityCertificate("unknown_over_Q", reps=sub.reps, labels=RG.labels)
    left_ops, right_ops = _tensor_operators(sub)
    mu = _mu_matrix(sub)
    gens = RG.generators
    rows = [left_ops[x] - right_ops[x] for x in gens]
    system = ExactMatrix.vstack(f, rows + [mu])
    rhs = ExactMatrix.vstack(f, [ExactMatrix.zeros(f, r.rows, 1) for r in rows] + [RG.unit])
    sol = solve_affine(system, rhs)
    if sol is None:
        return SeparabilityCertificate("not_separable", reps=sub.reps, labels=RG.labels,
                                       verified=True)
    ok = mu @ sol == RG.unit and all(L @ sol == R @ sol for L, R in zip(left_ops, right_ops))
    if not ok:
        raise AssertionError("separability witness failed verification")
    return SeparabilityCertificate("separable", sol, sub.reps, RG.labels, verified=True)


def verify_separability_witness(skew: SkewGroupAlgebra, H: SubgroupEmbedding,
                                witness: ExactMatrix) -> bool:
    """Independent check of both defining identities on every basis element."""
    sub = skew.sub(H)
    left_ops, right_ops = _tensor_operators(sub)
    mu = _mu_matrix(sub)
    return mu @ witness == skew.algebra.unit and all(
        L @ witness == R @ witness for L, R in zip(left_ops, right_ops))


def index_invertible(skew: SkewGroupAlgebra, H: SubgroupEmbedding) -> bool:
    """Whether ``[G:H] * 1_R`` is a unit of ``R`` (solve in the regular representation)."""
    R = skew.base
    n = H.index
    x = R.unit.scale(n)
    return solve_affine(R.left_mult_by(x), R.unit) is not None


# ----------------------------------------------------------------------------
# graded algebras and smash products


class GradingError(ValueError):
    pass


@dataclass
class GradedAlgebra:
    algebra: Algebra
    group: FiniteGroup
    grading: tuple

    def __post_init__(self):
        A, G = self.algebra, self.group
        self.grading = tuple(int(x) for x in self.grading)
        if len(self.grading) != A.dim:
            raise GradingError("one degree per basis element is required")
        nz = np.argwhere(A.c != 0)
        for i, j, k in nz:
            if self.grading[k] != G.mul(self.grading[i], self.grading[j]):
                raise GradingError(
                    f"R_g R_h not in R_gh for basis pair ({A.labels[i]}, {A.labels[j]})")
        for t, u in enumerate(A.unit.entries()):
            if u and self.grading[t] != G.identity:
                raise GradingError("the unit is not homogeneous of identity degree")

    def is_trivial(self) -> bool:
        return all(g == self.group.identity for g in self.grading)


def smash_product(graded: GradedAlgebra) -> tuple:
    """``(R#G, action)`` with ``(r p_g)(r' p_h) = r r'_{gh^-1} p_h`` and
    ``g . (r p_h) = r p_{h g^-1}``."""
    R, G = graded.algebra, graded.group
    f, d, n = R.field, R.dim, G.order
    c = f.zeros((d * n, d * n, d * n))
    for g in range(n):
        for h in range(n):
            deg = G.mul(g, G.inv(h))
            for j in range(d):
                if graded.grading[j] != deg:
                    continue
                c[g * d:(g + 1) * d, h * d + j, h * d:(h + 1) * d] = R.c[:, j, :]
    unit = []
    for g in range(n):
        unit.extend(R.unit.entries())
    labels = [f"{lab}p{g}" for g in range(n) for lab in R.labels]
    smash = Algebra(f, labels, c, unit)
    mats = []
    for g in range(n):
        m = f.zeros((d * n, d * n))
        ginv = G.inv(g)
        for h in range(n):
            t = G.mul(h, ginv)
            for i in range(d):
                m[t * d + i, h * d + i] = f.one
        mats.append(ExactMatrix._wrap(f, m))
    return smash, GroupAction(G, smash, mats)


def smash_idempotents(graded: GradedAlgebra, smash: Algebra) -> list:
    """Coordinates of ``1 p_g`` for each ``g``."""
    R, G = graded.algebra, graded.group
    f, d = R.field, R.dim
    out = []
    for g in range(G.order):
        v = f.zeros((smash.dim, 1))
        v[g * d:(g + 1) * d, 0] = R.unit.a[:, 0]
        out.append(ExactMatrix._wrap(f, v))
    return out


def block_decomposition(graded: GradedAlgebra, smash: Algebra) -> dict:
    """Check of ``R#G = prod_g p_g (R#G)`` for trivially graded ``R``.

    Returns the facts needed: the ``p_g`` are orthogonal central idempotents
    summing to 1, and each block is a copy of ``R``.
    """
    ps = smash_idempotents(graded, smash)
    f = smash.field
    zero = ExactMatrix.zeros(f, smash.dim, 1)
    orth = all(smash.mul(a, b) == (a if i == j else zero)
               for i, a in enumerate(ps) for j, b in enumerate(ps))
    total = ps[0]
    for p in ps[1:]:
        total = total + p
    central = all(smash.mul(p, smash.basis_vector(t)) == smash.mul(smash.basis_vector(t), p)
                  for p in ps for t in range(smash.dim))
    block_dims = [smash.left_mult_by(p).rank() for p in ps]
    R = graded.algebra
    d = R.dim
    copies = []
    for g in range(graded.group.order):
        idx = list(range(g * d, (g + 1) * d))
        sub = smash.c[np.ix_(idx, idx, idx)]
        copies.append(bool(np.array_equal(sub, R.c)))
    return {
        "blocks": len(ps),
        "orthogonal_idempotents": orth,
        "sum_is_unit": total == smash.unit,
        "central": central,
        "block_dims": block_dims,
        "blocks_are_copies_of_R": all(copies),
    }


def matrix_algebra(R: Algebra, n: int) -> Algebra:
    if n < 1:
        raise AlgebraError("matrix size must be positive")
    if n == 1:
        return R
    f, d = R.field, R.dim
    D = n * n * d
    c = f.zeros((D, D, D))
    for a in range(n):
        for b in range(n):
            for e in range(n):
                src1 = (a * n + b) * d
                src2 = (b * n + e) * d
                dst = (a * n + e) * d
                c[src1:src1 + d, src2:src2 + d, dst:dst + d] = R.c
    unit = [0] * D
    for a in range(n):
        for i, u in enumerate(R.unit.entries()):
            unit[(a * n + a) * d + i] = u
    labels = [f"E{a}{b}{lab}" for a in range(n) for b in range(n) for lab in R.labels]
    return Algebra(f, labels, c, unit)


def quinn_invariants(graded: GradedAlgebra, seed: int = 0) -> dict:
    """Invariants of ``(R#G)G`` and ``M_|G|(R)`` that an isomorphism must preserve."""
    from .meataxe import radical_basis, simple_dims
    smash, act = smash_product(graded)
    double = SkewGroupAlgebra(act).algebra
    mat = matrix_algebra(graded.algebra, graded.group.order)
    out = {
        "dim_skew_of_smash": double.dim,
        "dim_matrix": mat.dim,
        "expected_dim": graded.group.order ** 2 * graded.algebra.dim,
        "radical_dim_skew_of_smash": radical_basis(double, seed).cols,
        "radical_dim_matrix": radical_basis(mat, seed).cols,
    }
    if graded.algebra.field.p is not None:
        out["simple_dims_skew_of_smash"] = simple_dims(double, seed)
        out["simple_dims_matrix"] = simple_dims(mat, seed)
    return out
