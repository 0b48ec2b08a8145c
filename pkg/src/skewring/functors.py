"""Induction, restriction, co-induction and duality between RH- and RG-modules.

``M↑ = RG (x)_RH M`` is realised on ``k`` copies of ``M`` indexed by the
left coset representatives: the copy ``j`` is ``r_j (x) M``.  For a right
``RH``-module ``F`` the induced module ``F (x)_RH RG`` is realised on the copies
``F (x) s_j`` with ``s_j = r_j^-1`` (right coset representatives).
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import SubgroupEmbedding
from .algcore import (
    LEFT,
    RIGHT,
    Module,
    ModuleError,
    ModuleMorphism,
    hom_space,
    regular_module,
)
from .construct import SkewGroupAlgebra, SubSkew
from .exactlin import ExactMatrix, left_inverse


@dataclass
class FunctorContext:
    skew: SkewGroupAlgebra
    sub: SubgroupEmbedding

    @property
    def data(self) -> SubSkew:
        return self.skew.sub(self.sub)

    @property
    def RG(self):
        return self.skew.algebra

    @property
    def RH(self):
        return self.data.algebra

    @property
    def coset_reps(self) -> tuple:
        return self.sub.left_coset_reps

    @property
    def index(self) -> int:
        return self.sub.index


def _check_over(M: Module, alg, what: str):
    if M.algebra is not alg and M.algebra != alg:
        raise ModuleError(f"module is not over {what}")


def _block_action(ctx: FunctorContext, M: Module, rewrite) -> list:
    sk, data = ctx.skew, ctx.data
    f = sk.field
    k, m, d = ctx.index, M.dim, sk.base.dim
    mats = []
    cache = {}
    for g in range(sk.group.order):
        for i in range(d):
            a = f.zeros((k * m, k * m))
            for j in range(k):
                kk, z = rewrite(j, i, g)
                key = tuple(z.entries())
                if key not in cache:
                    cache[key] = M.act(z).a
                a[kk * m:(kk + 1) * m, j * m:(j + 1) * m] = cache[key]
            mats.append(ExactMatrix._wrap(f, a))
    return mats


def induce(ctx: FunctorContext, M: Module) -> Module:
    """``M↑``; for a right module this is ``M (x)_RH RG``."""
    _check_over(M, ctx.RH, "RH")
    data = ctx.data
    if M.side == LEFT:
        mats = _block_action(ctx, M, lambda j, i, g: data.rewrite_left(i, g, j))
    else:
        mats = _block_action(ctx, M, lambda j, i, g: data.rewrite_right(j, i, g))
    return Module(ctx.RG, mats, M.side, dim=ctx.index * M.dim, check=False)


def induce_morphism(ctx: FunctorContext, f: ModuleMorphism) -> ModuleMorphism:
    src, tgt = induce(ctx, f.source), induce(ctx, f.target)
    return ModuleMorphism(src, tgt, ExactMatrix.block_diag(f.matrix.field, [f.matrix] * ctx.index))


def restrict(ctx: FunctorContext, N: Module) -> Module:
    """``N↓``: keep the action of the basis elements of ``RH``."""
    _check_over(N, ctx.RG, "RG")
    emb = ctx.data.embed
    return Module(ctx.RH, [N.action[t] for t in emb], N.side, dim=N.dim, check=False)


def restrict_morphism(ctx: FunctorContext, f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(restrict(ctx, f.source), restrict(ctx, f.target), f.matrix)


def coinduce(ctx: FunctorContext, N: Module) -> Module:
    """``Hom_RH(RG, N)`` with ``(x . phi)(y) = phi(y x)``."""
    _check_over(N, ctx.RH, "RH")
    if N.side != LEFT:
        raise ModuleError("co-induction is implemented for left modules")
    f = N.field
    RG = ctx.RG
    carrier = restrict(ctx, regular_module(RG, LEFT))
    basis = [h.matrix for h in hom_space(carrier, N)]
    if not basis:
        z = ExactMatrix.zeros(f, 0, 0)
        return Module(RG, [z] * RG.dim, LEFT, dim=0, check=False)
    B = ExactMatrix.hstack(f, [phi.vec() for phi in basis])
    L = left_inverse(B)
    mats = [L @ ExactMatrix.hstack(f, [(phi @ Rx).vec() for phi in basis]) for Rx in RG.right_mult]
    return Module(RG, mats, LEFT, dim=len(basis), check=False)


def dual(M: Module) -> Module:
    """Field dual ``Hom_k(M, k)`` with the side swapped; actions are transposed."""
    side = RIGHT if M.side == LEFT else LEFT
    name = f"{M.name}^*" if M.name else ""
    return Module(M.algebra, M.transposed_actions(), side, dim=M.dim, name=name, check=False)


def dual_morphism(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(dual(f.target), dual(f.source), f.matrix.T)


def is_short_exact(i: ModuleMorphism, p: ModuleMorphism) -> bool:
    """``0 -> A -i-> B -p-> C -> 0`` is exact (rank conditions)."""
    A, B, C = i.source, i.target, p.target
    if p.source.dim != B.dim:
        return False
    return (i.matrix.rank() == A.dim and p.matrix.rank() == C.dim
            and (p.matrix @ i.matrix).is_zero() and A.dim + C.dim == B.dim)
