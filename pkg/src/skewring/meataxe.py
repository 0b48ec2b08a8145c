"""Module splitting over prime fields, simple modules and the Jacobson radical.

The splitting step is the Holt-Rees form of Norton's irreducibility test:
pick a random algebra element ``a`` and an irreducible factor ``f`` of its
characteristic polynomial; a vector of ``ker f(a)`` that spins to a proper
subspace gives a submodule, as does the annihilator of a proper spin of a
vector of ``ker f(a)^T``.  When both spins fill the module and
``dim ker f(a) = deg f`` the module is simple.

Over Q the radical is the kernel of the trace form ``(x, y) -> tr(L_xy)``,
which is valid in characteristic zero only.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .algcore import (
    Algebra,
    Module,
    combine,
    hom_dim,
    quotient_module,
    regular_module,
    restrict_to_subspace,
    spin,
)
from .exactlin import ExactMatrix, column_space_basis, kernel_basis, left_inverse, solve_affine

MAX_SPLIT_TRIES = 200


class SplittingError(RuntimeError):
    pass


def _charpoly_factors(a: ExactMatrix) -> list:
    """Distinct irreducible factors (coefficient lists, leading first) of the char poly."""
    f = a.field
    x = sympy.Symbol("x")
    if f.p is None:
        K = sympy.QQ
        dm = DomainMatrix([[K(int(v.numerator), int(v.denominator)) for v in row] for row in a.a],
                          a.shape, K)
        poly = sympy.Poly([K.to_sympy(c) for c in dm.charpoly()], x, domain=K)
        _, facs = poly.factor_list()
        out = [[f.scalar(sympy.Rational(c)) for c in (p.monic()).all_coeffs()] for p, _ in facs]
    else:
        p = f.p
        K = sympy.GF(p)
        dm = DomainMatrix([[K(int(v)) for v in row] for row in a.a], a.shape, K)
        coeffs = [int(c) % p for c in dm.charpoly()]
        _, facs = sympy.Poly(coeffs, x, modulus=p).factor_list()
        out = [[int(c) % p for c in poly.all_coeffs()] for poly, _mult in facs]
    out.sort(key=lambda c: (len(c), [str(v) for v in c]))
    return out


def _poly_eval(coeffs: list, a: ExactMatrix) -> ExactMatrix:
    n = a.rows
    acc = ExactMatrix.zeros(a.field, n, n)
    ident = ExactMatrix.identity(a.field, n)
    for c in coeffs:
        acc = acc @ a + ident.scale(c)
    return acc


def _random_nonzero(basis: ExactMatrix, rng) -> ExactMatrix:
    while True:
        c = ExactMatrix.random(basis.field, basis.cols, 1, rng)
        if not c.is_zero():
            return basis @ c


def find_proper_submodule(M: Module, rng) -> Optional[ExactMatrix]:
    """Basis of a proper nonzero submodule of ``M``, or ``None`` if ``M`` is simple.

    Null-space vectors are spun even when the nullity exceeds the factor
    degree (repeated composition factors); the simplicity verdict is only
    drawn from a good element.
    """
    f = M.field
    if f.p is None:
        raise SplittingError("module splitting is implemented over prime fields only")
    n = M.dim
    if n <= 1:
        return None
    d = M.algebra.dim
    for _ in range(MAX_SPLIT_TRIES):
        a = combine(f, ExactMatrix.random(f, d, 1, rng), M.action)
        for fac in _charpoly_factors(a):
            deg = len(fac) - 1
            null = kernel_basis(_poly_eval(fac, a))
            sub = spin(M, _random_nonzero(null, rng))
            if sub.cols < n:
                return sub
            w = _random_nonzero(kernel_basis(_poly_eval(fac, a.T)), rng)
            dual_sub = column_space_basis(ExactMatrix.hstack(f, [m.T @ w for m in M.action]))
            if dual_sub.cols < n:
                # the annihilator of a proper dual submodule is a proper submodule
                return kernel_basis(dual_sub.T)
            if null.cols == deg:
                return None
    raise SplittingError(f"no decision after {MAX_SPLIT_TRIES} random elements")


def composition_factors(M: Module, seed: int = 0) -> list:
    """Simple composition factors of ``M`` (with repetition)."""
    rng = np.random.default_rng(seed)
    stack, out = [M], []
    while stack:
        X = stack.pop()
        if X.dim == 0:
            continue
        sub = find_proper_submodule(X, rng)
        if sub is None:
            out.append(X)
            continue
        Q, _, _ = quotient_module(X, sub)
        stack.extend([Q, restrict_to_subspace(X, sub)])
    return out


def distinct_simples(factors: list) -> list:
    """Drop isomorphic repeats; simple modules are isomorphic iff Hom != 0."""
    reps: list = []
    for S in factors:
        if not any(R.dim == S.dim and hom_dim(R, S) > 0 for R in reps):
            reps.append(S)
    reps.sort(key=lambda S: S.dim)
    return reps


def simple_modules(alg: Algebra, side: str = "left", seed: int = 0) -> list:
    """One representative of each simple module (prime fields only)."""
    return distinct_simples(composition_factors(regular_module(alg, side), seed))


def radical_basis(alg: Algebra, seed: int = 0) -> ExactMatrix:
    """Coordinate columns spanning the Jacobson radical of ``alg``."""
    return _radical_cached(alg, seed)


@lru_cache(maxsize=None)
def _radical_cached(alg: Algebra, seed: int) -> ExactMatrix:
    f = alg.field
    if f.p is None:
        return _trace_form_radical(alg)
    # J is the common annihilator of the simples: kernel of x -> (rho_S(x))_S
    blocks = [ExactMatrix._wrap(f, np.stack([m.a.ravel() for m in S.action], axis=1).copy())
              for S in simple_modules(alg, "left", seed)]
    return kernel_basis(ExactMatrix.vstack(f, blocks, cols=alg.dim))


def _trace_form_radical(alg: Algebra) -> ExactMatrix:
    f, d = alg.field, alg.dim
    traces = [sum(m.a[i, i] for i in range(d)) for m in alg.left_mult]
    gram = f.zeros((d, d))
    for i in range(d):
        for j in range(d):
            gram[i, j] = sum(alg.c[i, j, k] * traces[k] for k in range(d))
    return kernel_basis(ExactMatrix._wrap(f, gram))


def is_semisimple(alg: Algebra) -> bool:
    return radical_basis(alg).cols == 0


def simple_dims(alg: Algebra, seed: int = 0) -> list:
    return sorted(S.dim for S in simple_modules(alg, "left", seed))


# ----------------------------------------------------------------------------
# primitive idempotents

IDEMPOTENT_TRIES = 60


def _split_idempotent(alg: Algebra, e: ExactMatrix, rng) -> Optional[ExactMatrix]:
    """A nontrivial idempotent ``f`` of ``e A e`` (so ``e = f + (e - f)``), or ``None``.

    For ``y`` in ``e A e`` right multiplication by ``y`` is an endomorphism of
    ``A e``; two distinct irreducible factors of its characteristic polynomial
    split ``A e`` into primary components, and the projection of ``e`` onto
    one of them is the idempotent.
    """
    f = alg.field
    Ae = column_space_basis(alg.right_mult_by(e))
    m = Ae.cols
    if m <= 1:
        return None
    L = left_inverse(Ae)
    for _ in range(IDEMPOTENT_TRIES):
        x = ExactMatrix.random(f, alg.dim, 1, rng, bound=5)
        y = alg.mul(alg.mul(e, x), e)
        phi = L @ alg.right_mult_by(y) @ Ae
        facs = _charpoly_factors(phi)
        if len(facs) < 2:
            continue
        q = _poly_eval(facs[0], phi)
        qm = ExactMatrix.identity(f, m)
        for _ in range(m):
            qm = qm @ q
        ker, im = kernel_basis(qm), column_space_basis(qm)
        coords = solve_affine(ExactMatrix.hstack(f, [ker, im]), L @ e)
        return Ae @ ker @ coords[:ker.cols, :]
    return None


def primitive_idempotents(alg: Algebra, seed: int = 0) -> list:
    """A complete set of orthogonal idempotents summing to 1, each one primitive
    unless ``IDEMPOTENT_TRIES`` random elements failed to split it."""
    return list(_idempotents_cached(alg, seed))


@lru_cache(maxsize=None)
def _idempotents_cached(alg: Algebra, seed: int) -> tuple:
    rng = np.random.default_rng(seed)
    todo, done = [alg.unit], []
    while todo:
        e = todo.pop()
        g = _split_idempotent(alg, e, rng)
        if g is None:
            done.append(e)
        else:
            todo.extend([e - g, g])
    done.sort(key=lambda v: [str(c) for c in v.entries()])
    return tuple(done)
