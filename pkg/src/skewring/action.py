"""Finite groups given by multiplication tables, and their actions on algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algcore import Algebra, Module, ModuleError, combine
from .exactlin import ExactMatrix


class GroupError(ValueError):
    pass


class ActionError(ValueError):
    pass


class FiniteGroup:
    """Group on ``{0, ..., n-1}`` with ``table[a][b] = a*b``."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = ""):
        t = np.array(table, dtype=np.int64)
        n = t.shape[0] if t.ndim == 2 else 0
        if n == 0 or t.shape != (n, n):
            raise GroupError("multiplication table must be a nonempty square")
        full = set(range(n))
        for i in range(n):
            if set(t[i].tolist()) != full or set(t[:, i].tolist()) != full:
                raise GroupError(f"table is not a Latin square (row/column {i})")
        ids = [e for e in range(n) if list(t[e]) == list(range(n)) and list(t[:, e]) == list(range(n))]
        if not ids:
            raise GroupError("no identity element")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise GroupError(f"associativity fails on triple ({a}, {b}, {c})")
        self.table = t
        self.table.setflags(write=False)
        self.order = n
        self.identity = ids[0]
        self.inverses = [int(np.nonzero(t[a] == self.identity)[0][0]) for a in range(n)]
        self.name = name

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())


def make_group(table, name: str = "") -> FiniteGroup:
    return FiniteGroup(table, name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def permutation_group(perms: Sequence[tuple], name: str = "") -> FiniteGroup:
    """Group table of a list of permutations closed under composition.

    ``(p*q)(i) = p(q(i))``; the identity permutation must be listed first.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms] for p in perms]
    return FiniteGroup(table, name)


def symmetric_group_3() -> FiniteGroup:
    """S_3 with elements e, (01), (12), (02), (012), (021) in that order."""
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    return permutation_group(perms, "S3")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(n * m)]
             for a in range(n * m)]
    return FiniteGroup(table, f"{G.name}x{H.name}")


@dataclass(frozen=True)
class SubgroupEmbedding:
    parent: FiniteGroup
    elements: tuple
    left_coset_reps: tuple

    @property
    def index(self) -> int:
        return len(self.left_coset_reps)

    def coset_of(self, g: int) -> tuple:
        """``(k, h)`` with ``g = reps[k] * h`` and ``h`` in the subgroup."""
        G = self.parent
        for k, r in enumerate(self.left_coset_reps):
            h = G.mul(G.inv(r), g)
            if h in self._elset:
                return k, h
        raise GroupError(f"element {g} lies in no coset")  # unreachable for valid data

    @property
    def _elset(self) -> frozenset:
        return frozenset(self.elements)


def subgroup(G: FiniteGroup, elements: Sequence[int]) -> SubgroupEmbedding:
    """Validate a subgroup and pick canonical left coset representatives.

    Representatives: the identity first, then the smallest index not yet
    covered by a previous coset ``r H``.
    """
    els = sorted(set(int(x) for x in elements))
    if not els:
        raise GroupError("subgroup must be nonempty")
    if any(x < 0 or x >= G.order for x in els):
        raise GroupError("subgroup element out of range")
    s = set(els)
    for a in els:
        if G.inv(a) not in s:
            raise GroupError(f"not closed under inverses: {a}")
        for b in els:
            if G.mul(a, b) not in s:
                raise GroupError(f"not closed under multiplication: {a}*{b}")
    # order the subgroup with the identity first for readable bases
    els = [G.identity] + [x for x in els if x != G.identity]
    reps, covered = [G.identity], {G.mul(G.identity, h) for h in els}
    for g in range(G.order):
        if g not in covered:
            reps.append(g)
            covered |= {G.mul(g, h) for h in els}
    return SubgroupEmbedding(G, tuple(els), tuple(reps))


class GroupAction:
    """``G`` acting on ``R`` by algebra automorphisms.

    ``auto[g]`` has as column ``j`` the coordinates of ``g(b_j)``.
    """

    def __init__(self, group: FiniteGroup, algebra: Algebra, matrices: Sequence, *, check: bool = True):
        self.group = group
        self.algebra = algebra
        f = algebra.field
        if len(matrices) != group.order:
            raise ActionError(f"need {group.order} matrices, got {len(matrices)}")
        self.auto = [m if isinstance(m, ExactMatrix) else ExactMatrix(f, m) for m in matrices]
        if check:
            self.validate()

    def validate(self):
        A, G, f = self.algebra, self.group, self.algebra.field
        d = A.dim
        ident = ExactMatrix.identity(f, d)
        for g in G.elements():
            m = self.auto[g]
            if m.shape != (d, d):
                raise ActionError(f"automorphism of element {g} has shape {m.shape}")
            if not m.is_invertible():
                raise ActionError(f"axiom 1: the map of element {g} is not bijective")
            if m @ A.unit != A.unit:
                raise ActionError(f"axiom 1: element {g} does not fix the unit")
            # g(b_i b_j) == g(b_i) g(b_j)
            imgs = [m.col(j) for j in range(d)]
            for i in range(d):
                Li = A.left_mult_by(imgs[i])
                prod_imgs = Li @ m                            # columns g(b_i) g(b_j)
                direct = m @ A.left_mult[i]                   # columns g(b_i b_j)
                if prod_imgs != direct:
                    raise ActionError(f"axiom 1: element {g} is not multiplicative on {A.labels[i]}")
        if self.auto[G.identity] != ident:
            raise ActionError("axiom 3: the identity does not act trivially")
        for a in G.elements():
            for b in G.elements():
                if self.auto[a] @ self.auto[b] != self.auto[G.mul(a, b)]:
                    raise ActionError(f"axiom 2: composition mismatch for ({a}, {b})")

    def apply(self, g: int, x: ExactMatrix) -> ExactMatrix:
        return self.auto[g] @ x

    def is_trivial(self) -> bool:
        ident = ExactMatrix.identity(self.algebra.field, self.algebra.dim)
        return all(m == ident for m in self.auto)

    def restrict(self, sub: SubgroupEmbedding) -> tuple:
        """Action of a subgroup as ``(group, action)`` on re-indexed elements."""
        G = self.group
        els = list(sub.elements)
        pos = {g: i for i, g in enumerate(els)}
        table = [[pos[G.mul(a, b)] for b in els] for a in els]
        H = FiniteGroup(table)
        return H, GroupAction(H, self.algebra, [self.auto[g] for g in els], check=False)


def make_action(group: FiniteGroup, algebra: Algebra, matrices) -> GroupAction:
    return GroupAction(group, algebra, matrices)


def trivial_action(group: FiniteGroup, algebra: Algebra) -> GroupAction:
    ident = ExactMatrix.identity(algebra.field, algebra.dim)
    return GroupAction(group, algebra, [ident] * group.order, check=False)


def action_from_generator_images(group: FiniteGroup, algebra: Algebra, gen_images: dict) -> GroupAction:
    """Extend automorphisms given on group generators to the whole group."""
    f = algebra.field
    d = algebra.dim
    autos = {group.identity: ExactMatrix.identity(f, d)}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, m in gen_images.items():
                m = m if isinstance(m, ExactMatrix) else ExactMatrix(f, m)
                b = group.mul(s, a)
                if b not in autos:
                    autos[b] = m @ autos[a]
                    nxt.append(b)
        frontier = nxt
    if len(autos) != group.order:
        raise ActionError("generator images do not reach every group element")
    return GroupAction(group, algebra, [autos[g] for g in group.elements()])


def twist_module(action: GroupAction, g: int, M: Module) -> Module:
    """``^g M``: same space, ``r . x = g^{-1}(r) x``."""
    G = action.group
    if not 0 <= g < G.order:
        raise ActionError(f"group element {g} out of range")
    if M.algebra is not action.algebra and M.algebra != action.algebra:
        raise ModuleError("module is not over the acted algebra")
    ginv = action.auto[G.inv(g)]
    mats = [combine(M.field, ginv.col(i), M.action) if M.dim else M.action[i]
            for i in range(M.algebra.dim)]
    return Module(M.algebra, mats, M.side, dim=M.dim, check=False)
