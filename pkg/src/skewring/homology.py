"""Projective resolutions, Ext and Tor, and homological dimensions.

Every module is treated as a left module over its acting algebra ``B``
(``A`` for left modules, ``A^op`` for right modules).  A free module ``B^r``
has coordinates in ``k^(r*d)``, block ``t`` holding the component ``t``.  A
differential ``B^r -> X`` is stored both as its ``k``-matrix and as the list
of generator images ``u_j = d(e_j)``.

Ext is read off ``Hom_B(B^r, N) = N^r`` and Tor off ``B^r (x)_A N = N^r``;
in both cases the differential has block ``(j, t)`` equal to the action of
the ``t``-th component of ``u_j`` on ``N``.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .algcore import (
    LEFT,
    RIGHT,
    Module,
    ModuleError,
    ModuleMorphism,
    combine,
    free_module,
    is_isomorphic,
    regular_module,
    restrict_to_subspace,
)
from .exactlin import ExactMatrix, column_space_basis, extend_basis, kernel_basis
from .functors import dual
from .meataxe import primitive_idempotents, radical_basis

DEFAULT_CUTOFF = 8

FP_NOTE = ("finitely generated modules over a finite-dimensional algebra are FP_infinity, "
           "so FP_n classes are tested against an explicit finite witness family")
FLAT_NOTE = "finitely generated flat modules over an Artinian algebra are projective; flat dimension = pd"


# ----------------------------------------------------------------------------
# dimension reports


@dataclass(frozen=True)
class DimReport:
    """``finite(n)``, ``infinite`` (with a periodicity witness) or ``at_least(n)``."""

    kind: str
    value: Optional[int] = None
    witness: Optional[tuple] = None
    note: str = ""

    @classmethod
    def finite(cls, n: int, note: str = "") -> "DimReport":
        return cls("finite", n, note=note)

    @classmethod
    def infinite(cls, witness: tuple, note: str = "") -> "DimReport":
        return cls("infinite", None, witness, note)

    @classmethod
    def at_least(cls, n: int, note: str = "") -> "DimReport":
        return cls("at_least", n, note=note)

    @property
    def resolved(self) -> bool:
        return self.kind != "at_least"

    @property
    def low(self) -> float:
        return float("inf") if self.kind == "infinite" else self.value

    @property
    def high(self) -> float:
        return self.value if self.kind == "finite" else float("inf")

    def __str__(self):
        if self.kind == "finite":
            return f"finite({self.value})"
        if self.kind == "infinite":
            i, j = self.witness[:2]
            return f"infinite (Omega^{i} ~= Omega^{j})"
        return f"at_least({self.value})"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "value": self.value}
        if self.witness is not None:
            out["witness"] = list(self.witness[:2])
        return out


def may_equal(a: DimReport, b: DimReport) -> bool:
    """False only when the value sets of ``a`` and ``b`` are disjoint."""
    return a.low <= b.high and b.low <= a.high


def may_be_le(a: DimReport, b: DimReport) -> bool:
    """False only when every value of ``a`` exceeds every value of ``b``."""
    return a.low <= b.high


def dim_max(reports: Sequence[DimReport]) -> DimReport:
    """Dimension of a direct sum from the dimensions of the parts."""
    reports = list(reports)
    for r in reports:
        if r.kind == "infinite":
            return r
    fin = max((r.value for r in reports if r.kind == "finite"), default=0)
    lows = [r.value for r in reports if r.kind == "at_least"]
    if lows:
        return DimReport.at_least(max(lows + [fin]))
    return DimReport.finite(fin)


# ----------------------------------------------------------------------------
# resolutions


class _Projectives:
    """Indecomposable projectives ``B e`` of an acting algebra ``B``, one per
    isomorphism class, from a complete set of primitive idempotents."""

    def __init__(self, module: Module):
        A, B = module.algebra, module.acting
        self.field = A.field
        self.idems = []
        reps = []
        # the same idempotents are primitive in A and in A^op
        for e in primitive_idempotents(A):
            P = restrict_to_subspace(regular_module(A, module.side), column_space_basis(B.right_mult_by(e)))
            if not any(Q.dim == P.dim and is_isomorphic(Q, P).holds for Q in reps):
                reps.append(P)
                self.idems.append(e)
        self.basis = [column_space_basis(B.right_mult_by(e)) for e in self.idems]


_PROJ: dict = {}


def _projectives(module: Module) -> _Projectives:
    key = (module.algebra, module.side)
    if key not in _PROJ:
        _PROJ[key] = _Projectives(module)
    return _PROJ[key]


class Resolution:
    """A prefix ``P_l -> ... -> P_0 -> M -> 0`` of a projective resolution.

    The term ``P_n`` is ``B e_1 + ... + B e_r`` inside ``B^r``; ``idems[n]``
    lists the ``e_j`` (the padded variant adds one summand with ``e = 1``).
    ``gens[n]`` lists the images ``u_j = d_n(e_j)`` (vectors of ``B^{r_{n-1}}``,
    or of ``M`` for ``n = 0``), ``dmats[n]`` is ``d_n`` as a matrix on all of
    ``B^r`` (it kills the complement of ``P_n``) and ``kernels[n]`` a basis of
    ``ker d_n`` inside ``P_n``, the next syzygy.
    """

    def __init__(self, module: Module, minimal: bool = True):
        self.module = module
        self.minimal = minimal
        self.algebra = module.acting
        self.ranks: list = []
        self.idems: list = []
        self.gens: list = []
        self.dmats: list = []
        self.kernels: list = []
        self.term_bases: list = []
        self._rad = None
        self._free_cache: dict = {}

    @property
    def field(self):
        return self.module.field

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    @property
    def terminated(self) -> bool:
        return bool(self.ranks) and self.ranks[-1] == 0

    def free(self, r: int) -> Module:
        if r not in self._free_cache:
            self._free_cache[r] = free_module(self.module.algebra, r, self.module.side)
        return self._free_cache[r]

    def _radical_span(self, X: Module, U: ExactMatrix) -> ExactMatrix:
        f = self.field
        if self._rad is None:
            # J(A^op) = J(A) as a subspace
            self._rad = radical_basis(self.module.algebra)
        imgs = [combine(f, self._rad.col(t), X.action) @ U for t in range(self._rad.cols)]
        if not imgs:
            return ExactMatrix.zeros(f, X.dim, 0)
        return column_space_basis(ExactMatrix.hstack(f, imgs, rows=X.dim))

    def _choose_generators(self, X: Module, U: ExactMatrix) -> list:
        """Pairs ``(u, e)`` with ``u = e u`` in ``U``; the maps ``B e -> X``, ``e -> u`` cover ``U``."""
        f = self.field
        if U.cols == 0:
            return []
        span = lambda base, gens: column_space_basis(ExactMatrix.hstack(
            f, [base] + [a @ u for u, _ in gens for a in X.action], rows=X.dim))
        # each u in eU outside W adds one simple summand of the top U/JU
        gens: list = []
        W = self._radical_span(X, U)
        proj = _projectives(self.module)
        while W.cols < U.cols:
            for e in proj.idems:
                cands = X.act(e) @ U
                idx = extend_basis(W, cands)
                if idx:
                    gens.append((cands.col(idx[0]), e))
                    W = span(W, gens[-1:])
                    break
        if self.minimal:
            return gens
        # padded variant: one extra free summand mapping to the sum of the generators
        pad = gens[0][0]
        for u, _ in gens[1:]:
            pad = pad + u
        return gens + [(pad, self.algebra.unit)]

    def _step(self, X: Module, U: ExactMatrix):
        f = self.field
        d = self.algebra.dim
        gens = self._choose_generators(X, U)
        r = len(gens)
        self.ranks.append(r)
        self.gens.append([u for u, _ in gens])
        self.idems.append([e for _, e in gens])
        if r == 0:
            self.dmats.append(ExactMatrix.zeros(f, X.dim, 0))
            self.term_bases.append(ExactMatrix.zeros(f, 0, 0))
            self.kernels.append(ExactMatrix.zeros(f, 0, 0))
            return
        dmat = ExactMatrix.hstack(f, [a @ u for u, _ in gens for a in X.action], rows=X.dim)
        blocks = [column_space_basis(self.algebra.right_mult_by(e)) for _, e in gens]
        P = ExactMatrix.block_diag(f, blocks) if blocks else ExactMatrix.zeros(f, r * d, 0)
        self.dmats.append(dmat)
        self.term_bases.append(P)
        self.kernels.append(P @ kernel_basis(dmat @ P))

    def extend(self, length: int) -> "Resolution":
        """Compute terms up to ``P_length`` (or until the resolution stops)."""
        while self.length < length and not self.terminated:
            if not self.ranks:
                M = self.module
                self._step(M, ExactMatrix.identity(self.field, M.dim))
            else:
                self._step(self.free(self.ranks[-1]), self.kernels[-1])
        return self

    def rank(self, n: int) -> int:
        self.extend(n)
        return self.ranks[n] if n < len(self.ranks) else 0

    def idempotents(self, n: int) -> list:
        self.extend(n)
        return self.idems[n] if n < len(self.idems) else []

    def component(self, n: int, j: int, t: int) -> ExactMatrix:
        """Component ``t`` (an element of ``e_j B e_t``) of ``d_n(e_j)``, ``n >= 1``."""
        d = self.algebra.dim
        u = self.gens[n][j]
        return ExactMatrix._wrap(self.field, u.a[t * d:(t + 1) * d].copy())

    # structural views

    def term(self, n: int) -> Module:
        self.extend(n)
        if n >= len(self.ranks) or self.ranks[n] == 0:
            return _zero(self.module)
        return restrict_to_subspace(self.free(self.ranks[n]), self.term_bases[n])

    @property
    def terms(self) -> list:
        return [self.term(n) for n in range(len(self.ranks))]

    def syzygy(self, n: int) -> Module:
        """``Omega^n``: ``M`` for ``n = 0``, else ``ker d_{n-1}``."""
        if n == 0:
            return self.module
        self.extend(n - 1)
        if n - 1 >= len(self.kernels) or self.kernels[n - 1].cols == 0:
            return _zero(self.module)
        return restrict_to_subspace(self.free(self.ranks[n - 1]), self.kernels[n - 1])

    def check(self) -> bool:
        """Exactness certificates: surjective ``d_0``, ``d_{n-1} d_n = 0`` and
        ``rank d_n = dim ker d_{n-1}`` at every computed degree."""
        if self.dmats and self.dmats[0].rank() != self.module.dim:
            return False
        for n in range(1, len(self.dmats)):
            if self.ranks[n] == 0:
                if self.kernels[n - 1].cols:
                    return False
                continue
            if not (self.dmats[n - 1] @ self.dmats[n]).is_zero():
                return False
            if (self.dmats[n] @ self.term_bases[n]).rank() != self.kernels[n - 1].cols:
                return False
        return True


def _zero(M: Module) -> Module:
    z = ExactMatrix.zeros(M.field, 0, 0)
    return Module(M.algebra, [z] * M.algebra.dim, M.side, dim=0, check=False)


_CACHE: dict = {True: weakref.WeakKeyDictionary(), False: weakref.WeakKeyDictionary()}


def projective_resolution(M: Module, length: int, minimal: bool = True) -> Resolution:
    """Projective resolution of ``M`` through ``P_length``; cached per module object.

    The minimal variant covers by indecomposable projectives ``B e``; the
    padded variant adds one redundant free summand ``B`` in every degree.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    cache = _CACHE[bool(minimal)]
    res = cache.get(M)
    if res is None:
        res = Resolution(M, minimal)
        cache[M] = res
    return res.extend(length)


# ----------------------------------------------------------------------------
# Ext and Tor


def _hom_spaces(res: Resolution, N: Module, n: int) -> ExactMatrix:
    """Basis of ``e_1 N + ... + e_r N`` inside ``N^r``: both ``Hom(P_n, N)`` and
    ``P_n (x) N`` are realised there."""
    f = N.field
    blocks = [column_space_basis(N.act(e)) for e in res.idempotents(n)]
    if not blocks:
        return ExactMatrix.zeros(f, 0, 0)
    return ExactMatrix.block_diag(f, blocks)


def _blocks(res: Resolution, N: Module, n: int, transpose: bool) -> ExactMatrix:
    """Block matrix with block ``(j, t)`` the action of ``d_n(e_j)_t`` on ``N``
    (block ``(t, j)`` when ``transpose``), for ``n >= 1``."""
    f = N.field
    rn, rp = res.rank(n), res.rank(n - 1)
    m = N.dim
    out = f.zeros((rp * m, rn * m) if transpose else (rn * m, rp * m))
    for j in range(rn):
        for t in range(rp):
            blk = N.act(res.component(n, j, t)).a
            if transpose:
                out[t * m:(t + 1) * m, j * m:(j + 1) * m] = blk
            else:
                out[j * m:(j + 1) * m, t * m:(t + 1) * m] = blk
    return ExactMatrix._wrap(f, out)


def _rank_of(mat: ExactMatrix) -> int:
    return 0 if mat.rows == 0 or mat.cols == 0 else mat.rank()


def _complex_dims(res: Resolution, N: Module, top: int, transpose: bool) -> list:
    spaces = [_hom_spaces(res, N, n) for n in range(top + 2)]
    ranks = [0]
    for n in range(1, top + 2):
        if res.rank(n) == 0 or res.rank(n - 1) == 0:
            ranks.append(0)
            continue
        # the map between consecutive terms, on the domain space
        dom = spaces[n] if transpose else spaces[n - 1]
        ranks.append(_rank_of(_blocks(res, N, n, transpose) @ dom))
    return [spaces[n].cols - ranks[n] - ranks[n + 1] for n in range(top + 1)]


def ext_dims(M: Module, N: Module, top: int, minimal: bool = True) -> list:
    """``[dim Ext^n(M, N) for n in 0..top]``."""
    M.same_category(N)
    res = projective_resolution(M, top + 1, minimal)
    return _complex_dims(res, N, top, transpose=False)


def ext_dim(M: Module, N: Module, n: int, minimal: bool = True) -> int:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return ext_dims(M, N, n, minimal)[n]


def _check_tor_sides(M: Module, N: Module):
    if M.algebra is not N.algebra and M.algebra != N.algebra:
        raise ModuleError("modules over different algebras")
    if M.side != RIGHT or N.side != LEFT:
        raise ModuleError("Tor needs a right module and a left module")


def tor_dims(M: Module, N: Module, top: int, minimal: bool = True) -> list:
    """``[dim Tor_n(M, N) for n in 0..top]`` for ``M`` right and ``N`` left."""
    _check_tor_sides(M, N)
    res = projective_resolution(M, top + 1, minimal)
    return _complex_dims(res, N, top, transpose=True)


def tor_dim(M: Module, N: Module, n: int, minimal: bool = True) -> int:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return tor_dims(M, N, n, minimal)[n]


# ----------------------------------------------------------------------------
# projective and injective dimension


def _periodicity(res: Resolution, upto: int, seed: int = 0) -> Optional[tuple]:
    """First pair ``i < j <= upto`` with ``Omega^i ~= Omega^j``, with the witness matrix."""
    syz = [res.syzygy(n) for n in range(upto + 1)]
    for j in range(1, upto + 1):
        for i in range(j):
            if syz[i].dim != syz[j].dim or syz[i].dim == 0:
                continue
            v = is_isomorphic(syz[i], syz[j], seed=seed)
            if v.holds:
                return (i, j, v.witness)
    return None


def proj_dim(M: Module, cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> DimReport:
    """Projective dimension from the minimal resolution.

    ``finite(n)`` when ``Omega^(n+1) = 0``, i.e. ``Omega^n`` is projective;
    ``infinite`` when two syzygies are isomorphic; else ``at_least(cutoff)``.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if M.dim == 0:
        return DimReport.finite(0, note="zero module")
    res = projective_resolution(M, cutoff + 1, True)
    for n in range(cutoff + 1):
        if res.rank(n + 1) == 0:
            return DimReport.finite(n)
    per = _periodicity(res, cutoff, seed)
    if per is not None:
        return DimReport.infinite(per)
    return DimReport.at_least(cutoff)


def flat_dim(M: Module, cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> DimReport:
    r = proj_dim(M, cutoff, seed)
    return DimReport(r.kind, r.value, r.witness, FLAT_NOTE)


def inj_dim(M: Module, cutoff: int = DEFAULT_CUTOFF, seed: int = 0) -> DimReport:
    """Injective dimension as the projective dimension of the dual."""
    r = proj_dim(dual(M), cutoff, seed)
    return DimReport(r.kind, r.value, r.witness, "computed as pd of the dual module")


# ----------------------------------------------------------------------------
# relative dimensions and vanishing classes


EXT, TOR = "ext", "tor"


def _check_family(M: Module, family: Sequence[Module], mode: str):
    if not family:
        raise ValueError("witness family must be nonempty")
    for F in family:
        if F.algebra is not M.algebra and F.algebra != M.algebra:
            raise ModuleError("witness over a different algebra")
        if mode == EXT and F.side != M.side:
            raise ModuleError("ext mode needs witnesses on the side of the module")
        if mode == TOR and (F.side != RIGHT or M.side != LEFT):
            raise ModuleError("tor mode needs right witnesses and a left module")


def vanishing_table(M: Module, family: Sequence[Module], mode: str, top: int,
                    minimal: bool = True) -> list:
    """Rows ``[dim Ext^n(F, M)]`` (or ``Tor_n(F, M)``), ``n = 0..top``, one per ``F``."""
    _check_family(M, family, mode)
    fn = ext_dims if mode == EXT else tor_dims
    return [fn(F, M, top, minimal) for F in family]


def dim_from_table(table: list, cutoff: int, note: str = "") -> DimReport:
    """Smallest ``k`` with every degree ``k+1..cutoff`` vanishing over the rows."""
    last = 0
    for row in table:
        for n in range(1, cutoff + 1):
            if row[n]:
                last = max(last, n)
    if last == cutoff:
        return DimReport.at_least(cutoff, note=note)
    return DimReport.finite(last, note=note)


def relative_dim(M: Module, family: Sequence[Module], mode: str = EXT,
                 cutoff: int = DEFAULT_CUTOFF) -> DimReport:
    """Relative dimension of ``M`` against ``family``; vanishing is checked through ``cutoff``."""
    if mode not in (EXT, TOR):
        raise ValueError(f"mode must be 'ext' or 'tor', got {mode!r}")
    table = vanishing_table(M, family, mode, cutoff)
    return dim_from_table(table, cutoff, note=f"vanishing checked through degree {cutoff}; " + FP_NOTE)


CLASS_KINDS = {
    "nd-injective": EXT,
    "nd-flat": TOR,
    "n-cospiral": EXT,
    "n-cotorsion": EXT,
    "strongly-copure-flat": TOR,
    "strongly-copure-injective": EXT,
}


@dataclass
class VanishingProfile:
    class_kind: str
    witness_family: list
    degrees_checked: tuple
    holds: bool
    failing_witness: Optional[tuple] = None
    note: str = ""
    table: list = dc_field(default_factory=list)


_REGULAR = weakref.WeakKeyDictionary()


def _regular(A, side) -> Module:
    """Cached regular modules, so resolutions of the injectives are reused."""
    d = _REGULAR.setdefault(A, {})
    if side not in d:
        d[side] = regular_module(A, side)
        d[side + "*"] = dual(d[side])
    return d[side]


def _dual_regular(A, side) -> Module:
    _regular(A, side)
    return _REGULAR[A][side + "*"]


def injectives(M: Module, mode: str) -> list:
    """Injectives for the copure classes: ``D(A)`` on the side the check pairs with ``M``.

    Every finitely generated injective is a summand of a power of ``D(A)``
    and Ext/Tor are additive, so this single witness covers the class.
    """
    A = M.algebra
    if mode == EXT:
        # injectives on the side of M: dual of the regular module of the other side
        return [_dual_regular(A, RIGHT if M.side == LEFT else LEFT)]
    # injectives on the opposite side of M
    return [_dual_regular(A, M.side)]


def vanishing_profile(M: Module, class_kind: str, witness_family: Optional[Sequence[Module]] = None,
                      degrees: Sequence[int] = (1,)) -> VanishingProfile:
    """Check membership of ``M`` in a vanishing class against a finite family.

    The caller picks the degrees: ``(1 + d,)`` for the ``(n, d)`` classes,
    ``(1,)`` for cospiral and cotorsion, ``1..cutoff`` for the strongly
    copure classes (whose family defaults to the injective ``D(A)``).
    """
    if class_kind not in CLASS_KINDS:
        raise ValueError(f"unknown class {class_kind!r}")
    mode = CLASS_KINDS[class_kind]
    if witness_family is None:
        if not class_kind.startswith("strongly-copure"):
            raise ValueError(f"class {class_kind!r} needs an explicit witness family")
        witness_family = injectives(M, mode)
    degrees = tuple(degrees)
    top = max(degrees)
    table = vanishing_table(M, witness_family, mode, top)
    for idx, row in enumerate(table):
        for n in degrees:
            if row[n]:
                return VanishingProfile(class_kind, list(witness_family), degrees, False,
                                        (idx, n), FP_NOTE, table)
    return VanishingProfile(class_kind, list(witness_family), degrees, True, None, FP_NOTE, table)


def _tail_closed(F: Module, cutoff: int) -> bool:
    """Whether Ext/Tor against the resolved module ``F`` is determined by degrees ``<= cutoff``."""
    r = proj_dim(F, cutoff)
    return r.kind == "finite" or (r.kind == "infinite" and r.witness[1] <= cutoff - 1)


def copure_dims(M: Module, cutoff: int = DEFAULT_CUTOFF) -> tuple:
    """``(cfd, cid)`` against the injective ``D(A)``.

    The vanishing tail is certified when the resolved module's minimal
    resolution stops or repeats within the cutoff; otherwise the report
    says vanishing was checked through the cutoff only.
    """
    out = []
    for mode in (TOR, EXT):
        fam = injectives(M, mode)
        if mode == TOR and M.side == RIGHT:
            # Tor(M, E) with E a left injective: the resolved module is M
            table = [tor_dims(M, E, cutoff) for E in fam]
            closed = _tail_closed(M, cutoff)
        else:
            table = vanishing_table(M, fam, mode, cutoff)
            closed = all(_tail_closed(E, cutoff) for E in fam)
        note = "tail closed by the resolution" if closed \
            else f"vanishing checked through degree {cutoff}"
        out.append(dim_from_table(table, cutoff, note))
    return tuple(out)


def cofamily_check(M: Module) -> list:
    """Injective dimension of each member of the copure families (should be 0)."""
    return [inj_dim(E) for mode in (TOR, EXT) for E in injectives(M, mode)]
