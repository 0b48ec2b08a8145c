"""Theorem battery over concrete instances ``(R, G, H, action, modules)``.

Every check compares quantities computed independently on the ``RH`` and
``RG`` sides.  A claim whose hypothesis is separability of ``RG`` over
``RH`` gets its own report; when the certificate says ``not_separable``
that report is ``skipped`` and its details hold the informational
evaluation.
"""
from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .action import FiniteGroup, action_from_generator_images, subgroup, trivial_action
from .algcore import (
    LEFT,
    RIGHT,
    Algebra,
    Module,
    is_direct_summand,
    is_isomorphic,
    quotient_module,
    random_cyclic_submodule,
    regular_module,
)
from .construct import (
    GradedAlgebra,
    SkewGroupAlgebra,
    block_decomposition,
    index_invertible,
    quinn_invariants,
    separability_witness,
    smash_product,
    verify_separability_witness,
)
from .exactlin import ExactMatrix
from .functors import FunctorContext, coinduce, dual, induce, restrict
from .homology import (
    DEFAULT_CUTOFF,
    FLAT_NOTE,
    FP_NOTE,
    DimReport,
    copure_dims,
    dim_from_table,
    ext_dims,
    inj_dim,
    injectives,
    may_be_le,
    may_equal,
    proj_dim,
    projective_resolution,
    tor_dims,
)
from .instfile import InstanceSpec, ModuleDecl

DEFAULT_NMAX = 4
DEFAULT_DMAX = 1
POOL_CAP = 6
MAX_POOL_DIM = 12
# split-pair samples for claims evaluated without their separability hypothesis
INFORMATIONAL_SAMPLES = 500
COTORSION_N = 1
SAMPLE_FRACTION = 0.25
POOL_NOTE = "evidence on the module pool only; the claims quantify over all modules"

VERIFIED, REFUTED, SKIPPED = "verified", "refuted", "skipped"


class InstanceError(ValueError):
    pass


# ----------------------------------------------------------------------------
# instances


def _closure(group: FiniteGroup, elements, given: dict, side: str, ident: ExactMatrix) -> dict:
    """Extend matrices given on some subgroup elements to the subgroup they generate."""
    mats = {group.identity: ident}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, m in given.items():
                b = group.mul(a, s)
                if b not in mats:
                    # left: rho(a s) = rho(a) rho(s); right: rho(a s) = rho(s) rho(a)
                    mats[b] = mats[a] @ m if side == LEFT else m @ mats[a]
                    nxt.append(b)
        frontier = nxt
    missing = [g for g in elements if g not in mats]
    if missing:
        raise InstanceError(f"group matrices do not generate elements {missing}")
    return mats


def build_module(decl: ModuleDecl, skew: SkewGroupAlgebra, sub, RG: Algebra, RH: Algebra) -> Module:
    f = skew.field
    group = skew.group
    els = list(range(group.order)) if decl.over == "RG" else list(sub.H.elements)
    for g in decl.group_actions:
        if g not in els:
            raise InstanceError(f"module {decl.name!r}: element {g} is not in {decl.over}")
    ident = ExactMatrix.identity(f, decl.dim)
    gm = _closure(group, els, decl.group_actions, decl.side, ident)
    d = skew.base.dim
    mats = []
    for p, g in enumerate(els):
        for i in range(d):
            b = decl.base_actions[i]
            mats.append(b @ gm[g] if decl.side == LEFT else gm[g] @ b)
    alg = RG if decl.over == "RG" else RH
    try:
        return Module(alg, mats, decl.side, dim=decl.dim, name=decl.name)
    except ValueError as exc:
        raise InstanceError(f"module {decl.name!r}: {exc}") from None


@dataclass
class Instance:
    spec: InstanceSpec
    seed: int = 0
    max_dim: int = MAX_POOL_DIM

    def __post_init__(self):
        sp = self.spec
        f = sp.field
        try:
            R = Algebra(f, sp.labels, _dense_consts(sp), sp.unit)
            G = FiniteGroup(sp.table)
            self.graded = None
            if sp.grading is not None:
                self.graded = GradedAlgebra(R, G, sp.grading)
                base, action = smash_product(self.graded)
            else:
                base = R
                action = action_from_generator_images(G, R, sp.autos) if sp.autos \
                    else trivial_action(G, R)
            self.skew = SkewGroupAlgebra(action)
            self.H = subgroup(G, sp.subgroup)
        except ValueError as exc:
            raise InstanceError(str(exc)) from None
        self.R, self.group, self.base = R, G, base
        self.ctx = FunctorContext(self.skew, self.H)
        self.declared = {d.name: build_module(d, self.skew, self.ctx.data, self.RG, self.RH)
                         for d in sp.modules}
        self._memo: dict = {}
        self._keep: list = []
        self._up: dict = {}
        self._down: dict = {}

    # basic data

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def field(self):
        return self.spec.field

    @property
    def RG(self) -> Algebra:
        return self.ctx.RG

    @property
    def RH(self) -> Algebra:
        return self.ctx.RH

    @cached_property
    def certificate(self):
        return separability_witness(self.skew, self.H)

    @property
    def separable(self) -> bool:
        return self.certificate.status == "separable"

    @cached_property
    def index_invertible(self) -> bool:
        return index_invertible(self.skew, self.H)

    def rng(self, salt: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(f"{self.name}/{salt}".encode())])

    def summary(self) -> dict:
        out = {
            "field": str(self.field),
            "dim_R": self.R.dim,
            "dim_base": self.base.dim,
            "group_order": self.group.order,
            "subgroup": list(self.H.elements),
            "index": self.H.index,
            "dim_RG": self.RG.dim,
            "dim_RH": self.RH.dim,
            "trivial_action": self.skew.action.is_trivial(),
            "graded": self.graded is not None,
            "separable": self.certificate.status,
            "index_invertible": self.index_invertible,
            "pools": {k: [_label(M) for M in v] for k, v in self.pools.items()},
        }
        if self.field.p is not None:
            from .meataxe import is_semisimple
            out["RG_semisimple"] = is_semisimple(self.RG)
            out["RH_semisimple"] = is_semisimple(self.RH)
        return out

    # module pools

    def _left_pool(self, A: Algebra, tag: str, over: str) -> list:
        out = [regular_module(A, LEFT).with_name(f"{tag}.reg")]
        rng = self.rng(f"pool/{tag}")
        if self.field.p is not None:
            from .meataxe import simple_modules
            for t, S in enumerate(simple_modules(A, LEFT, self.seed)):
                out.append(S.with_name(f"{tag}.S{t}"))
        reg = out[0]
        for _ in range(4):
            sub, basis = random_cyclic_submodule(reg, rng)
            if 0 < sub.dim < reg.dim:
                Q, _, _ = quotient_module(reg, basis)
                out += [sub.with_name(f"{tag}.cyc"), Q.with_name(f"{tag}.cycq")]
                break
        for dname, M in self.declared.items():
            if M.algebra is A and M.side == LEFT and self.spec_over(dname) == over:
                out.append(M)
        return self._trim(out)

    def spec_over(self, name: str) -> str:
        return next(d.over for d in self.spec.modules if d.name == name)

    def _right_pool(self, A: Algebra, tag: str, over: str, left: list) -> list:
        out = [regular_module(A, RIGHT).with_name(f"{tag}.reg_r")]
        out += [dual(M) for M in left if not M.name.endswith(".reg")]
        for dname, M in self.declared.items():
            if M.algebra is A and M.side == RIGHT and self.spec_over(dname) == over:
                out.append(M)
        return self._trim(out)

    def _trim(self, mods: list) -> list:
        keep = [mods[0]] + [M for M in mods[1:] if 0 < M.dim <= self.max_dim]
        return keep[:POOL_CAP]

    @cached_property
    def pools(self) -> dict:
        LH = self._left_pool(self.RH, "H", "RH")
        LG = self._left_pool(self.RG, "G", "RG")
        return {
            "left_RH": LH,
            "left_RG": LG,
            "right_RH": self._right_pool(self.RH, "H", "RH", LH),
            "right_RG": self._right_pool(self.RG, "G", "RG", LG),
        }

    def pool(self, over: str, side: str) -> list:
        return self.pools[f"{side}_{over}"]

    # memoized functors and homology

    def up(self, M: Module) -> Module:
        key = id(M)
        if key not in self._up:
            U = induce(self.ctx, M).with_name(f"ind({_label(M)})")
            self._up[key] = U
            self._keep.append(M)
        return self._up[key]

    def down(self, N: Module) -> Module:
        key = id(N)
        if key not in self._down:
            D = restrict(self.ctx, N).with_name(f"res({_label(N)})")
            self._down[key] = D
            self._keep.append(N)
        return self._down[key]

    def ext(self, M: Module, N: Module, top: int, minimal: bool = True) -> list:
        return self._dims("ext", M, N, top, minimal)

    def tor(self, M: Module, N: Module, top: int, minimal: bool = True) -> list:
        return self._dims("tor", M, N, top, minimal)

    def _dims(self, kind: str, M: Module, N: Module, top: int, minimal: bool) -> list:
        key = (kind, id(M), id(N), minimal)
        have = self._memo.get(key)
        if have is None or len(have) <= top:
            fn = ext_dims if kind == "ext" else tor_dims
            have = fn(M, N, top, minimal)
            self._memo[key] = have
            self._keep.extend([M, N])
        return have[:top + 1]

    def pd(self, M: Module, cutoff: int) -> DimReport:
        key = ("pd", id(M), cutoff)
        if key not in self._memo:
            self._memo[key] = proj_dim(M, cutoff, self.seed)
            self._keep.append(M)
        return self._memo[key]

    def copure(self, M: Module, cutoff: int) -> tuple:
        key = ("copure", id(M), cutoff)
        if key not in self._memo:
            self._memo[key] = copure_dims(M, cutoff)
            self._keep.append(M)
        return self._memo[key]


def _dense_consts(sp: InstanceSpec):
    d = sp.dim
    c = sp.field.zeros((d, d, d))
    for (i, j, k), v in sp.consts.items():
        c[i, j, k] = v
    return c


def _label(M: Module) -> str:
    return M.name or f"<{M.side} dim {M.dim}>"


# ----------------------------------------------------------------------------
# reports


@dataclass
class TheoremReport:
    theorem_id: str
    instance_id: str
    status: str
    details: dict = dc_field(default_factory=dict)
    witness: Optional[dict] = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"theorem_id": self.theorem_id, "instance_id": self.instance_id,
               "status": self.status, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


class _Claims:
    """Collects checked items; the first failure becomes the witness."""

    def __init__(self, theorem_id: str, inst: Instance, gate: Optional[bool] = None):
        self.theorem_id, self.inst = theorem_id, inst
        self.gate = gate
        self.items: list = []
        self.failures: list = []
        self.notes: list = []

    def add(self, ok: bool, **item):
        item = {"ok": bool(ok), **item}
        self.items.append(item)
        if not ok:
            self.failures.append(item)

    def report(self, **extra) -> TheoremReport:
        details = {"checked": len(self.items), "items": self.items, **extra}
        if self.notes:
            details["notes"] = self.notes
        if self.gate is False:
            details["informational_failures"] = len(self.failures)
            return TheoremReport(self.theorem_id, self.inst.name, SKIPPED, details,
                                 reason="hypothesis not met: RG is not a separable extension of RH")
        if self.failures:
            return TheoremReport(self.theorem_id, self.inst.name, REFUTED, details,
                                 witness=self.failures[0])
        if not self.items:
            return TheoremReport(self.theorem_id, self.inst.name, SKIPPED, details,
                                 reason="nothing to check on this instance")
        return TheoremReport(self.theorem_id, self.inst.name, VERIFIED, details)


def _dims_str(r: DimReport) -> str:
    return str(r)


def _sides():
    return (LEFT, RIGHT)


# ----------------------------------------------------------------------------
# checks


def check_separability(inst: Instance) -> list:
    c = _Claims("separability", inst)
    cert = inst.certificate
    witness_ok = cert.status != "separable" or verify_separability_witness(inst.skew, inst.H, cert.witness)
    c.add(witness_ok, claim="a returned witness satisfies mu(e) = 1 and x e = e x")
    if inst.index_invertible:
        c.add(cert.status == "separable", claim="[G:H] invertible in R implies separable",
              status=cert.status)
    return [c.report(status=cert.status, index_invertible=inst.index_invertible,
                     witness_terms=len(cert.terms()))]


def check_eckmann_shapiro(inst: Instance, n_max: int = DEFAULT_NMAX) -> list:
    c = _Claims("eckmann_shapiro", inst)
    for side in _sides():
        for N in inst.pool("RH", side):
            for M in inst.pool("RG", side):
                a = inst.ext(N, inst.down(M), n_max)
                b = inst.ext(inst.up(N), M, n_max)
                c.add(a == b, form=1, side=side, N=_label(N), M=_label(M), rh=a, rg=b)
                a = inst.ext(inst.down(M), N, n_max)
                b = inst.ext(M, inst.up(N), n_max)
                c.add(a == b, form=2, side=side, N=_label(N), M=_label(M), rh=a, rg=b)
    return [c.report(n_max=n_max)]


def check_tor_lemma(inst: Instance, n_max: int = DEFAULT_NMAX) -> list:
    c = _Claims("tor_lemma", inst)
    for M in inst.pool("RG", RIGHT):
        for N in inst.pool("RH", LEFT):
            a = inst.tor(inst.down(M), N, n_max)
            b = inst.tor(M, inst.up(N), n_max)
            c.add(a == b, form="M right over RG", M=_label(M), N=_label(N), rh=a, rg=b)
    for N in inst.pool("RH", RIGHT):
        for M in inst.pool("RG", LEFT):
            a = inst.tor(N, inst.down(M), n_max)
            b = inst.tor(inst.up(N), M, n_max)
            c.add(a == b, form="M left over RG", M=_label(M), N=_label(N), rh=a, rg=b)
    return [c.report(n_max=n_max)]


def _split_item(M: Module, X: Module, samples: Optional[int] = None) -> dict:
    kw = {} if samples is None else {"samples": samples}
    v = is_direct_summand(M, X, **kw)
    ok = v.holds
    if ok:
        F, G = v.witness
        ok = (G @ F) == ExactMatrix.identity(M.field, M.dim)
    return {"module": _label(M), "status": v.status, "split_pair_checked": bool(ok),
            "reason": v.reason}, ok


def check_summand_lemma(inst: Instance) -> list:
    p1 = _Claims("summand_lemma.part1", inst)
    for side in _sides():
        for M in inst.pool("RH", side):
            item, ok = _split_item(M, inst.down(inst.up(M)))
            p1.add(ok, side=side, **item)
    sep = inst.separable
    p2 = _Claims("summand_lemma.part2", inst, gate=sep)
    for side in _sides():
        for N in inst.pool("RG", side):
            item, ok = _split_item(N, inst.up(inst.down(N)), None if sep else INFORMATIONAL_SAMPLES)
            p2.add(ok, side=side, **item)
    return [p1.report(), p2.report()]


def _pd_pair(c: _Claims, rel: str, a: DimReport, b: DimReport, **item):
    ok = may_equal(a, b) if rel == "=" else may_be_le(a, b)
    c.add(ok, relation=rel, rh=str(a), rg=str(b), resolved=a.resolved and b.resolved, **item)


def check_pd_transfer(inst: Instance, cutoff: int = DEFAULT_CUTOFF) -> list:
    eq = _Claims("pd_transfer.induced", inst)
    le = _Claims("pd_transfer.restricted", inst)
    gated = _Claims("pd_transfer.restricted_equality", inst, gate=inst.separable)
    for side in _sides():
        for M in inst.pool("RH", side):
            _pd_pair(eq, "=", inst.pd(M, cutoff), inst.pd(inst.up(M), cutoff), side=side, M=_label(M))
        for N in inst.pool("RG", side):
            a, b = inst.pd(inst.down(N), cutoff), inst.pd(N, cutoff)
            _pd_pair(le, "<=", a, b, side=side, N=_label(N))
            _pd_pair(gated, "=", a, b, side=side, N=_label(N))
    strict = [it for it in gated.items if not it["ok"]]
    note = {"flat_dimension": FLAT_NOTE}
    return [eq.report(cutoff=cutoff, **note), le.report(cutoff=cutoff, **note),
            gated.report(cutoff=cutoff, strict_examples=len(strict), **note)]


# families ------------------------------------------------------------------


@dataclass
class _Family:
    """Witness modules for one relative notion."""
    kind: str           # "fp" | "flat" | "cospiral" | "cotorsion"
    mode: str           # "ext" | "tor"
    H: list
    G: list


def _families(inst: Instance, cutoff: int) -> list:
    """Pool-derived witness families.

    ``fp``: the whole pool (every module here is FP_infinity).  ``flat``:
    right pool, Tor mode.  ``cospiral``: pool modules with ``Tor_1`` against
    the right pool vanishing (the pool's stand-in for (n,0)-flat).
    ``cotorsion``: pool modules of projective (= flat) dimension at most n.
    """
    LH, LG = inst.pool("RH", LEFT), inst.pool("RG", LEFT)
    RH, RG = inst.pool("RH", RIGHT), inst.pool("RG", RIGHT)

    def flatlike(pool, right):
        return [F for F in pool if all(inst.tor(E, F, 1)[1] == 0 for E in right)]

    def low_pd(pool):
        out = []
        for F in pool:
            r = inst.pd(F, cutoff)
            if r.kind == "finite" and r.value <= COTORSION_N:
                out.append(F)
        return out

    return [
        _Family("fp", "ext", LH, LG),
        _Family("flat", "tor", RH, RG),
        _Family("cospiral", "ext", flatlike(LH, RH), flatlike(LG, RG)),
        _Family("cotorsion", "ext", low_pd(LH), low_pd(LG)),
    ]


def _row(inst: Instance, mode: str, F: Module, X: Module, top: int) -> list:
    return inst.ext(F, X, top) if mode == "ext" else inst.tor(F, X, top)


def _vanishes(inst: Instance, mode: str, family: list, X: Module, degrees, top: int) -> tuple:
    for F in family:
        row = _row(inst, mode, F, X, top)
        for n in degrees:
            if row[n]:
                return False, {"witness": _label(F), "degree": n}
    return True, None


def check_nd_transfer(inst: Instance, n_max: int = DEFAULT_NMAX, d_max: int = DEFAULT_DMAX,
                      cutoff: int = DEFAULT_CUTOFF) -> list:
    """Items 1-4 for the (n,d)-injective, (n,d)-flat, cospiral and cotorsion classes.

    Item 1 is an equivalence with the restricted family; items 2 and 3 use
    the induced ``RH`` family inside the ``RG`` witnesses.
    """
    items = {k: _Claims(f"nd_transfer.item{k}", inst, gate=(inst.separable if k == 4 else None))
             for k in (1, 2, 3, 4)}
    LH, LG = inst.pool("RH", LEFT), inst.pool("RG", LEFT)
    top = d_max + 1
    for fam in _families(inst, cutoff):
        if not fam.H or not fam.G:
            continue
        degree_sets = [(1 + d,) for d in range(d_max + 1)] if fam.kind in ("fp", "flat") else [(1,)]
        res_G = [inst.down(F) for F in fam.G]
        ind_H = [inst.up(F) for F in fam.H]
        for degs in degree_sets:
            tag = {"class": fam.kind, "degrees": list(degs)}
            for M in LH:
                h, hw = _vanishes(inst, fam.mode, res_G, M, degs, top)
                g, gw = _vanishes(inst, fam.mode, fam.G, inst.up(M), degs, top)
                items[1].add(h == g, M=_label(M), rh=h, rg=g, rh_witness=hw, rg_witness=gw, **tag)
                g3, _ = _vanishes(inst, fam.mode, fam.G + ind_H, inst.up(M), degs, top)
                h3, hw3 = _vanishes(inst, fam.mode, fam.H, M, degs, top)
                items[3].add(not g3 or h3, M=_label(M), rg=g3, rh=h3, rh_witness=hw3, **tag)
            for N in LG:
                g2, _ = _vanishes(inst, fam.mode, fam.G + ind_H, N, degs, top)
                h2, hw2 = _vanishes(inst, fam.mode, fam.H, inst.down(N), degs, top)
                items[2].add(not g2 or h2, N=_label(N), rg=g2, rh=h2, rh_witness=hw2, **tag)
                h4, _ = _vanishes(inst, fam.mode, res_G, inst.down(N), degs, top)
                g4, gw4 = _vanishes(inst, fam.mode, fam.G, N, degs, top)
                items[4].add(not h4 or g4, N=_label(N), rh=h4, rg=g4, rg_witness=gw4, **tag)
    extra = {"fp_note": FP_NOTE, "pool_note": POOL_NOTE, "n_max": n_max, "d_max": d_max}
    return [items[k].report(**extra) for k in (1, 2, 3, 4)]


def _reldim(inst: Instance, mode: str, family: list, X: Module, cutoff: int) -> DimReport:
    table = [_row(inst, mode, F, X, cutoff) for F in family]
    return dim_from_table(table, cutoff)


def check_dim_transfer(inst: Instance, cutoff: int = DEFAULT_CUTOFF) -> list:
    """Relative dimensions (n-id, n-fd, n-cd, n-ctd) and the copure dimensions."""
    ind = _Claims("dim_transfer.induced", inst)
    ind_own = _Claims("dim_transfer.induced_own_family", inst)
    res = _Claims("dim_transfer.restricted", inst)
    gated = _Claims("dim_transfer.restricted_equality", inst, gate=inst.separable)
    names = {"fp": "n-id", "flat": "n-fd", "cospiral": "n-cd", "cotorsion": "n-ctd"}
    LH, LG = inst.pool("RH", LEFT), inst.pool("RG", LEFT)
    for fam in _families(inst, cutoff):
        if not fam.H or not fam.G:
            continue
        res_G = [inst.down(F) for F in fam.G]
        ind_H = [inst.up(F) for F in fam.H]
        tag = {"dimension": names[fam.kind]}
        for M in LH:
            a = _reldim(inst, fam.mode, res_G, M, cutoff)
            b = _reldim(inst, fam.mode, fam.G, inst.up(M), cutoff)
            _pd_pair(ind, "=", a, b, M=_label(M), **tag)
            a = _reldim(inst, fam.mode, fam.H, M, cutoff)
            b = _reldim(inst, fam.mode, ind_H, inst.up(M), cutoff)
            _pd_pair(ind_own, "<=", a, b, M=_label(M), **tag)
        for N in LG:
            a = _reldim(inst, fam.mode, fam.H, inst.down(N), cutoff)
            b = _reldim(inst, fam.mode, fam.G + ind_H, N, cutoff)
            _pd_pair(res, "<=", a, b, N=_label(N), **tag)
            a = _reldim(inst, fam.mode, res_G, inst.down(N), cutoff)
            b = _reldim(inst, fam.mode, fam.G, N, cutoff)
            _pd_pair(gated, "<=", b, a, N=_label(N), note="rg <= rh", **tag)
    # copure dimensions against the injective D(A)
    for side in _sides():
        for M in inst.pool("RH", side):
            cfd_h, cid_h = inst.copure(M, cutoff)
            cfd_g, cid_g = inst.copure(inst.up(M), cutoff)
            _pd_pair(ind, "=", cid_h, cid_g, M=_label(M), side=side, dimension="cid")
            _pd_pair(ind, "=", cfd_h, cfd_g, M=_label(M), side=side, dimension="cfd")
        for N in inst.pool("RG", side):
            cfd_g, cid_g = inst.copure(N, cutoff)
            cfd_h, cid_h = inst.copure(inst.down(N), cutoff)
            _pd_pair(res, "<=", cid_h, cid_g, N=_label(N), side=side, dimension="cid")
            _pd_pair(res, "<=", cfd_h, cfd_g, N=_label(N), side=side, dimension="cfd")
            _pd_pair(gated, "=", cid_h, cid_g, N=_label(N), side=side, dimension="cid")
            _pd_pair(gated, "=", cfd_h, cfd_g, N=_label(N), side=side, dimension="cfd")
    extra = {"cutoff": cutoff, "fp_note": FP_NOTE, "pool_note": POOL_NOTE}
    return [r.report(**extra) for r in (ind, ind_own, res, gated)]


def check_copure_duality(inst: Instance, cutoff: int = DEFAULT_CUTOFF) -> list:
    """``cfd(M) = cid(M^*)``, and the injective witnesses have injective dimension 0."""
    c = _Claims("copure_duality", inst)
    for over in ("RH", "RG"):
        for M in inst.pool(over, LEFT):
            cfd = inst.copure(M, cutoff)[0]
            D = dual(M)
            cid = inst.copure(D, cutoff)[1]
            c.add(may_equal(cfd, cid) and cfd.kind == cid.kind and cfd.value == cid.value,
                  over=over, M=_label(M), cfd=str(cfd), cid_of_dual=str(cid))
            inst._keep.append(D)
        A = inst.RG if over == "RG" else inst.RH
        for mode in ("ext", "tor"):
            for E in injectives(regular_module(A, LEFT), mode):
                r = inj_dim(E, cutoff)
                c.add(r.kind == "finite" and r.value == 0, over=over, injective=f"D({E.side} dual)",
                      inj_dim=str(r))
    return [c.report(cutoff=cutoff)]


def check_dual_commutes(inst: Instance) -> list:
    c = _Claims("dual_commutes", inst)
    for side in _sides():
        for M in inst.pool("RH", side):
            a = induce(inst.ctx, dual(M))
            b = dual(inst.up(M))
            v = is_isomorphic(a, b, seed=inst.seed)
            ok = v.holds and v.witness.is_invertible() and all(
                v.witness @ x == y @ v.witness for x, y in zip(a.action, b.action))
            c.add(ok, side=side, M=_label(M), status=v.status, reason=v.reason)
    return [c.report()]


def check_coinduction(inst: Instance) -> list:
    c = _Claims("coinduction_equals_induction", inst)
    for M in inst.pool("RH", LEFT):
        v = is_isomorphic(coinduce(inst.ctx, M), inst.up(M), seed=inst.seed)
        c.add(v.holds, M=_label(M), status=v.status, reason=v.reason)
    return [c.report()]


def check_resolutions(inst: Instance, cutoff: int = DEFAULT_CUTOFF) -> list:
    """Exactness of the minimal resolutions and Tor/Ext duality on the pools."""
    ex = _Claims("resolution_exactness", inst)
    du = _Claims("tor_ext_duality", inst)
    for key, mods in inst.pools.items():
        for M in mods:
            res = projective_resolution(M, 4)
            ex.add(res.check(), pool=key, M=_label(M), ranks=res.ranks)
    for M in inst.pool("RG", RIGHT):
        for N in inst.pool("RG", LEFT):
            a = inst.tor(M, N, DEFAULT_NMAX)
            b = ext_dims(N, dual(M), DEFAULT_NMAX)
            du.add(a == b, M=_label(M), N=_label(N), tor=a, ext=b)
    return [ex.report(), du.report()]


def check_resolution_independence(inst: Instance, n_max: int = DEFAULT_NMAX) -> list:
    """Minimal and non-minimal resolutions on a seeded sample of the Ext queries."""
    c = _Claims("resolution_independence", inst)
    queries = []
    for side in _sides():
        for N in inst.pool("RH", side):
            for M in inst.pool("RG", side):
                for n in range(n_max + 1):
                    queries.append(("form1", N, inst.down(M), n))
                    queries.append(("form2", inst.down(M), N, n))
                    queries.append(("form1_rg", inst.up(N), M, n))
                    queries.append(("form2_rg", M, inst.up(N), n))
    rng = inst.rng("oracle")
    k = int(np.ceil(SAMPLE_FRACTION * len(queries)))
    picked = sorted(rng.choice(len(queries), size=k, replace=False).tolist()) if queries else []
    for q in picked:
        tag, X, Y, n = queries[q]
        a = inst.ext(X, Y, n_max)[n]
        b = inst.ext(X, Y, n_max, minimal=False)[n]
        c.add(a == b, query=tag, X=_label(X), Y=_label(Y), n=n, minimal=a, non_minimal=b)
    return [c.report(total_queries=len(queries), sampled=len(picked))]


def check_quinn(inst: Instance) -> list:
    c = _Claims("smash_quinn", inst)
    if inst.graded is None:
        return [TheoremReport("smash_quinn", inst.name, SKIPPED, {}, reason="instance is not graded")]
    q = quinn_invariants(inst.graded, inst.seed)
    c.add(q["dim_skew_of_smash"] == q["expected_dim"] == q["dim_matrix"], claim="dimensions",
          skew_of_smash=q["dim_skew_of_smash"], matrix=q["dim_matrix"], expected=q["expected_dim"])
    c.add(q["radical_dim_skew_of_smash"] == q["radical_dim_matrix"], claim="radical dimensions",
          skew_of_smash=q["radical_dim_skew_of_smash"], matrix=q["radical_dim_matrix"])
    if "simple_dims_matrix" in q:
        c.add(q["simple_dims_skew_of_smash"] == q["simple_dims_matrix"], claim="simple dimensions",
              skew_of_smash=q["simple_dims_skew_of_smash"], matrix=q["simple_dims_matrix"])
    if inst.graded.is_trivial() and inst.field.p is not None:
        b = block_decomposition(inst.graded, inst.base)
        ok = (b["blocks"] == inst.group.order and b["orthogonal_idempotents"] and b["sum_is_unit"]
              and b["central"] and b["blocks_are_copies_of_R"])
        c.add(ok, claim="R#G splits into |G| blocks", **b)
    return [c.report()]


CHECKS: dict = {
    "separability": lambda inst, cfg: check_separability(inst),
    "eckmann_shapiro": lambda inst, cfg: check_eckmann_shapiro(inst, cfg.n_max),
    "tor_lemma": lambda inst, cfg: check_tor_lemma(inst, cfg.n_max),
    "summand_lemma": lambda inst, cfg: check_summand_lemma(inst),
    "pd_transfer": lambda inst, cfg: check_pd_transfer(inst, cfg.cutoff),
    "nd_transfer": lambda inst, cfg: check_nd_transfer(inst, cfg.n_max, cfg.d_max, cfg.cutoff),
    "dim_transfer": lambda inst, cfg: check_dim_transfer(inst, cfg.cutoff),
    "copure_duality": lambda inst, cfg: check_copure_duality(inst, cfg.cutoff),
    "dual_commutes": lambda inst, cfg: check_dual_commutes(inst),
    "coinduction": lambda inst, cfg: check_coinduction(inst),
    "resolutions": lambda inst, cfg: check_resolutions(inst, cfg.cutoff),
    "resolution_independence": lambda inst, cfg: check_resolution_independence(inst, cfg.n_max),
    "smash_quinn": lambda inst, cfg: check_quinn(inst),
}


# ----------------------------------------------------------------------------
# battery


@dataclass
class BatteryConfig:
    instances: Sequence = ()          # InstanceSpec objects or built-in names
    cutoff: int = DEFAULT_CUTOFF
    n_max: int = DEFAULT_NMAX
    d_max: int = DEFAULT_DMAX
    seed: int = 0
    checks: Sequence[str] = tuple(CHECKS)


@dataclass
class BatteryResult:
    reports: list
    instances: dict

    @property
    def counts(self) -> dict:
        out = {VERIFIED: 0, REFUTED: 0, SKIPPED: 0}
        for r in self.reports:
            out[r.status] += 1
        return out

    @property
    def refuted(self) -> list:
        return [r for r in self.reports if r.status == REFUTED]

    def to_dict(self, config: Optional[BatteryConfig] = None) -> dict:
        out = {"summary": {"reports": len(self.reports), **self.counts,
                           "instances": len(self.instances)},
               "instances": self.instances,
               "reports": [r.to_dict() for r in self.reports]}
        if config is not None:
            out["config"] = {"cutoff": config.cutoff, "n_max": config.n_max, "d_max": config.d_max,
                             "seed": config.seed, "checks": list(config.checks)}
        return out


def _resolve_spec(item) -> InstanceSpec:
    if isinstance(item, InstanceSpec):
        return item
    from .builtins import builtin_spec
    return builtin_spec(item)


def run_instance(spec: InstanceSpec, config: BatteryConfig,
                 progress: Optional[Callable[[str], None]] = None) -> tuple:
    inst = Instance(spec, seed=config.seed)
    reports = []
    for name in config.checks:
        if progress:
            progress(f"{inst.name}: {name}")
        reports.extend(CHECKS[name](inst, config))
    return inst.summary(), reports


def run_battery(config: BatteryConfig, progress: Optional[Callable[[str], None]] = None) -> BatteryResult:
    unknown = [c for c in config.checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    reports, summaries = [], {}
    for item in config.instances:
        spec = _resolve_spec(item)
        summary, reps = run_instance(spec, config, progress)
        summaries[spec.name] = summary
        reports.extend(reps)
    return BatteryResult(reports, summaries)


def report_json(result: BatteryResult, config: Optional[BatteryConfig] = None) -> str:
    return json.dumps(_plain(result.to_dict(config)), sort_keys=True, indent=1) + "\n"


def _plain(x):
    """Convert numpy scalars and Fractions so the JSON encoder accepts them."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (str, float, type(None))):
        return x
    return str(x)
