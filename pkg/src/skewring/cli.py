"""Command-line frontend: ``build``, ``compute`` and ``verify``.

Exit status: 0 when everything is verified or skipped, 1 on a refutation,
2 on an input error (missing file, parse error, bad query).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .algcore import Module, ModuleError
from .builtins import NAMES, builtin_spec
from .functors import dual, induce, restrict
from .homology import DEFAULT_CUTOFF, copure_dims, ext_dims, inj_dim, proj_dim, tor_dims
from .instfile import InstanceFileError, InstanceSpec, ModuleDecl, load, serialize
from .suite import (
    DEFAULT_NMAX,
    REFUTED,
    BatteryConfig,
    Instance,
    InstanceError,
    report_json,
    run_battery,
)

EXIT_OK, EXIT_REFUTED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _out(msg: str = ""):
    print(msg)


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


# ----------------------------------------------------------------------------
# loading


def _load_spec(path: Optional[str], builtin: Optional[str]) -> InstanceSpec:
    if builtin:
        try:
            return builtin_spec(builtin)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if not path:
        raise InputError("give an instance file or --builtin NAME")
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{path}: file not found")
    try:
        return load(p)
    except InstanceFileError as exc:
        raise InputError(str(exc)) from None


def _build(spec: InstanceSpec, seed: int = 0) -> Instance:
    try:
        return Instance(spec, seed=seed)
    except (InstanceError, ValueError) as exc:
        raise InputError(f"{spec.name or 'instance'}: {exc}") from None


# ----------------------------------------------------------------------------
# build


def cmd_build(args) -> int:
    inst = _build(_load_spec(args.path, args.builtin), args.seed)
    cert = inst.certificate
    _out(f"instance: {inst.name or '(unnamed)'}")
    _out(f"field: {inst.field}")
    _out(f"dim R: {inst.R.dim}" + (f" (smash product dim {inst.base.dim})" if inst.graded else ""))
    _out(f"group order: {inst.group.order}, subgroup {list(inst.H.elements)}, index {inst.H.index}")
    _out(f"dim RG: {inst.RG.dim}, dim RH: {inst.RH.dim}")
    _out(f"index invertible: {'YES' if inst.index_invertible else 'NO'}")
    if cert.status == "separable":
        _out(f"separable: YES (witness verified, {len(cert.terms())} terms)")
    elif cert.status == "not_separable":
        _out("separable: NO (the defining linear system has no solution)")
    else:
        _out("separable: UNKNOWN (rational system too large)")
    for name, M in inst.declared.items():
        over = "RG" if M.algebra is inst.RG else "RH"
        _out(f"module {name}: {M.side} over {over}, dim {M.dim}")
    return EXIT_OK


# ----------------------------------------------------------------------------
# compute


def _degrees(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise InputError(f"bad degree range {text!r} (expected N or A..B)") from None
    if not out or out[0] < 0:
        raise InputError(f"bad degree range {text!r}")
    return out


def _module(inst: Instance, name: str) -> Module:
    """A declared or pool module by name; a trailing ``^*`` takes the dual."""
    if name.endswith("^*") and len(name) > 2:
        base = _module(inst, name[:-2])
        return dual(base)
    if name in inst.declared:
        return inst.declared[name]
    for mods in inst.pools.values():
        for M in mods:
            if M.name == name:
                return M
    known = sorted(set(inst.declared) | {M.name for v in inst.pools.values() for M in v})
    raise InputError(f"unknown module {name!r}; known: {', '.join(known)}")


def module_decl(inst: Instance, M: Module, name: str) -> ModuleDecl:
    """The instance-file form of a module over ``RG`` or ``RH``."""
    sk = inst.skew
    over = "RG" if M.algebra is inst.RG else "RH"
    d = sk.base.dim
    data = inst.ctx.data
    decl = ModuleDecl(name, M.side, over, M.dim)
    e = sk.group.identity
    if over == "RG":
        elem = lambda r, g: sk.element(r, g)          # noqa: E731
        els = range(sk.group.order)
    else:
        elem = lambda r, g: data.rh_element(r, g)     # noqa: E731
        els = inst.H.elements
    for i in range(d):
        decl.base_actions[i] = M.act(elem(sk.base.basis_vector(i), e))
    for g in els:
        if g != e:
            decl.group_actions[g] = M.act(elem(sk.base.unit, g))
    return decl


def _print_module(inst: Instance, M: Module, name: str):
    spec = InstanceSpec("", inst.field, [], [], {}, [], {}, (), None, [module_decl(inst, M, name)])
    text = serialize(spec)
    block = text[text.index("MODULE"):text.index("END")]
    _out(block.rstrip())


def cmd_compute(args) -> int:
    inst = _build(_load_spec(args.path, args.builtin), args.seed)
    q = args.query
    if not q:
        raise InputError("empty query")
    op, rest = q[0], q[1:]
    cutoff = args.cutoff

    def need(n):
        if len(rest) != n:
            raise InputError(f"query {op!r} takes {n} argument(s), got {len(rest)}")

    try:
        if op in ("ext", "tor"):
            need(3)
            M, N = _module(inst, rest[0]), _module(inst, rest[1])
            degs = _degrees(rest[2])
            fn = ext_dims if op == "ext" else tor_dims
            vals = fn(M, N, max(degs))
            _out(" ".join(str(vals[n]) for n in degs))
        elif op in ("pd", "fd", "id"):
            need(1)
            M = _module(inst, rest[0])
            r = inj_dim(M, cutoff, args.seed) if op == "id" else proj_dim(M, cutoff, args.seed)
            _out(str(r))
        elif op in ("cfd", "cid"):
            need(1)
            cfd, cid = copure_dims(_module(inst, rest[0]), cutoff)
            r = cfd if op == "cfd" else cid
            _out(f"{r} ({r.note})" if r.note else str(r))
        elif op in ("induce", "restrict", "dual"):
            need(1)
            M = _module(inst, rest[0])
            if op == "induce":
                if M.algebra is not inst.RH:
                    raise InputError(f"{rest[0]} is not an RH-module")
                X, name = induce(inst.ctx, M), f"{rest[0]}_ind"
            elif op == "restrict":
                if M.algebra is not inst.RG:
                    raise InputError(f"{rest[0]} is not an RG-module")
                X, name = restrict(inst.ctx, M), f"{rest[0]}_res"
            else:
                X, name = dual(M), f"{rest[0]}_dual"
            _print_module(inst, X, name)
        else:
            raise InputError(f"unknown query {op!r} (ext, tor, pd, fd, id, cfd, cid, induce, restrict, dual)")
    except ModuleError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


# ----------------------------------------------------------------------------
# verify


def _battery_items(args) -> list:
    items = []
    for path in args.paths:
        items.append(_load_spec(path, None))
    for name in args.builtin or []:
        if name == "all":
            items.extend(NAMES)
        elif name not in NAMES:
            raise InputError(f"unknown built-in instance {name!r}; known: all, {', '.join(NAMES)}")
        else:
            items.append(name)
    return items


def cmd_verify(args) -> int:
    items = _battery_items(args)
    # build every instance up front so input errors exit 2 before any work
    specs = [builtin_spec(x) if isinstance(x, str) else x for x in items]
    for sp in specs:
        _build(sp, args.seed)
    config = BatteryConfig(instances=specs, cutoff=args.cutoff, n_max=args.nmax, seed=args.seed)
    progress = (lambda s: print(f"  .. {s}", file=sys.stderr)) if args.verbose else None
    result = run_battery(config, progress)
    for r in result.reports:
        line = f"{r.instance_id:24s} {r.theorem_id:36s} {r.status}"
        if r.reason:
            line += f"  ({r.reason})"
        _out(line)
    c = result.counts
    _out(f"summary: {len(result.reports)} reports, {c['verified']} verified, "
         f"{c['skipped']} skipped, {c['refuted']} refuted")
    if args.out:
        Path(args.out).write_text(report_json(result, config), encoding="utf-8")
    return EXIT_REFUTED if c[REFUTED] else EXIT_OK


# ----------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewring", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    common.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="validate an instance and print its data")
    b.add_argument("path", nargs="?")
    b.add_argument("--builtin")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("compute", parents=[common], help="run one query against an instance")
    c.add_argument("--builtin")
    c.add_argument("path", nargs="?", help="instance file (omit with --builtin)")
    c.add_argument("query", nargs=argparse.REMAINDER)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run the theorem battery")
    v.add_argument("paths", nargs="*")
    v.add_argument("--builtin", action="append", help="built-in instance name, or 'all'")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "compute" and args.builtin and args.path is not None:
        # with --builtin the first positional word is already the query
        args.query = [args.path] + list(args.query)
        args.path = None
    if args.cutoff < 1 or args.nmax < 0:
        _err("--cutoff must be >= 1 and --nmax >= 0")
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
