"""Plain-text instance files.

One statement per line; ``#`` starts a comment.  Sections::

    NAME f2_c2
    FIELD 2                       # a prime, or Q
    ALGEBRA 1                     # dimension of R
      LABELS 1
      UNIT 1
      C 0 0 0 1                   # b_0 b_0 = 1 b_0 (nonzero constants only)
    GROUP 2
      ROW 0 1
      ROW 1 0
    ACTION                        # optional; omitted means trivial
      AUTO 1 : 1                  # matrix rows separated by ';'
    SUBGROUP 0
    GRADING 0 1                   # optional; makes R#G the base algebra
    MODULE k left RG 1            # name, side, RG or RH, dimension
      R 0 : 1                     # action of b_i (basis of the base algebra)
      G 1 : 1                     # action of a group element
    END

Automorphisms and group actions given on some elements are extended to
the generated subgroup.  For a right module the matrix of ``b_i g`` is
``rho(g) rho(b_i)``; for a left module it is ``rho(b_i) rho(g)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .exactlin import ExactMatrix, FieldError, FieldSpec

SECTIONS = ("NAME", "FIELD", "ALGEBRA", "GROUP", "ACTION", "SUBGROUP", "GRADING", "MODULE", "END")


class InstanceFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<string>"):
        self.message, self.line, self.column, self.source = message, line, column, source
        loc = f"{source}:{line}:{column}: " if line else f"{source}: "
        super().__init__(loc + message)


@dataclass
class ModuleDecl:
    name: str
    side: str
    over: str                       # "RG" or "RH"
    dim: int
    base_actions: dict = dc_field(default_factory=dict)    # i -> ExactMatrix
    group_actions: dict = dc_field(default_factory=dict)   # g -> ExactMatrix


@dataclass
class InstanceSpec:
    name: str
    field: FieldSpec
    labels: list
    unit: list
    consts: dict                    # (i, j, k) -> scalar
    table: list
    autos: dict                     # g -> ExactMatrix (acts on R; empty means trivial)
    subgroup: tuple
    grading: Optional[tuple] = None
    modules: list = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def base_dim(self) -> int:
        return self.dim * (len(self.table) if self.grading is not None else 1)


# ----------------------------------------------------------------------------
# parsing


class _Line:
    def __init__(self, text: str, number: int, source: str):
        self.number, self.source = number, source
        body = text.split("#", 1)[0]
        self.tokens = []
        col = 0
        for tok in body.split():
            col = body.index(tok, col)
            self.tokens.append((tok, col + 1))
            col += len(tok)

    def error(self, msg: str, k: int = 0) -> InstanceFileError:
        col = self.tokens[k][1] if k < len(self.tokens) else 1
        return InstanceFileError(msg, self.number, col, self.source)

    def word(self, k: int) -> str:
        if k >= len(self.tokens):
            raise self.error(f"expected more fields after {self.tokens[-1][0]!r}", len(self.tokens) - 1)
        return self.tokens[k][0]

    def integer(self, k: int, lo: int = None, hi: int = None) -> int:
        w = self.word(k)
        try:
            v = int(w)
        except ValueError:
            raise self.error(f"expected an integer, got {w!r}", k) from None
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise self.error(f"value {v} out of range", k)
        return v

    def expect_len(self, n: int):
        if len(self.tokens) != n:
            raise self.error(f"expected {n - 1} fields, got {len(self.tokens) - 1}",
                             min(n, len(self.tokens) - 1))


def _scalar(line: _Line, field: FieldSpec, k: int):
    w = line.word(k)
    try:
        return field.scalar(Fraction(w) if "/" in w else int(w))
    except (ValueError, ZeroDivisionError, FieldError):
        raise line.error(f"bad scalar {w!r} for field {field}", k) from None


def _matrix(line: _Line, field: FieldSpec, start: int, n: int) -> ExactMatrix:
    """Rows separated by ';' from token ``start`` on; must be ``n x n``."""
    if start >= len(line.tokens) or line.tokens[start - 1][0] != ":":
        raise line.error("expected ':' before the matrix entries", start - 1)
    rows, cur = [], []
    for k in range(start, len(line.tokens)):
        tok = line.tokens[k][0]
        if tok == ";":
            rows.append(cur)
            cur = []
        else:
            cur.append(_scalar(line, field, k))
    rows.append(cur)
    if n == 0 and rows == [[]]:
        return ExactMatrix.zeros(field, 0, 0)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise line.error(f"expected a {n}x{n} matrix", start)
    return ExactMatrix(field, rows)


def _tokenize_semicolons(text: str) -> str:
    return text.replace(";", " ; ").replace(":", " : ")


def parse(text: str, source: str = "<string>") -> InstanceSpec:
    lines = [_Line(_tokenize_semicolons(t), i + 1, source) for i, t in enumerate(text.splitlines())]
    lines = [ln for ln in lines if ln.tokens]
    st = {"name": "", "field": None, "labels": None, "unit": None, "consts": {}, "dim": None,
          "table": [], "order": None, "autos": {}, "subgroup": None, "grading": None,
          "modules": [], "ended": False}
    section = None
    last = None
    for ln in lines:
        last = ln
        head = ln.word(0)
        if st["ended"]:
            raise ln.error("content after END")
        if head in SECTIONS:
            section = head
            _section_header(ln, st)
            continue
        _section_body(ln, section, st)
    if not st["ended"]:
        loc = last.number if last else 0
        raise InstanceFileError("missing END", loc, 1, source)
    return _finish(st, source)


def _need(ln: _Line, st: dict, key: str, what: str):
    if st[key] is None:
        raise ln.error(f"{what} must come before this line")


def _section_header(ln: _Line, st: dict):
    head = ln.word(0)
    if head == "NAME":
        ln.expect_len(2)
        st["name"] = ln.word(1)
    elif head == "FIELD":
        ln.expect_len(2)
        w = ln.word(1)
        try:
            st["field"] = FieldSpec(None) if w.upper() == "Q" else FieldSpec(int(w))
        except (ValueError, FieldError) as exc:
            raise ln.error(f"bad field {w!r}: {exc}", 1) from None
    elif head == "ALGEBRA":
        _need(ln, st, "field", "FIELD")
        ln.expect_len(2)
        st["dim"] = ln.integer(1, lo=1)
    elif head == "GROUP":
        ln.expect_len(2)
        st["order"] = ln.integer(1, lo=1)
    elif head == "ACTION":
        _need(ln, st, "order", "GROUP")
        _need(ln, st, "dim", "ALGEBRA")
        ln.expect_len(1)
    elif head == "SUBGROUP":
        _need(ln, st, "order", "GROUP")
        if len(ln.tokens) < 2:
            raise ln.error("SUBGROUP needs at least one element")
        st["subgroup"] = tuple(ln.integer(k, 0, st["order"] - 1) for k in range(1, len(ln.tokens)))
    elif head == "GRADING":
        _need(ln, st, "order", "GROUP")
        _need(ln, st, "dim", "ALGEBRA")
        if st["modules"]:
            raise ln.error("GRADING must come before any MODULE")
        ln.expect_len(st["dim"] + 1)
        st["grading"] = tuple(ln.integer(k, 0, st["order"] - 1) for k in range(1, len(ln.tokens)))
    elif head == "MODULE":
        _need(ln, st, "dim", "ALGEBRA")
        ln.expect_len(5)
        side = ln.word(2)
        if side not in ("left", "right"):
            raise ln.error(f"side must be left or right, got {side!r}", 2)
        over = ln.word(3)
        if over not in ("RG", "RH"):
            raise ln.error(f"module must be over RG or RH, got {over!r}", 3)
        if any(m.name == ln.word(1) for m in st["modules"]):
            raise ln.error(f"duplicate module name {ln.word(1)!r}", 1)
        st["modules"].append(ModuleDecl(ln.word(1), side, over, ln.integer(4, lo=0)))
    elif head == "END":
        ln.expect_len(1)
        st["ended"] = True


def _section_body(ln: _Line, section: Optional[str], st: dict):
    head = ln.word(0)
    f = st["field"]
    if section == "ALGEBRA":
        d = st["dim"]
        if head == "LABELS":
            ln.expect_len(d + 1)
            st["labels"] = [ln.word(k) for k in range(1, d + 1)]
            if len(set(st["labels"])) != d:
                raise ln.error("labels must be distinct", 1)
        elif head == "UNIT":
            ln.expect_len(d + 1)
            st["unit"] = [_scalar(ln, f, k) for k in range(1, d + 1)]
        elif head == "C":
            ln.expect_len(5)
            key = tuple(ln.integer(k, 0, d - 1) for k in (1, 2, 3))
            if key in st["consts"]:
                raise ln.error(f"structure constant {key} given twice")
            st["consts"][key] = _scalar(ln, f, 4)
        else:
            raise ln.error(f"unknown ALGEBRA entry {head!r}")
    elif section == "GROUP":
        if head != "ROW":
            raise ln.error(f"unknown GROUP entry {head!r}")
        n = st["order"]
        ln.expect_len(n + 1)
        if len(st["table"]) >= n:
            raise ln.error("too many table rows")
        st["table"].append([ln.integer(k, 0, n - 1) for k in range(1, n + 1)])
    elif section == "ACTION":
        if head != "AUTO":
            raise ln.error(f"unknown ACTION entry {head!r}")
        g = ln.integer(1, 0, st["order"] - 1)
        st["autos"][g] = _matrix(ln, f, 3, st["dim"])
    elif section == "MODULE":
        mod = st["modules"][-1]
        if head == "R":
            i = ln.integer(1, 0, _base_dim(st) - 1)
            mod.base_actions[i] = _matrix(ln, f, 3, mod.dim)
        elif head == "G":
            g = ln.integer(1, 0, st["order"] - 1)
            mod.group_actions[g] = _matrix(ln, f, 3, mod.dim)
        else:
            raise ln.error(f"unknown MODULE entry {head!r}")
    else:
        raise ln.error(f"unexpected {head!r} outside a section")


def _base_dim(st: dict) -> int:
    """Dimension of the algebra the group acts on (``R#G`` when graded)."""
    return st["dim"] * (st["order"] if st["grading"] is not None else 1)


def _finish(st: dict, source: str) -> InstanceSpec:
    def missing(what):
        return InstanceFileError(f"missing {what}", 0, 0, source)
    if st["field"] is None:
        raise missing("FIELD")
    if st["dim"] is None:
        raise missing("ALGEBRA")
    if st["labels"] is None:
        st["labels"] = [f"b{i}" for i in range(st["dim"])]
    if st["unit"] is None:
        raise missing("UNIT")
    if st["order"] is None:
        raise missing("GROUP")
    if len(st["table"]) != st["order"]:
        raise missing(f"GROUP rows ({len(st['table'])} of {st['order']})")
    if st["subgroup"] is None:
        raise missing("SUBGROUP")
    if st["grading"] is not None and st["autos"]:
        raise InstanceFileError("GRADING and ACTION are exclusive (the smash product carries its own action)",
                                0, 0, source)
    for m in st["modules"]:
        if len(m.base_actions) != _base_dim(st):
            raise InstanceFileError(f"module {m.name!r} needs an R line for every basis element", 0, 0, source)
    return InstanceSpec(st["name"], st["field"], st["labels"], st["unit"], st["consts"], st["table"],
                        st["autos"], st["subgroup"], st["grading"], st["modules"])


def load(path) -> InstanceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), str(path))


# ----------------------------------------------------------------------------
# serialization


def _fmt(x) -> str:
    return str(x)


def _fmt_matrix(m: ExactMatrix) -> str:
    return " ; ".join(" ".join(_fmt(v) for v in row) for row in m.tolist())


def serialize(spec: InstanceSpec) -> str:
    out = []
    if spec.name:
        out.append(f"NAME {spec.name}")
    out.append(f"FIELD {'Q' if spec.field.p is None else spec.field.p}")
    out.append(f"ALGEBRA {spec.dim}")
    out.append("  LABELS " + " ".join(spec.labels))
    out.append("  UNIT " + " ".join(_fmt(u) for u in spec.unit))
    for (i, j, k), v in sorted(spec.consts.items()):
        if v:
            out.append(f"  C {i} {j} {k} {_fmt(v)}")
    out.append(f"GROUP {len(spec.table)}")
    for row in spec.table:
        out.append("  ROW " + " ".join(str(x) for x in row))
    if spec.autos:
        out.append("ACTION")
        for g in sorted(spec.autos):
            out.append(f"  AUTO {g} : {_fmt_matrix(spec.autos[g])}")
    out.append("SUBGROUP " + " ".join(str(h) for h in spec.subgroup))
    if spec.grading is not None:
        out.append("GRADING " + " ".join(str(g) for g in spec.grading))
    for m in spec.modules:
        out.append(f"MODULE {m.name} {m.side} {m.over} {m.dim}")
        for i in sorted(m.base_actions):
            out.append(f"  R {i} : {_fmt_matrix(m.base_actions[i])}")
        for g in sorted(m.group_actions):
            out.append(f"  G {g} : {_fmt_matrix(m.group_actions[g])}")
    out.append("END")
    return "\n".join(out) + "\n"
