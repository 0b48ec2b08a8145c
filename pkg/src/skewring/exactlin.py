"""Exact fields and dense matrices over them.

Two kinds of base field are supported: prime fields F_p and the rationals.
Matrices are thin wrappers around numpy arrays; for small primes the
storage is ``int64`` (entries kept in ``[0, p)``), otherwise Python objects
(ints for large p, :class:`fractions.Fraction` for Q).

All elimination uses the same fixed pivot rule (first nonzero entry in
column order, topmost row), so every result is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
import sympy

# int64 storage is safe while p*p*inner_dim stays below 2**63
_INT64_PRIME_BOUND = 2**25
_MAX_PRIME = 2**31


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """A prime field ``F_p`` (``p`` given) or the rationals (``p is None``)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, (int, np.integer)) or self.p < 2:
                raise FieldError(f"invalid characteristic {self.p!r}")
            if self.p > _MAX_PRIME:
                raise FieldError(f"prime {self.p} exceeds 2^31")
            if not sympy.isprime(int(self.p)):
                raise FieldError(f"{self.p} is not prime")
            object.__setattr__(self, "p", int(self.p))

    # construction helpers -------------------------------------------------
    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def dtype(self):
        if self.p is not None and self.p < _INT64_PRIME_BOUND:
            return np.int64
        return object

    def __str__(self):
        return f"F_{self.p}" if self.p else "Q"

    # scalars ----------------------------------------------------------------
    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def scalar(self, x):
        """Canonical form of ``x`` (int, Fraction, or ``"a/b"`` string)."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1) / x
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p is None:
            return arr
        return arr % self.p

    def array(self, data, shape=None) -> np.ndarray:
        """Convert nested data into a canonical numpy array for this field."""
        if isinstance(data, np.ndarray) and data.dtype != object and self.p is not None:
            a = np.asarray(data, dtype=np.int64) % self.p
            if self.dtype is object:
                a = a.astype(object)
        else:
            a = np.array(data, dtype=object)
            if shape is not None:
                a = a.reshape(shape)
            flat = [self.scalar(x) for x in a.ravel()]
            a = np.array(flat, dtype=object).reshape(a.shape)
            if self.dtype is not object:
                a = a.astype(np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return a

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one
        return a

    def random_array(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        """Uniform over F_p; small random integers over Q."""
        if self.p is None:
            vals = rng.integers(-bound, bound + 1, size=shape)
            return self.array(vals.tolist(), shape=shape)
        vals = rng.integers(0, self.p, size=shape, dtype=np.int64)
        return self.array(vals)

    def element_count(self) -> Optional[int]:
        return self.p


def _matmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return field.zeros((a.shape[0], b.shape[1]))
    return field.reduce(a.dot(b))


def _rref(field: FieldSpec, a: np.ndarray):
    """In-place reduced row echelon form; returns the pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(a[r, c])
        a[r] = field.reduce(a[r] * inv)
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = field.reduce(a[others] - np.outer(a[others, c], a[r]))
        pivots.append(c)
        r += 1
    return pivots


class ExactMatrix:
    """Dense immutable matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, data, shape=None):
        self.field = field
        if isinstance(data, ExactMatrix):
            data = data.a
        arr = field.array(data, shape)
        if arr.ndim == 1 and shape is None:
            arr = arr.reshape(len(arr), 1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        arr.setflags(write=False)
        self.a = arr

    @classmethod
    def _wrap(cls, field: FieldSpec, arr: np.ndarray) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.field = field
        arr.setflags(write=False)
        m.a = arr
        return m

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls._wrap(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field, n):
        return cls._wrap(field, field.eye(n))

    @classmethod
    def column(cls, field, entries: Sequence):
        return cls(field, list(entries), shape=(len(entries), 1))

    @classmethod
    def hstack(cls, field, mats: Iterable["ExactMatrix"], rows: int = None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, rows or 0, 0)
        return cls._wrap(field, np.hstack([m.a for m in mats]))

    @classmethod
    def vstack(cls, field, mats: Iterable["ExactMatrix"], cols: int = None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, 0, cols or 0)
        return cls._wrap(field, np.vstack([m.a for m in mats]))

    @classmethod
    def block_diag(cls, field, mats: Sequence["ExactMatrix"]):
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = field.zeros((r, c))
        i = j = 0
        for m in mats:
            out[i:i + m.rows, j:j + m.cols] = m.a
            i += m.rows
            j += m.cols
        return cls._wrap(field, out)

    @classmethod
    def random(cls, field, rows, cols, rng, bound=3):
        return cls._wrap(field, field.random_array(rng, (rows, cols), bound))

    # shape -------------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.field, self.a.T.copy())

    def entries(self) -> list:
        """Row-major scalar list (ints for F_p, Fractions for Q)."""
        if self.field.p is None:
            return list(self.a.ravel())
        return [int(x) for x in self.a.ravel()]

    def tolist(self) -> list:
        return [[int(x) if self.field.p else x for x in row] for row in self.a]

    def col(self, j) -> "ExactMatrix":
        return ExactMatrix._wrap(self.field, self.a[:, j:j + 1].copy())

    def __getitem__(self, idx):
        sub = self.a[idx]
        if isinstance(sub, np.ndarray) and sub.ndim == 2:
            return ExactMatrix._wrap(self.field, sub.copy())
        return sub

    def is_zero(self) -> bool:
        return not np.any(self.a)

    def vec(self) -> "ExactMatrix":
        """Column-stacked vectorisation as a single column."""
        return ExactMatrix._wrap(self.field, self.a.T.reshape(-1, 1).copy())

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError(f"expected ExactMatrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ExactMatrix._wrap(self.field, _matmul(self.field, self.a, other.a))

    def __add__(self, other):
        self._check(other)
        return ExactMatrix._wrap(self.field, self.field.reduce(self.a + other.a))

    def __sub__(self, other):
        self._check(other)
        return ExactMatrix._wrap(self.field, self.field.reduce(self.a - other.a))

    def __neg__(self):
        return ExactMatrix._wrap(self.field, self.field.reduce(-self.a))

    def scale(self, c) -> "ExactMatrix":
        c = self.field.scalar(c)
        return ExactMatrix._wrap(self.field, self.field.reduce(self.a * c))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.a, other.a)))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.tolist()})"

    # elimination -------------------------------------------------------------
    def rref(self):
        """Return ``(R, pivots)`` with ``R`` the reduced row echelon form."""
        a = self.a.copy()
        pivots = _rref(self.field, a)
        return ExactMatrix._wrap(self.field, a), pivots

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return len(rank_pivots(self))

    def kernel_basis(self) -> "ExactMatrix":
        return kernel_basis(self)

    def solve(self, b: "ExactMatrix") -> Optional["ExactMatrix"]:
        return solve_affine(self, b)

    def inverse(self) -> Optional["ExactMatrix"]:
        if self.rows != self.cols:
            return None
        x = solve_affine(self, ExactMatrix.identity(self.field, self.rows))
        if x is None or self.rank() != self.rows:
            return None
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def rank_pivots(m: ExactMatrix) -> list:
    a = m.a.copy()
    return _rref(m.field, a)


def rank(m: ExactMatrix) -> int:
    return m.rank()


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Canonical reduced-echelon basis of the right null space, as columns.

    One basis vector per free column ``f``: it has a 1 at ``f``, zeros at the
    other free columns, and minus the reduced entries at pivot columns.
    """
    field = m.field
    n = m.cols
    if m.rows == 0:
        return ExactMatrix.identity(field, n)
    a = m.a.copy()
    pivots = _rref(field, a)
    free = [c for c in range(n) if c not in set(pivots)]
    out = field.zeros((n, len(free)))
    for k, f in enumerate(free):
        out[f, k] = field.one
        for r, pc in enumerate(pivots):
            out[pc, k] = -a[r, f]
    return ExactMatrix._wrap(field, field.reduce(out))


def solve_affine(m: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    """Echelon particular solution of ``m @ x = b`` (``b`` may have several columns).

    Free variables are set to zero.  Returns ``None`` when inconsistent.
    """
    m._check(b)
    if b.rows != m.rows:
        raise ValueError(f"right-hand side has {b.rows} rows, matrix has {m.rows}")
    field = m.field
    n, k = m.cols, b.cols
    if m.rows == 0:
        return ExactMatrix.zeros(field, n, k)
    a = np.hstack([m.a, b.a])
    pivots = _rref(field, a)
    if any(p >= n for p in pivots):
        return None
    x = field.zeros((n, k))
    for r, pc in enumerate(pivots):
        x[pc] = a[r, n:]
    return ExactMatrix._wrap(field, x)


def column_space_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns of ``m`` at the pivot positions (a basis of its span)."""
    if m.cols == 0 or m.rows == 0:
        return ExactMatrix.zeros(m.field, m.rows, 0)
    piv = rank_pivots(m)
    return ExactMatrix._wrap(m.field, m.a[:, piv].copy())


def extend_basis(base: ExactMatrix, candidates: ExactMatrix) -> list:
    """Indices of columns of ``candidates`` that extend span(``base``) independently."""
    joint = ExactMatrix.hstack(base.field, [base, candidates])
    piv = rank_pivots(joint) if joint.rows else []
    nb = base.cols
    return [c - nb for c in piv if c >= nb]


def left_inverse(basis: ExactMatrix) -> ExactMatrix:
    """A matrix ``L`` with ``L @ basis = I`` for a full-column-rank ``basis``.

    Built from the pivot rows of the echelon form of ``basis^T``, so that
    ``L @ v`` returns the coordinates of any ``v`` in the column span.
    """
    field = basis.field
    n, k = basis.shape
    if k == 0:
        return ExactMatrix.zeros(field, 0, n)
    a = basis.a.copy()
    piv_rows = rank_pivots(ExactMatrix._wrap(field, a.T.copy()))
    if len(piv_rows) != k:
        raise ValueError("basis is not of full column rank")
    sq = ExactMatrix._wrap(field, a[piv_rows, :].copy())
    inv = sq.inverse()
    out = field.zeros((k, n))
    out[:, piv_rows] = inv.a
    return ExactMatrix._wrap(field, out)


def coordinates(basis: ExactMatrix, vectors: ExactMatrix) -> Optional[ExactMatrix]:
    """Coordinates of ``vectors`` (columns) in ``basis``; ``None`` if not in span."""
    return solve_affine(basis, vectors)
