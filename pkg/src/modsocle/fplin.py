"""Exact dense linear algebra over a prime field.

Matrices are numpy int64 arrays with entries reduced modulo a prime p.
Every subspace is stored as a reduced row-echelon basis, so subspace
equality is plain matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError

Array = np.ndarray


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def validate_prime(p: int) -> int:
    if not is_prime(int(p)):
        raise ValueError(f"modulus must be a prime, got {p}")
    return int(p)


def as_matrix(rows, p: int, cols: int | None = None) -> Array:
    """Normalize `rows` into a 2-D int64 array reduced mod p."""
    validate_prime(p)
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        if m.size:
            m = m.reshape(1, -1)
        else:
            m = m.reshape(0, cols if cols is not None else 0)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if cols is not None and m.shape[1] != cols:
        raise DimensionMismatchError(f"expected {cols} columns, got {m.shape[1]}")
    return m % p


def rref(m, p: int) -> tuple[Array, tuple[int, ...]]:
    """Reduced row-echelon form.

    Returns the nonzero rows of the RREF together with the pivot columns.
    The row space is preserved.
    """
    a = as_matrix(m, p)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        stripe = np.nonzero(a[r:, c])[0]
        if stripe.size == 0:
            continue
        piv = r + int(stripe[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def rank(m, p: int) -> int:
    return rref(m, p)[0].shape[0]


def _frozen(a: Array) -> Array:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FpSubspace:
    """Subspace of F_p^ambient with a canonical RREF basis."""

    p: int
    ambient: int
    basis: Array
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @classmethod
    def span(cls, rows, p: int, ambient: int) -> "FpSubspace":
        b, piv = rref(as_matrix(rows, p, cols=ambient), p)
        return cls(p=validate_prime(p), ambient=ambient, basis=_frozen(b), pivots=piv)

    @classmethod
    def zero(cls, p: int, ambient: int) -> "FpSubspace":
        return cls.span(np.zeros((0, ambient), dtype=np.int64), p, ambient)

    @classmethod
    def full(cls, p: int, ambient: int) -> "FpSubspace":
        return cls.span(np.eye(ambient, dtype=np.int64), p, ambient)

    @classmethod
    def from_rref(cls, basis: Array, pivots: Sequence[int], p: int, ambient: int) -> "FpSubspace":
        """Wrap rows already in RREF; the invariants are verified."""
        b = as_matrix(basis, p, ambient)
        piv = tuple(int(c) for c in pivots)
        if list(piv) != sorted(set(piv)) or len(piv) != b.shape[0]:
            raise ValueError("pivot columns must be strictly increasing, one per row")
        if piv and not np.array_equal(b[:, list(piv)], np.eye(len(piv), dtype=np.int64)):
            raise ValueError("pivot columns must form an identity block")
        return cls(p=p, ambient=ambient, basis=_frozen(b), pivots=piv)

    def _check_compatible(self, other: "FpSubspace") -> None:
        if self.p != other.p or self.ambient != other.ambient:
            raise DimensionMismatchError(
                f"incompatible subspaces: F_{self.p}^{self.ambient} vs F_{other.p}^{other.ambient}")

    def reduce(self, rows) -> Array:
        """Residual of `rows` after elimination against the basis."""
        v = as_matrix(rows, self.p, cols=self.ambient)
        if self.dim == 0:
            return v
        return (v - v[:, list(self.pivots)] @ self.basis) % self.p

    def contains(self, row) -> bool:
        return not self.reduce(row).any()

    def contains_rows(self, rows) -> bool:
        return not self.reduce(rows).any()

    def is_subspace_of(self, other: "FpSubspace") -> bool:
        self._check_compatible(other)
        return other.contains_rows(self.basis)

    def join(self, other: "FpSubspace") -> "FpSubspace":
        self._check_compatible(other)
        stacked = np.vstack([self.basis, other.basis])
        return FpSubspace.span(stacked, self.p, self.ambient)

    def constraints(self) -> Array:
        """Matrix C with row space = {c : B c = 0}; the subspace is {x : C x = 0}."""
        return nullspace(self.basis if self.dim else np.zeros((0, self.ambient), dtype=np.int64),
                         self.p, cols=self.ambient).basis

    def meet(self, other: "FpSubspace") -> "FpSubspace":
        self._check_compatible(other)
        stacked = np.vstack([self.constraints(), other.constraints()])
        return nullspace(stacked, self.p, cols=self.ambient)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpSubspace):
            return NotImplemented
        return (self.p == other.p and self.ambient == other.ambient
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.p, self.ambient, self.basis.tobytes()))

    def __repr__(self):
        return f"FpSubspace(p={self.p}, ambient={self.ambient}, dim={self.dim})"


def nullspace(m, p: int, cols: int | None = None) -> FpSubspace:
    """Right kernel {v : m v = 0} as an RREF subspace."""
    a = as_matrix(m, p, cols=cols)
    n = a.shape[1]
    b, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    if not free:
        return FpSubspace.zero(p, n)
    vecs = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        vecs[i, f] = 1
        for r, c in enumerate(pivots):
            vecs[i, c] = (-int(b[r, f])) % p
    return FpSubspace.span(vecs, p, n)


def common_nullspace(maps: Iterable, p: int, ambient: int) -> FpSubspace:
    """Vectors annihilated by every matrix in `maps` (full space for no maps)."""
    mats = [as_matrix(m, p, cols=ambient) for m in maps]
    if not mats:
        return FpSubspace.full(p, ambient)
    return nullspace(np.vstack(mats), p, cols=ambient)


def subspace_meet(a: FpSubspace, b: FpSubspace) -> FpSubspace:
    return a.meet(b)


def subspace_join(a: FpSubspace, b: FpSubspace) -> FpSubspace:
    return a.join(b)


def contains(a: FpSubspace, v) -> bool:
    return a.contains(v)


class SpanBuilder:
    """Incrementally maintained RREF basis, for large spanning sets.

    Rows are inserted one batch at a time; each insertion keeps the basis in
    reduced row-echelon form so membership tests stay a single elimination.
    """

    def __init__(self, p: int, ambient: int):
        self.p = validate_prime(p)
        self.ambient = ambient
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        for piv, row in zip(self._pivots, self._rows):
            c = int(v[piv])
            if c:
                v = (v - c * row) % self.p
        return v

    def contains(self, row) -> bool:
        v = as_matrix(row, self.p, cols=self.ambient)[0]
        return not self._reduce(v).any()

    def insert(self, row) -> bool:
        """Add one row to the span; returns True if the dimension grew."""
        v = self._reduce(as_matrix(row, self.p, cols=self.ambient)[0])
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = (v * pow(int(v[piv]), self.p - 2, self.p)) % self.p
        for i, row_i in enumerate(self._rows):
            c = int(row_i[piv])
            if c:
                self._rows[i] = (row_i - c * v) % self.p
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < piv:
            pos += 1
        self._rows.insert(pos, v)
        self._pivots.insert(pos, piv)
        return True

    def insert_many(self, rows) -> int:
        added = 0
        m = as_matrix(rows, self.p, cols=self.ambient)
        for v in m:
            if self.insert(v):
                added += 1
        return added

    def to_subspace(self) -> FpSubspace:
        if not self._rows:
            return FpSubspace.zero(self.p, self.ambient)
        return FpSubspace.from_rref(np.array(self._rows, dtype=np.int64),
                                    self._pivots, self.p, self.ambient)
