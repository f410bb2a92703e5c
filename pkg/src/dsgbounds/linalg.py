"""Exact sparse row reduction.

Vectors are ``dict[int, element]`` keyed by column.  A row's pivot is its
smallest column, so callers choose the elimination preference by how they
number columns.

Over QQ rows are kept as primitive integer vectors and eliminated
fraction-free; over F_p rows are plain residues with pivot 1.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .field import CoefficientField, Mod


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Subspace:
    """A subspace of k^ncols grown one vector at a time."""

    def __init__(self, field: CoefficientField, ncols: int | None = None):
        self.field = field
        self.ncols = ncols
        self._p = field.characteristic
        self._rows: dict[int, dict[int, int]] = {}

    # conversions between field elements and internal ints
    def _to_int(self, vec) -> tuple[dict[int, int], int]:
        p = self._p
        if p:
            w = {}
            for k, v in vec.items():
                iv = (v.v if isinstance(v, Mod) else int(v)) % p
                if iv:
                    w[k] = iv
            return w, 1
        D = 1
        for v in vec.values():
            if isinstance(v, Fraction):
                D = _lcm(D, v.denominator)
        w = {}
        for k, v in vec.items():
            if v:
                iv = v * D
                w[k] = iv if isinstance(iv, int) else iv.numerator
        return w, D

    def _from_int(self, w: dict[int, int], D: int) -> dict:
        p = self._p
        if p:
            return {k: Mod(v, p) for k, v in w.items()}
        if D == 1:
            return dict(w)
        out = {}
        for k, v in w.items():
            f = Fraction(v, D)
            out[k] = f.numerator if f.denominator == 1 else f
        return out

    def _reduce_int(self, w: dict[int, int], D: int):
        rows = self._rows
        if not rows:
            return w, D
        p = self._p
        heap = [c for c in w if c in rows]
        heapify(heap)
        while heap:
            c = heappop(heap)
            b = w.get(c)
            if b is None:
                continue
            row = rows[c]
            if p:
                for k, pv in row.items():
                    nv = (w.get(k, 0) - b * pv) % p
                    if nv:
                        if k not in w and k in rows:
                            heappush(heap, k)
                        w[k] = nv
                    else:
                        w.pop(k, None)
            else:
                a = row[c]
                g = gcd(a, b)
                a //= g
                b //= g
                if a != 1:
                    for k in w:
                        w[k] *= a
                    D *= a
                for k, pv in row.items():
                    nv = w.get(k, 0) - b * pv
                    if nv:
                        if k not in w and k in rows:
                            heappush(heap, k)
                        w[k] = nv
                    else:
                        w.pop(k, None)
        if not p and w:
            g = D
            for v in w.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                w = {k: v // g for k, v in w.items()}
                D //= g
        return w, D

    def _store(self, w: dict[int, int]) -> int:
        c = min(w)
        p = self._p
        if p:
            inv = pow(w[c], -1, p)
            row = {k: v * inv % p for k, v in w.items()}
        else:
            g = 0
            for v in w.values():
                g = gcd(g, v)
            if w[c] < 0:
                g = -g
            row = {k: v // g for k, v in w.items()}
        self._rows[c] = row
        return c

    # public API
    def reduce(self, vec) -> dict:
        """Canonical remainder of ``vec``; supported on non-pivot columns."""
        w, D = self._to_int(vec)
        w, D = self._reduce_int(w, D)
        return self._from_int(w, D)

    def contains(self, vec) -> bool:
        w, D = self._to_int(vec)
        w, _ = self._reduce_int(w, D)
        return not w

    def add(self, vec):
        """Insert ``vec``.  Returns the nonzero remainder that was added, or None."""
        w, D = self._to_int(vec)
        w, D = self._reduce_int(w, D)
        if not w:
            return None
        self._store(dict(w))
        return self._from_int(w, D)

    def extend(self, vecs: Iterable) -> int:
        n = 0
        for v in vecs:
            if self.add(v) is not None:
                n += 1
        return n

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def is_pivot(self, c: int) -> bool:
        return c in self._rows

    def basis(self) -> list[dict]:
        """Stored echelon rows as field-element vectors, in pivot order."""
        return [self._from_int(self._rows[c], 1) for c in sorted(self._rows)]

    def copy(self) -> "Subspace":
        s = Subspace(self.field, self.ncols)
        s._rows = {c: dict(r) for c, r in self._rows.items()}
        return s

    def _back_substitute(self, x: dict[int, int], D: int):
        """Fill pivot unknowns of x (scaled by D) so every row evaluates to zero."""
        p = self._p
        for c in sorted(self._rows, reverse=True):
            row = self._rows[c]
            s = 0
            for k, v in row.items():
                if k != c:
                    xv = x.get(k)
                    if xv:
                        s += v * xv
            if p:
                s %= p
                if s:
                    x[c] = (-s * pow(row[c], -1, p)) % p
                else:
                    x.pop(c, None)
            else:
                if s:
                    a = row[c]
                    # x_c = -s / a over the common denominator D
                    g = gcd(a, s)
                    a //= g
                    s //= g
                    if a < 0:
                        a, s = -a, -s
                    if a != 1:
                        for k in x:
                            x[k] *= a
                        D *= a
                    x[c] = -s
                else:
                    x.pop(c, None)
        return x, D


def _sparse_rows(rows) -> list[dict]:
    out = []
    for r in rows:
        if isinstance(r, dict):
            out.append(r)
        else:
            out.append({j: v for j, v in enumerate(r) if v})
    return out


def rank(field: CoefficientField, rows) -> int:
    S = Subspace(field)
    S.extend(_sparse_rows(rows))
    return S.dim


def kernel(field: CoefficientField, rows, ncols: int) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column."""
    S = Subspace(field, ncols)
    S.extend(_sparse_rows(rows))
    basis = []
    for f in range(ncols):
        if S.is_pivot(f):
            continue
        x, D = S._back_substitute({f: 1}, 1)
        basis.append(S._from_int(x, D))
    return basis


def solve(field: CoefficientField, rows, rhs: Sequence, nunknowns: int):
    """One solution x of A x = rhs, or None when the system is inconsistent.

    ``rows`` are the rows of A; ``rhs`` the right-hand side entries.
    Free unknowns are set to zero.
    """
    aug = []
    for r, b in zip(_sparse_rows(rows), rhs):
        r = dict(r)
        if b:
            r[nunknowns] = b
        if r:
            aug.append(r)
    S = Subspace(field, nunknowns + 1)
    S.extend(aug)
    if S.is_pivot(nunknowns):
        return None
    # the augmented column stands for the constant -1 multiplier of x_{n}
    x, D = S._back_substitute({nunknowns: -1}, 1)
    x.pop(nunknowns, None)
    return S._from_int(x, D)


# dense (numpy object array) helpers

def zeros(field: CoefficientField, nrows: int, ncols: int) -> np.ndarray:
    A = np.empty((nrows, ncols), dtype=object)
    z = field.zero
    for i in range(nrows):
        for j in range(ncols):
            A[i, j] = z
    return A


def identity(field: CoefficientField, n: int) -> np.ndarray:
    A = zeros(field, n, n)
    for i in range(n):
        A[i, i] = field.one
    return A


def dense_rows(A: np.ndarray) -> list[dict]:
    return [{j: A[i, j] for j in range(A.shape[1]) if A[i, j]} for i in range(A.shape[0])]


def dense_columns(A: np.ndarray) -> list[dict]:
    return [{i: A[i, j] for i in range(A.shape[0]) if A[i, j]} for j in range(A.shape[1])]


def vec_to_dense(field, v: dict, n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    z = field.zero
    for i in range(n):
        out[i] = v.get(i, z)
    return out


def dense_to_vec(x) -> dict:
    return {i: x[i] for i in range(len(x)) if x[i]}


def matmul(field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return zeros(field, A.shape[0], B.shape[1])
    return A.dot(B)


def is_zero_matrix(A: np.ndarray) -> bool:
    return all(not v for v in A.flat)


def equal_matrices(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))


def matrix_rank(field, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return rank(field, dense_rows(A))


def column_space(field, A: np.ndarray) -> Subspace:
    S = Subspace(field, A.shape[0])
    if A.size:
        S.extend(dense_columns(A))
    return S


def matrix_kernel(field, A: np.ndarray) -> list[dict]:
    return kernel(field, dense_rows(A) if A.size else [], A.shape[1])
