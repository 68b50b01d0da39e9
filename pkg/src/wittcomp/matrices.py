"""Exact matrices as numpy object arrays of ``Fraction``."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import parse_rat

ZERO = Fraction(0)
ONE = Fraction(1)


def mat(rows: Iterable[Iterable]) -> np.ndarray:
    rows = [[Fraction(x) for x in row] for row in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def zeros(m: int, n: int | None = None) -> np.ndarray:
    return np.full((m, m if n is None else n), ZERO, dtype=object)


def eye(m: int) -> np.ndarray:
    out = zeros(m)
    for i in range(m):
        out[i, i] = ONE
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product that only touches nonzero entries."""
    out = zeros(a.shape[0], b.shape[1])
    rows_b = [np.nonzero(b[k])[0] for k in range(b.shape[0])]
    for i, k in zip(*np.nonzero(a)):
        aik = a[i, k]
        for j in rows_b[k]:
            out[i, j] += aik * b[k, j]
    return out


def comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return matmul(a, b) - matmul(b, a)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def scalar_part(a: np.ndarray) -> Fraction | None:
    """``c`` if ``a == c * I``, else ``None``."""
    m = a.shape[0]
    c = a[0, 0] if m else ZERO
    for i in range(m):
        for j in range(m):
            if a[i, j] != (c if i == j else 0):
                return None
    return Fraction(c)


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    r = np.array(a, dtype=object, copy=True)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv = next((i for i in range(row, rows) if r[i, col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = 1 / r[row, col]
        r[row] = r[row] * inv
        for i in range(rows):
            if i != row and r[i, col] != 0:
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a: np.ndarray) -> list[np.ndarray]:
    """Basis of ``{x : a x = 0}`` as 1-d object arrays."""
    r, pivots = rref(a)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.full(cols, ZERO, dtype=object)
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -r[i, f]
        basis.append(x)
    return basis


def column_space(a: np.ndarray) -> np.ndarray:
    """Columns of ``a`` forming a basis of its image."""
    _, pivots = rref(a)
    return a[:, pivots]


def intersect(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Basis (as columns) of ``col(a) & col(b)``; inputs have independent columns."""
    n = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(n, 0)
    stacked = np.concatenate([a, -b], axis=1)
    vecs = [a.dot(x[: a.shape[1]]) for x in nullspace(stacked)]
    if not vecs:
        return zeros(n, 0)
    return column_space(np.stack(vecs, axis=1))


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Some ``x`` with ``a x = b`` (vector ``b``), or ``None`` if inconsistent."""
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots = rref(aug)
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.full(n, ZERO, dtype=object)
    for i, p in enumerate(pivots):
        x[p] = r[i, n]
    return x


def to_grid(a: np.ndarray) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in a]


def from_grid(grid: Sequence[Sequence[str]]) -> np.ndarray:
    return mat([[parse_rat(x) for x in row] for row in grid])
