"""Pure numpy fallback with the same contract as the compiled kernels."""
from __future__ import annotations

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def reduce_insert(basis: np.ndarray, pivots: np.ndarray, rank: int, v: np.ndarray, p: int) -> int:
    for r in range(rank):
        c = v[pivots[r]]
        if c:
            v -= c * basis[r]
            v %= p
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return rank
    piv = int(nz[0])
    basis[rank] = (v * _inv(v[piv], p)) % p
    pivots[rank] = piv
    return rank + 1


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # one rank-1 update at a time: each product is below p**2 < 2**62
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out += np.outer(a[:, t], b[t])
        out %= p
    return out


def spin_closure(gens: np.ndarray, p: int) -> int:
    g, m, _ = gens.shape
    full = m * m
    basis = np.zeros((full, full), dtype=np.int64)
    pivots = np.zeros(full, dtype=np.int64)
    rank = reduce_insert(basis, pivots, 0, np.eye(m, dtype=np.int64).ravel(), p)
    ptr = 0
    while ptr < rank < full:
        x = basis[ptr].reshape(m, m)
        for s in range(g):
            rank = reduce_insert(basis, pivots, rank, matmul_mod(gens[s], x, p).ravel(), p)
            if rank == full:
                break
        ptr += 1
    return rank
