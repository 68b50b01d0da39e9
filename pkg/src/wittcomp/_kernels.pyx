# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Modular span-closure kernels (compiled backend).

Vectors are int64 residues in ``[0, p)`` with ``p < 2**31``, so every
product fits in a signed 64-bit word before reduction.
"""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _insert(i64[:, ::1] basis, i64[::1] pivots, Py_ssize_t rank,
                        i64[::1] v, i64 p) nogil:
    cdef Py_ssize_t L = v.shape[0]
    cdef Py_ssize_t r, j, piv
    cdef i64 c, negc, inv
    for r in range(rank):
        c = v[pivots[r]]
        if c != 0:
            negc = p - c
            for j in range(L):
                v[j] = (v[j] + negc * basis[r, j]) % p
    piv = -1
    for j in range(L):
        if v[j] != 0:
            piv = j
            break
    if piv < 0:
        return rank
    inv = _inv(v[piv], p)
    for j in range(L):
        basis[rank, j] = (v[j] * inv) % p
    pivots[rank] = piv
    return rank + 1


def reduce_insert(i64[:, ::1] basis, i64[::1] pivots, Py_ssize_t rank,
                  i64[::1] v, i64 p):
    """Reduce ``v`` (in place) against the first ``rank`` rows of ``basis``;
    append it if independent.  Returns the new rank."""
    with nogil:
        rank = _insert(basis, pivots, rank, v, p)
    return rank


def matmul_mod(i64[:, ::1] a, i64[:, ::1] b, i64 p):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] o = out
    cdef Py_ssize_t i, j, t
    cdef i64 aik
    with nogil:
        for i in range(n):
            for t in range(k):
                aik = a[i, t]
                if aik != 0:
                    for j in range(m):
                        o[i, j] = (o[i, j] + aik * b[t, j]) % p
    return out


def spin_closure(i64[:, :, ::1] gens, i64 p):
    """Dimension of the unital algebra generated by ``gens`` modulo ``p``.

    Breadth-first closure of ``span{I}`` under left multiplication by each
    generator, stopping early once the full matrix algebra is reached.
    """
    cdef Py_ssize_t g = gens.shape[0], m = gens.shape[1]
    cdef Py_ssize_t L = m * m, full = m * m
    basis_arr = np.zeros((full, L), dtype=np.int64)
    piv_arr = np.zeros(full, dtype=np.int64)
    v_arr = np.zeros(L, dtype=np.int64)
    cdef i64[:, ::1] basis = basis_arr
    cdef i64[::1] pivots = piv_arr
    cdef i64[::1] v = v_arr
    cdef Py_ssize_t rank = 0, ptr = 0, s, i, j, t
    cdef i64 acc
    with nogil:
        for i in range(m):
            v[i * m + i] = 1
        rank = _insert(basis, pivots, rank, v, p)
        while ptr < rank and rank < full:
            for s in range(g):
                for i in range(m):
                    for j in range(m):
                        acc = 0
                        for t in range(m):
                            acc = (acc + gens[s, i, t] * basis[ptr, t * m + j]) % p
                        v[i * m + j] = acc
                rank = _insert(basis, pivots, rank, v, p)
                if rank == full:
                    break
            ptr += 1
    return rank
