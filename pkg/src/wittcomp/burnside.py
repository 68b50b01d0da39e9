"""Irreducibility via Burnside: the generated unital algebra is all of M_m.

Two routes compute the dimension of the algebra generated by a set of
matrices.  The exact route spans words over the rationals.  The modular
route runs the same closure over F_p in the compiled kernel; since reducing
mod p can only lower a rank, reaching ``m**2`` there proves full dimension
over Q.  A modular shortfall is never trusted on its own: reducibility is
certified by an exact non-scalar matrix commuting with every generator
(found mod p, lifted by rational reconstruction, then checked over Q), and
only if no such witness turns up does the exact route run.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from . import kernels
from . import matrices as mx

PRIMES = (2147483647, 2147483629, 2147483587)
EXACT_LIMIT = 6


def _flat(a: np.ndarray) -> list[Fraction]:
    return [Fraction(x) for x in a.flat]


def algebra_dimension_exact(ops: Sequence[np.ndarray]) -> int:
    """Dimension over Q of the unital algebra generated by ``ops``."""
    m = ops[0].shape[0]
    full = m * m
    basis: list[list[Fraction]] = []
    pivots: list[int] = []

    def insert(v: list[Fraction]) -> bool:
        for row, piv in zip(basis, pivots):
            c = v[piv]
            if c:
                for j in range(full):
                    if row[j]:
                        v[j] -= c * row[j]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        basis.append([x * inv for x in v])
        pivots.append(piv)
        return True

    identity = np.full((m, m), Fraction(0), dtype=object)
    for i in range(m):
        identity[i, i] = Fraction(1)
    insert(_flat(identity))
    gens = [np.asarray(g, dtype=object) for g in ops]
    ptr = 0
    while ptr < len(basis) < full:
        x = np.array(basis[ptr], dtype=object).reshape(m, m)
        for g in gens:
            if insert(_flat(mx.matmul(g, x))) and len(basis) == full:
                break
        ptr += 1
    return len(basis)


def to_residues(a: np.ndarray, p: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(a):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        out[idx] = (x.numerator % p) * pow(x.denominator, -1, p) % p
    return out


def _homogeneous_degree(a: np.ndarray, grading: Sequence[int]) -> int | None:
    """Degree ``d`` with ``a[r, c] != 0 => grading[r] - grading[c] == d``;
    ``0`` for the zero matrix, ``None`` if ``a`` is not homogeneous."""
    degs = {grading[r] - grading[c] for r, c in zip(*np.nonzero(a))}
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


def algebra_dimension_mod(ops: Sequence[np.ndarray], p: int = PRIMES[0],
                          grading: Sequence[int] | None = None,
                          backend: str | None = None) -> int:
    """Dimension over F_p of the algebra generated by the reduced ``ops``.

    With a ``grading`` under which every generator is homogeneous, the
    closure runs separately in each degree component of M_m, which is much
    smaller than M_m itself.
    """
    kern = kernels.get(backend)
    gens = [to_residues(np.asarray(g, dtype=object), p) for g in ops]
    m = gens[0].shape[0]
    degs = None
    if grading is not None:
        degs = [_homogeneous_degree(g, grading) for g in gens]
        if any(d is None for d in degs):
            degs = None
    if degs is None:
        return int(kern.spin_closure(np.ascontiguousarray(np.stack(gens)), p))

    grading = np.asarray(grading)
    diff = grading[:, None] - grading[None, :]
    comps = {}
    for d in np.unique(diff):
        rows, cols = np.nonzero(diff == d)
        L = rows.size
        comps[int(d)] = {
            "rows": rows, "cols": cols,
            "basis": np.zeros((L, L), dtype=np.int64),
            "pivots": np.zeros(L, dtype=np.int64), "rank": 0,
        }

    queue: list[tuple[int, np.ndarray]] = []

    def insert(d: int, v: np.ndarray) -> None:
        comp = comps[d]
        r = comp["rank"]
        comp["rank"] = int(kern.reduce_insert(comp["basis"], comp["pivots"], r,
                                              np.ascontiguousarray(v), p))
        if comp["rank"] > r:
            queue.append((d, comp["basis"][r].copy()))

    insert(0, np.eye(m, dtype=np.int64)[comps[0]["rows"], comps[0]["cols"]])
    full = m * m
    total = lambda: sum(c["rank"] for c in comps.values())
    while queue and total() < full:
        d, vec = queue.pop(0)
        x = np.zeros((m, m), dtype=np.int64)
        x[comps[d]["rows"], comps[d]["cols"]] = vec
        for g, dg in zip(gens, degs):
            target = d + dg
            y = kern.matmul_mod(g, x, p)
            if target not in comps:
                continue
            insert(target, y[comps[target]["rows"], comps[target]["cols"]])
            if total() == full:
                break
    return total()


def rational_reconstruct(a: int, p: int) -> Fraction | None:
    """The fraction ``r/s`` with ``r = a*s mod p`` and ``|r|, s < sqrt(p/2)``."""
    bound = isqrt(p // 2)
    r0, r1, s0, s1 = p, a % p, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}`` over F_p, one per free column."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            A[hit] = (A[hit] - f[hit, None] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-A[i, f]) % p
    return out


def commutant_witness(ops: Sequence[np.ndarray], grading: Sequence[int] | None = None,
                      p: int = PRIMES[0], max_unknowns: int = 400) -> np.ndarray | None:
    """A non-scalar rational matrix commuting with every op, or ``None``.

    Candidates come from the commutant mod ``p`` (degree by degree when a
    grading makes the ops homogeneous) and are only returned after an exact
    check over Q, so a returned witness always proves reducibility.
    """
    gens_q = [np.asarray(g, dtype=object) for g in ops]
    try:
        gens = [to_residues(g, p) for g in gens_q]
    except ZeroDivisionError:
        return None
    m = gens[0].shape[0]
    degs = None
    if grading is not None:
        degs = [_homogeneous_degree(g, grading) for g in gens_q]
        if any(d is None for d in degs):
            degs = None
    if degs is None:
        grading, degs = [0] * m, [0] * len(gens)
    grading = np.asarray(grading)
    diff = grading[:, None] - grading[None, :]
    for d in sorted(np.unique(diff), key=lambda d: (abs(d), d)):
        rows, cols = np.nonzero(diff == d)
        if rows.size > max_unknowns:
            continue
        blocks = []
        for g, dg in zip(gens, degs):
            t_rows, t_cols = np.nonzero(diff == d + dg)
            if t_rows.size == 0:
                continue
            block = np.zeros((t_rows.size, rows.size), dtype=np.int64)
            for k, (r, c) in enumerate(zip(rows, cols)):
                M = np.zeros((m, m), dtype=np.int64)
                M[r, :] += g[c, :]
                M[:, c] -= g[:, r]
                block[:, k] = M[t_rows, t_cols] % p
            blocks.append(block)
        if not blocks:
            continue
        for vec in nullspace_mod(np.concatenate(blocks), p):
            entries = [rational_reconstruct(int(x), p) for x in vec]
            if any(x is None for x in entries):
                continue
            X = np.full((m, m), Fraction(0), dtype=object)
            for (r, c), x in zip(zip(rows, cols), entries):
                X[r, c] = x
            if _is_scalar(X):
                continue
            if all(_all_zero(mx.comm(g, X)) for g in gens_q):
                return X
    return None


def _all_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def _is_scalar(a: np.ndarray) -> bool:
    m = a.shape[0]
    return _all_zero(a - a[0, 0] * np.eye(m, dtype=object))


def algebra_dimension(ops: Sequence[np.ndarray], method: str = "auto",
                      grading: Sequence[int] | None = None,
                      backend: str | None = None) -> int:
    if not ops:
        raise ValueError("need at least one matrix")
    m = ops[0].shape[0]
    if method == "exact" or (method == "auto" and m <= EXACT_LIMIT):
        return algebra_dimension_exact(ops)
    if method not in ("auto", "modular"):
        raise ValueError(f"unknown method {method!r}")
    for p in PRIMES:
        try:
            dim = algebra_dimension_mod(ops, p, grading, backend)
        except ZeroDivisionError:
            continue
        if dim == m * m:
            return dim
    return algebra_dimension_exact(ops)


@dataclass(frozen=True)
class BurnsideResult:
    irreducible: bool
    route: str
    dimension: int | None = None
    witness: np.ndarray | None = None


def burnside_certificate(ops: Sequence[np.ndarray], method: str = "auto",
                         grading: Sequence[int] | None = None,
                         backend: str | None = None) -> BurnsideResult:
    """Decide irreducibility and say which exact argument settled it.

    Routes: ``exact`` (span closure over Q), ``modular`` (full dimension
    mod p), ``commutant`` (an exact non-scalar commuting matrix).
    """
    if not ops:
        raise ValueError("need at least one matrix")
    m = ops[0].shape[0]
    full = m * m
    if method == "exact" or (method == "auto" and m <= EXACT_LIMIT):
        dim = algebra_dimension_exact(ops)
        return BurnsideResult(dim == full, "exact", dim)
    if method not in ("auto", "modular"):
        raise ValueError(f"unknown method {method!r}")
    for p in PRIMES:
        try:
            dim = algebra_dimension_mod(ops, p, grading, backend)
        except ZeroDivisionError:
            continue
        if dim == full:
            return BurnsideResult(True, "modular", dim)
        X = commutant_witness(ops, grading, p)
        if X is not None:
            return BurnsideResult(False, "commutant", None, X)
    dim = algebra_dimension_exact(ops)
    return BurnsideResult(dim == full, "exact", dim)


def burnside_irreducible(ops: Sequence[np.ndarray], method: str = "auto",
                         grading: Sequence[int] | None = None,
                         backend: str | None = None) -> bool:
    """True iff the unital algebra generated by ``ops`` has dimension ``m**2``."""
    return burnside_certificate(ops, method, grading, backend).irreducible
