"""Operator Lie composites LC(H) and overlay representations.

For a direct decomposition ``H = H_1 + ... + H_k`` the piece ``End(H_i)`` is
realized inside ``End(H)`` as the operators with image in ``H_i`` that kill
every other summand, i.e. the ``X`` with ``P_i X P_i = X`` for the projector
``P_i`` onto ``H_i`` along the rest.  Non-direct sums have no such
realization and are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import matrices as mx
from .composite import (
    LieComposite, MatrixRep, piece_violations, truncated_witt_composite, witt_window_rep,
)
from .witt import WeightParam, _as_weight


class DecompositionError(ValueError):
    pass


@dataclass
class Decomposition:
    m: int
    subspaces: list[np.ndarray]

    def __post_init__(self):
        for H in self.subspaces:
            if H.shape[0] != self.m or mx.rank(H) != H.shape[1]:
                raise DecompositionError("each subspace needs an independent basis in the ambient space")
        if mx.rank(self._stacked()) != self.m:
            raise DecompositionError("subspaces do not span the ambient space")

    def _stacked(self) -> np.ndarray:
        return np.concatenate(self.subspaces, axis=1)

    @property
    def direct(self) -> bool:
        return sum(H.shape[1] for H in self.subspaces) == self.m

    @classmethod
    def trivial(cls, m: int) -> "Decomposition":
        return cls(m, [mx.eye(m)])

    @classmethod
    def bands(cls, m: int, bands: Sequence[Sequence[int]]) -> "Decomposition":
        """Coordinate subspaces ``span{e_a : a in band}``."""
        subs = []
        for band in bands:
            H = mx.zeros(m, len(band))
            for k, a in enumerate(band):
                H[a, k] = Fraction(1)
            subs.append(H)
        return cls(m, subs)


@dataclass
class OperatorComposite:
    decomposition: Decomposition
    projectors: list[np.ndarray]

    def piece_basis(self, i: int) -> list[np.ndarray]:
        """``B E_ab B^-1`` for ``a, b`` in block ``i``; ``B`` = stacked bases."""
        d = self.decomposition
        B = d._stacked()
        Binv = np.stack([mx.solve(B, mx.eye(d.m)[:, k]) for k in range(d.m)], axis=1)
        offset = sum(H.shape[1] for H in d.subspaces[:i])
        k = d.subspaces[i].shape[1]
        out = []
        for a, b in product(range(offset, offset + k), repeat=2):
            out.append(np.outer(B[:, a], Binv[b, :]))
        return out

    def dims(self) -> list[int]:
        return [H.shape[1] ** 2 for H in self.decomposition.subspaces]

    def contains(self, i: int, X: np.ndarray, cols: Sequence[int] | None = None) -> bool:
        P = self.projectors[i]
        D = mx.matmul(mx.matmul(P, X), P) - X
        if cols is not None:
            D = D[:, list(cols)]
        return mx.is_zero(D)


def build_LC(d: Decomposition) -> OperatorComposite:
    if not d.direct:
        dims = [H.shape[1] for H in d.subspaces]
        raise DecompositionError(
            f"sum of subspace dimensions {dims} exceeds ambient dimension {d.m}: "
            "End(H_i) has no block realization for a non-direct sum"
        )
    B = d._stacked()
    projectors = []
    offset = 0
    for H in d.subspaces:
        k = H.shape[1]
        # P = B diag(block) B^-1, assembled column by column
        cols = []
        for c in range(d.m):
            coords = mx.solve(B, mx.eye(d.m)[:, c])
            mask = np.array([Fraction(1) if offset <= r < offset + k else Fraction(0)
                             for r in range(d.m)], dtype=object)
            cols.append(B.dot(coords * mask))
        projectors.append(np.stack(cols, axis=1))
        offset += k
    return OperatorComposite(d, projectors)


@dataclass
class OverlayReport:
    containment: list[str]
    homomorphism: list[str]
    glueing: list[str]

    @property
    def passed(self) -> bool:
        return not (self.containment or self.homomorphism or self.glueing)

    @property
    def first_violation(self) -> str | None:
        for group in (self.containment, self.homomorphism, self.glueing):
            if group:
                return group[0]
        return None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "containment": self.containment,
                "homomorphism": self.homomorphism, "glueing": self.glueing}


def _placement_violations(c: LieComposite, T: MatrixRep, lc: OperatorComposite,
                          assignment: Mapping[str, int], first_only: bool = False
                          ) -> tuple[list[str], list[str]]:
    containment, glueing = [], []
    for p in c.pieces:
        target = assignment[p.name]
        for a in range(p.dim):
            x = p.basis[:, a]
            cols = T.exact_columns([c.labels[k] for k in np.nonzero(x)[0]])
            if not lc.contains(target, T.image(c.labels, x), cols):
                containment.append(f"{p.name}: T({p.names[a]}) not in End(H_{target})")
                if first_only:
                    return containment, glueing
    for i, p in enumerate(c.pieces):
        for q in c.pieces[i + 1:]:
            inter = mx.intersect(p.basis, q.basis)
            for k in range(inter.shape[1]):
                u = inter[:, k]
                img = T.image(c.labels, u)
                cols = T.exact_columns([c.labels[l] for l in np.nonzero(u)[0]])
                for piece in (p, q):
                    if not lc.contains(assignment[piece.name], img, cols):
                        glueing.append(
                            f"{p.name}&{q.name}: image of shared element {k} "
                            f"leaves End(H_{assignment[piece.name]})")
                        if first_only:
                            return containment, glueing
    return containment, glueing


def is_overlay_rep(c: LieComposite, T: MatrixRep, lc: OperatorComposite,
                   assignment: Mapping[str, int]) -> OverlayReport:
    """Check that ``T`` maps each piece homomorphically into its assigned
    ``End(H_i)`` and that shared elements land in every assigned piece.

    Exactness is confined to ``T``'s window columns when it has any.
    """
    if lc.decomposition.m != T.m:
        raise ValueError("ambient dimensions differ")
    containment, glueing = _placement_violations(c, T, lc, assignment)
    homomorphism = [str(v) for p in c.pieces for v in piece_violations(c, p, T)]
    return OverlayReport(containment, homomorphism, glueing)


# -- window search ---------------------------------------------------------------------

def band_candidates(N: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every split of ``0..N`` into consecutive bands, in lexicographic order."""
    out = []
    for cuts in product((False, True), repeat=N):
        bands, cur = [], [0]
        for n, cut in zip(range(1, N + 1), cuts):
            if cut:
                bands.append(tuple(cur))
                cur = []
            cur.append(n)
        bands.append(tuple(cur))
        out.append(tuple(bands))
    return sorted(out)


@dataclass
class WindowSearch:
    h: Fraction
    N: int
    spin: int
    candidates: list[dict]

    @property
    def passing(self) -> list[list[list[int]]]:
        return [c["bands"] for c in self.candidates if c["pass"]]

    def to_dict(self) -> dict:
        return {"h": str(self.h), "N": self.N, "spin": self.spin,
                "candidates": self.candidates}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


MIN_WINDOW = 4


def theorem_1C_window(w: WeightParam, N: int, spin: int, K: int = 2,
                      candidates: Iterable[Sequence[Sequence[int]]] | None = None) -> WindowSearch:
    """Search graded band decompositions of ``V_h``'s degree-``N`` window.

    Spin 2 uses the truncated Witt composite; spin 1 the extended composite,
    whose currents are the spin-1 operators.  A candidate passes when some
    assignment of pieces to bands satisfies every overlay condition on the
    interior window.  The report is sorted by bands, so it does not depend
    on the order of ``candidates``.
    """
    if spin not in (1, 2):
        raise ValueError("spin must be 1 or 2")
    if N < max(MIN_WINDOW, 2 * K):
        raise ValueError(f"N must be at least {max(MIN_WINDOW, 2 * K)} for an interior window")
    w = _as_weight(w)
    c = truncated_witt_composite(K, extended=spin == 1)
    T = witt_window_rep(w, N, K, extended=spin == 1)
    cands = band_candidates(N) if candidates is None else [tuple(map(tuple, b)) for b in candidates]
    homomorphism = [str(v) for p in c.pieces for v in piece_violations(c, p, T)]
    results = []
    for bands in sorted(set(cands)):
        lc = build_LC(Decomposition.bands(N + 1, bands))
        first = None
        chosen = None
        for targets in product(range(len(bands)), repeat=len(c.pieces)):
            assignment = {p.name: t for p, t in zip(c.pieces, targets)}
            # the homomorphism part does not depend on the decomposition
            bad = homomorphism[:1] or [
                v for vs in _placement_violations(c, T, lc, assignment, True) for v in vs]
            if not bad:
                chosen = assignment
                break
            if first is None:
                first = bad[0]
        results.append({
            "bands": [list(b) for b in bands],
            "pass": chosen is not None,
            "assignment": chosen,
            "first_violation": None if chosen is not None else first,
        })
    return WindowSearch(w.h, N, spin, results)
