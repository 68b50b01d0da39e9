"""Finite-dimensional Lie composites and their matrix representations.

A composite is a space with a basis of labels and a list of pieces.  Each
piece is a subspace (columns of ``basis``) with its own bracket, given by
structure constants on the piece's basis.  A bracket entry may be absent:
truncated Witt composites only define brackets of window-closed pairs, and
every check below quantifies over the defined entries only.

Connectivity reads "the pieces intersect" as "intersect in a nonzero
subspace"; any two subspaces share the zero vector.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import matrices as mx
from .burnside import burnside_irreducible
from .operators import truncate_to_matrix
from .witt import CURRENT_RULES, CurrentRule, WeightParam, _as_weight, current, witt_assignment

Vec = np.ndarray


class CompositeError(ValueError):
    pass


def _vec(xs: Iterable) -> Vec:
    xs = [Fraction(x) for x in xs]
    out = np.empty(len(xs), dtype=object)
    out[:] = xs
    return out


def _zero_vec(k: int) -> Vec:
    return np.full(k, Fraction(0), dtype=object)


@dataclass
class Piece:
    """A subspace with a (possibly partial) bracket on its basis."""

    name: str
    basis: np.ndarray
    table: dict[tuple[int, int], Vec]
    names: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def bracket(self, x: Vec, y: Vec) -> Vec | None:
        """Bilinear extension of the table; ``None`` if an entry is missing."""
        out = _zero_vec(self.dim)
        for a in np.nonzero(x)[0]:
            for b in np.nonzero(y)[0]:
                t = self.table.get((a, b))
                if t is None:
                    return None
                out = out + x[a] * y[b] * t
        return out

    def unit(self, a: int) -> Vec:
        v = _zero_vec(self.dim)
        v[a] = Fraction(1)
        return v

    def coords(self, u: Vec) -> Vec | None:
        return mx.solve(self.basis, u)


@dataclass
class LieComposite:
    labels: tuple[str, ...]
    pieces: list[Piece]
    window: str = ""

    def __post_init__(self):
        n = len(self.labels)
        for p in self.pieces:
            if p.basis.shape[0] != n:
                raise CompositeError(f"piece {p.name}: basis has wrong ambient dimension")
            if p.dim <= 1:
                raise CompositeError(f"piece {p.name}: dimension must exceed 1")
            if mx.rank(p.basis) != p.dim:
                raise CompositeError(f"piece {p.name}: basis is not independent")
            if not p.names:
                p.names = tuple(self._name(p.basis[:, a]) or f"{p.name}[{a}]"
                                for a in range(p.dim))
            bad = antisymmetry_failures(p) or jacobi_failures(p)
            if bad:
                raise CompositeError(f"piece {p.name}: bracket fails at {bad[0]}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def _name(self, col: Vec) -> str | None:
        nz = np.nonzero(col)[0]
        if len(nz) == 1 and col[nz[0]] == 1:
            return self.labels[nz[0]]
        return None

    def piece(self, name: str) -> Piece:
        return next(p for p in self.pieces if p.name == name)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "window": self.window,
            "pieces": [
                {"name": p.name, "basis": list(p.names),
                 "brackets": [
                     {"x": p.names[a], "y": p.names[b],
                      "value": [str(c) for c in t]}
                     for (a, b), t in sorted(p.table.items())
                 ]}
                for p in self.pieces
            ],
        }


def antisymmetry_failures(p: Piece) -> list[tuple[str, int, int]]:
    out = []
    for (a, b), t in p.table.items():
        s = p.table.get((b, a))
        if s is not None and not all(x == -y for x, y in zip(t, s)):
            out.append(("antisymmetry", a, b))
        if a == b and any(t):
            out.append(("antisymmetry", a, b))
    return out


def jacobi_failures(p: Piece) -> list[tuple[str, int, int, int]]:
    """Triples where all three nested brackets are defined and do not sum to 0."""
    out = []
    units = [p.unit(a) for a in range(p.dim)]
    for a, b, c in combinations(range(p.dim), 3):
        terms = []
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = p.table.get((y, z))
            outer = None if inner is None else p.bracket(units[x], inner)
            if outer is None:
                break
            terms.append(outer)
        else:
            if any(terms[0] + terms[1] + terms[2]):
                out.append(("jacobi", a, b, c))
    return out


# -- checks --------------------------------------------------------------------

@dataclass(frozen=True)
class CompositeFlags:
    compatible: bool
    dense: bool
    connected: bool

    def to_dict(self) -> dict:
        return {"compatible": self.compatible, "dense": self.dense,
                "connected": self.connected}


def _intersection(p: Piece, q: Piece) -> np.ndarray:
    return mx.intersect(p.basis, q.basis)


def compatible_pair(p: Piece, q: Piece) -> bool:
    """Brackets induced on ``p & q`` agree wherever both are defined."""
    inter = _intersection(p, q)
    cols = [inter[:, k] for k in range(inter.shape[1])]
    for u, v in product(cols, repeat=2):
        pu, pv, qu, qv = p.coords(u), p.coords(v), q.coords(u), q.coords(v)
        bp, bq = p.bracket(pu, pv), q.bracket(qu, qv)
        if bp is None or bq is None:
            continue
        if not mx.equal(p.basis.dot(bp), q.basis.dot(bq)):
            return False
    return True


def composite_check(c: LieComposite) -> CompositeFlags:
    compatible = all(compatible_pair(p, q) for p, q in combinations(c.pieces, 2))
    dense = bool(c.pieces) and mx.rank(np.concatenate([p.basis for p in c.pieces], axis=1)) == c.dim
    k = len(c.pieces)
    adj = {i: set() for i in range(k)}
    for i, j in combinations(range(k), 2):
        if _intersection(c.pieces[i], c.pieces[j]).shape[1] > 0:
            adj[i].add(j)
            adj[j].add(i)
    seen, stack = set(), [0] if k else []
    while stack:
        i = stack.pop()
        if i not in seen:
            seen.add(i)
            stack.extend(adj[i] - seen)
    return CompositeFlags(compatible, dense, len(seen) == k)


# -- representations -------------------------------------------------------------

ColumnFilter = Callable[[Sequence[str]], Sequence[int]]


@dataclass
class MatrixRep:
    """Exact matrices on the composite's basis labels.

    ``columns`` is the window contract of a truncated representation: given
    the labels entering a product it returns the columns where the product
    of truncations equals the truncation of the product.  ``grading`` (a
    degree per coordinate) lets the Burnside test split by degree.
    """

    m: int
    assignment: dict[str, np.ndarray]
    columns: ColumnFilter | None = None
    grading: tuple[int, ...] | None = None

    def __post_init__(self):
        for label, a in self.assignment.items():
            if a.shape != (self.m, self.m):
                raise ValueError(f"matrix for {label} is not {self.m}x{self.m}")

    def image(self, labels: Sequence[str], v: Vec) -> np.ndarray:
        terms = [(labels[k], v[k]) for k in np.nonzero(v)[0]]
        if len(terms) == 1 and terms[0][1] == 1:
            return self.assignment[terms[0][0]]
        out = mx.zeros(self.m)
        for l, c in terms:
            out = out + c * self.assignment[l]
        return out

    def matrices(self) -> list[np.ndarray]:
        return [self.assignment[k] for k in sorted(self.assignment)]

    def exact_columns(self, labels: Sequence[str]) -> Sequence[int]:
        return range(self.m) if self.columns is None else self.columns(labels)


def zero_rep(c: LieComposite, m: int) -> MatrixRep:
    return MatrixRep(m, {l: mx.zeros(m) for l in c.labels})


@dataclass(frozen=True)
class Violation:
    piece: str
    x: str
    y: str

    def __str__(self) -> str:
        return f"{self.piece}: [T({self.x}), T({self.y})] != T([{self.x}, {self.y}])"


@dataclass
class RepReport:
    pieces: dict[str, bool]
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"passed": self.passed, "pieces": self.pieces,
                "violations": [str(v) for v in self.violations]}


def _support(labels: Sequence[str], *vs: Vec) -> list[str]:
    return sorted({labels[l] for v in vs for l in np.nonzero(v)[0]})


def piece_violations(c: LieComposite, p: Piece, T: MatrixRep) -> list[Violation]:
    out = []
    for a in range(p.dim):
        for b in range(a + 1, p.dim):
            t = p.table.get((a, b))
            if t is None:
                continue
            x, y = p.basis[:, a], p.basis[:, b]
            cols = list(T.exact_columns(_support(c.labels, x, y)))
            if not cols:
                continue
            tx, ty = T.image(c.labels, x), T.image(c.labels, y)
            lhs = mx.matmul(tx, ty[:, cols]) - mx.matmul(ty, tx[:, cols])
            rhs = T.image(c.labels, p.basis.dot(t))[:, cols]
            if not mx.equal(lhs, rhs):
                out.append(Violation(p.name, p.names[a], p.names[b]))
    return out


def check_representation(c: LieComposite, T: MatrixRep) -> RepReport:
    """``[T(x), T(y)] = T([x, y])`` on every defined pair of every piece."""
    missing = set(c.labels) - set(T.assignment)
    if missing:
        raise ValueError(f"representation misses labels {sorted(missing)}")
    report = RepReport({})
    for p in c.pieces:
        bad = piece_violations(c, p, T)
        report.pieces[p.name] = not bad
        report.violations.extend(bad)
    return report


def tensor_rep(T1: MatrixRep, T2: MatrixRep) -> MatrixRep:
    """``x -> T1(x) (x) 1 + 1 (x) T2(x)``; coordinates ordered ``(r1, r2)``."""
    if set(T1.assignment) != set(T2.assignment):
        raise ValueError("representations of different composites")
    i1, i2 = mx.eye(T1.m), mx.eye(T2.m)
    assignment = {
        l: mx.kron(T1.assignment[l], i2) + mx.kron(i1, T2.assignment[l])
        for l in T1.assignment
    }
    columns = None
    if T1.columns is not None or T2.columns is not None:
        def columns(labels):
            c1, c2 = T1.exact_columns(labels), T2.exact_columns(labels)
            return [r1 * T2.m + r2 for r1 in c1 for r2 in c2]
    grading = None
    if T1.grading is not None and T2.grading is not None:
        grading = tuple(g1 + g2 for g1 in T1.grading for g2 in T2.grading)
    return MatrixRep(T1.m * T2.m, assignment, columns, grading)


def rep_irreducible(T: MatrixRep, **kw) -> bool:
    return burnside_irreducible(T.matrices(), grading=T.grading, **kw)


# -- octahedron ----------------------------------------------------------------------

VERTICES = ("A", "B", "C", "D", "E", "F")
FACES = (("A", "B", "C"), ("A", "D", "E"), ("C", "D", "F"), ("E", "B", "F"))
OPPOSITE = (("A", "F"), ("B", "D"), ("C", "E"))


def _cyclic_table(k: int, triple: Sequence[int]) -> dict[tuple[int, int], Vec]:
    table = {}
    for a in range(k):
        table[(a, a)] = _zero_vec(k)
    for x, y, z in (triple, triple[1:] + triple[:1], triple[2:] + triple[:2]):
        v = _zero_vec(k)
        v[z] = Fraction(1)
        table[(x, y)] = v
        table[(y, x)] = -v
    return table


def _unit_basis(labels: Sequence[str], chosen: Sequence[str]) -> np.ndarray:
    B = mx.zeros(len(labels), len(chosen))
    for k, l in enumerate(chosen):
        B[labels.index(l), k] = Fraction(1)
    return B


def octahedron() -> LieComposite:
    """Six vertices; each listed face is an so(3) piece with [X,Y]=Z cyclically."""
    pieces = [
        Piece("".join(f), _unit_basis(VERTICES, f), _cyclic_table(3, (0, 1, 2)))
        for f in FACES
    ]
    return LieComposite(VERTICES, pieces)


def so4_table() -> dict[tuple[str, str], tuple[Fraction, str | None]]:
    """Brackets of all vertex pairs: face relations, opposite vertices commute."""
    out: dict[tuple[str, str], tuple[Fraction, str | None]] = {}
    for x, y, z in FACES:
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            out[(a, b)] = (Fraction(1), c)
            out[(b, a)] = (Fraction(-1), c)
    for a, b in OPPOSITE:
        out[(a, b)] = out[(b, a)] = (Fraction(0), None)
    for a in VERTICES:
        out[(a, a)] = (Fraction(0), None)
    return out


def _quaternion_mult(q: int, left: bool) -> np.ndarray:
    """Matrix of ``x -> e_q x`` (left) or ``x -> x e_q`` on the basis 1,i,j,k."""
    # products of basis units: mult[a][b] = (sign, index) of e_a e_b
    mult = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    M = mx.zeros(4)
    for b in range(4):
        s, r = mult[q][b] if left else mult[b][q]
        M[r, b] = Fraction(s)
    return M


def commuting_su2_pair() -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Two commuting triples with ``[J_a, J_(a+1)] = J_(a+2)`` on Q^4.

    ``J_a`` is half of left multiplication by a unit quaternion and ``K_a``
    minus half of right multiplication.
    """
    half = Fraction(1, 2)
    J = [_quaternion_mult(q, True) * half for q in (1, 2, 3)]
    K = [_quaternion_mult(q, False) * -half for q in (1, 2, 3)]
    return J, K


# each vertex uses the triple index shared with its opposite vertex
AXIS = {"A": 0, "F": 0, "B": 1, "D": 1, "C": 2, "E": 2}


def solve_octahedron_model() -> tuple[dict[str, tuple[int, int]], MatrixRep]:
    """Signs ``(s_v, t_v)`` making ``T(v) = s_v J_a + t_v K_a`` an so(4) rep.

    Every face relation reduces to sign products, so the solution set is
    found by enumerating the 2**12 sign vectors; the first one (in a fixed
    order) whose opposite-vertex operators are independent is returned.
    """
    J, K = commuting_su2_pair()
    c = octahedron()
    for signs in product((1, -1), repeat=12):
        st = {v: (signs[2 * k], signs[2 * k + 1]) for k, v in enumerate(VERTICES)}
        if any(st[a][0] * st[b][1] == st[b][0] * st[a][1] for a, b in OPPOSITE):
            continue
        T = MatrixRep(4, {v: st[v][0] * J[AXIS[v]] + st[v][1] * K[AXIS[v]]
                          for v in VERTICES})
        if check_representation(c, T).passed:
            return st, T
    raise RuntimeError("no sign assignment closes the faces")


def _fixture_path():
    return resources.files("wittcomp").joinpath("data/octahedron_so4.json")


def model_to_json(signs: Mapping[str, tuple[int, int]], T: MatrixRep) -> str:
    data = {
        "signs": {v: list(signs[v]) for v in VERTICES},
        "matrices": {v: mx.to_grid(T.assignment[v]) for v in VERTICES},
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def octahedron_model() -> MatrixRep:
    """The stored so(4) model representation (see scripts/solve_octahedron.py)."""
    data = json.loads(_fixture_path().read_text())
    return MatrixRep(4, {v: mx.from_grid(g) for v, g in data["matrices"].items()})


@dataclass
class OctahedronReport:
    central: dict[str, bool]
    irreducible: bool
    lambdas: dict[str, Fraction] | None
    so4_relations: bool | None
    note: str = ""

    @property
    def passed(self) -> bool:
        return (all(self.central.values()) and self.irreducible
                and self.lambdas is not None and bool(self.so4_relations))

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "central": self.central,
            "irreducible": self.irreducible,
            "lambdas": None if self.lambdas is None
            else {v: str(x) for v, x in sorted(self.lambdas.items())},
            "so4_relations": self.so4_relations,
            "note": self.note,
        }


def recover_lambdas(T: MatrixRep) -> tuple[dict[str, Fraction] | None, str]:
    """Scalars ``l_v`` with ``[T(x), T(y)] = T(z) - l_z`` on every face relation.

    Shifting by scalars leaves commutators unchanged, so each face relation
    pins down the shift of its right-hand vertex; each vertex is reached
    from two faces and both values must agree.
    """
    seen: dict[str, Fraction] = {}
    for x, y, z in FACES:
        for a, b, r in ((x, y, z), (y, z, x), (z, x, y)):
            d = T.assignment[r] - mx.comm(T.assignment[a], T.assignment[b])
            s = mx.scalar_part(d)
            if s is None:
                return None, f"T({r}) - [T({a}), T({b})] is not scalar"
            if seen.setdefault(r, s) != s:
                return None, f"inconsistent shift for {r}"
    return seen, ""


def verify_octahedron_proposition(T: MatrixRep) -> OctahedronReport:
    vs = T.assignment
    central = {}
    for a, b in OPPOSITE:
        C = mx.comm(vs[a], vs[b])
        central[a + b] = all(mx.is_zero(mx.comm(C, vs[v])) for v in VERTICES)
    irreducible = burnside_irreducible([vs[v] for v in VERTICES])
    if not irreducible:
        return OctahedronReport(central, False, None, None, "reducible: no shifts extracted")
    lambdas, note = recover_lambdas(T)
    if lambdas is None:
        return OctahedronReport(central, True, None, None, note)
    I = mx.eye(T.m)
    shifted = {v: vs[v] - lambdas[v] * I for v in VERTICES}
    ok = all(
        mx.equal(mx.comm(shifted[a], shifted[b]),
                 mx.zeros(T.m) if r is None else s * shifted[r])
        for (a, b), (s, r) in so4_table().items()
    )
    return OctahedronReport(central, True, lambdas, ok)


# -- truncated Witt composites ----------------------------------------------------------

RESOLVED_CURRENT_RULE = CURRENT_RULES[2]


def e_label(i: int) -> str:
    return f"e{i}"


def f_label(j: int) -> str:
    return f"f{j}"


def truncated_witt_composite(K: int, extended: bool = False,
                             rule: CurrentRule = RESOLVED_CURRENT_RULE) -> LieComposite:
    """Pieces p+ (e_i, i >= -1) and p- (e_i, i <= 1) with indices in [-K, K].

    A bracket is recorded only when its value stays in the piece's window
    (or vanishes).  With ``extended`` the pieces also hold ``f_j`` for
    ``j >= 0`` (resp. ``j <= 0``), with ``[e_i, f_j]`` from ``rule`` and
    abelian currents.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    labels = [e_label(i) for i in range(-K, K + 1)]
    if extended:
        labels += [f_label(j) for j in range(-K, K + 1)]
    pieces = []
    for name, e_range, f_range in (
        ("p+", range(-1, K + 1), range(0, K + 1)),
        ("p-", range(-K, 2), range(-K, 1)),
    ):
        elems = [("e", i) for i in e_range]
        if extended:
            elems += [("f", j) for j in f_range]
        pos = {el: k for k, el in enumerate(elems)}
        k = len(elems)
        table = {}
        for (ka, a), (kb, b) in product(elems, repeat=2):
            if ka == "e" and kb == "e":
                coef, target = a - b, ("e", a + b)
            elif ka == "f" and kb == "f":
                coef, target = 0, None
            elif ka == "e":
                coef, target = rule.coef(a, b), ("f", rule.target(a, b))
            else:
                coef, target = -rule.coef(b, a), ("f", rule.target(b, a))
            v = _zero_vec(k)
            if coef:
                if target not in pos:
                    continue
                v[pos[target]] = Fraction(coef)
            table[(pos[(ka, a)], pos[(kb, b)])] = v
        names = [e_label(i) if t == "e" else f_label(i) for t, i in elems]
        pieces.append(Piece(name, _unit_basis(labels, names), table, tuple(names)))
    return LieComposite(tuple(labels), pieces,
                        window=f"indices in [-{K}, {K}]; brackets leaving the window are undefined")


def witt_window_rep(w: WeightParam, N: int, K: int, extended: bool = False) -> MatrixRep:
    """Composed representation truncated to degrees ``0..N`` of V_h.

    Products are exact on columns ``n <= N - sum of upward reaches``.
    """
    w = _as_weight(w)
    rho = witt_assignment(w)
    ops = {e_label(i): rho.rho(w, i) for i in range(-K, K + 1)}
    if extended:
        ops.update({f_label(j): current(w, j) for j in range(-K, K + 1)})
    reach = {l: max(op.max_shift(), 0) for l, op in ops.items()}

    def columns(labels):
        return range(max(N - sum(reach[l] for l in labels) + 1, 0))

    return MatrixRep(N + 1, {l: truncate_to_matrix(op, N) for l, op in ops.items()},
                     columns, tuple(range(N + 1)))
