"""Small composites cut out of matrix Lie algebras, with sample representations."""
import random
from fractions import Fraction as F

import numpy as np

from wittcomp import matrices as mx
from wittcomp.composite import LieComposite, MatrixRep, Piece


def E(k, i, j):
    m = mx.zeros(k)
    m[i, j] = F(1)
    return m


def _algebras():
    gl2 = {"E11": E(2, 0, 0), "E12": E(2, 0, 1), "E21": E(2, 1, 0), "E22": E(2, 1, 1)}
    gl2_pieces = [
        ("sl2", [{"E12": 1}, {"E21": 1}, {"E11": 1, "E22": -1}]),
        ("b+", [{"E11": 1}, {"E22": 1}, {"E12": 1}]),
        ("b-", [{"E11": 1}, {"E22": 1}, {"E21": 1}]),
    ]
    so3 = {"X": E(3, 2, 1) - E(3, 1, 2), "Y": E(3, 0, 2) - E(3, 2, 0), "Z": E(3, 1, 0) - E(3, 0, 1)}
    so3_pieces = [("so3", [{"X": 1}, {"Y": 1}, {"Z": 1}])]
    heis = {"p": E(3, 0, 1), "q": E(3, 1, 2), "c": E(3, 0, 2), "t": E(3, 0, 0) - E(3, 2, 2)}
    heis_pieces = [
        ("heis", [{"p": 1}, {"q": 1}, {"c": 1}]),
        ("pt", [{"p": 1}, {"t": 1}, {"c": 1}]),
        ("qt", [{"q": 1}, {"t": 1}, {"c": 1}]),
    ]
    aff = {"a": E(2, 0, 0), "b": E(2, 0, 1)}
    aff_pieces = [("aff", [{"a": 1}, {"b": 1}])]
    return [(gl2, gl2_pieces), (so3, so3_pieces), (heis, heis_pieces), (aff, aff_pieces)]


def matrix_composite(mats, piece_specs):
    """Composite on the labels of ``mats``; each piece's bracket is read off
    from matrix commutators of its spanning combinations."""
    labels = tuple(sorted(mats))
    pieces = []
    for name, combos in piece_specs:
        B = mx.zeros(len(labels), len(combos))
        for k, combo in enumerate(combos):
            for l, c in combo.items():
                B[labels.index(l), k] = F(c)
        Y = [sum((B[i, k] * mats[l] for i, l in enumerate(labels)), mx.zeros(mats[labels[0]].shape[0]))
             for k in range(len(combos))]
        flat = np.stack([y.flatten() for y in Y], axis=1)
        table = {}
        for a in range(len(Y)):
            for b in range(len(Y)):
                coords = mx.solve(flat, mx.comm(Y[a], Y[b]).flatten())
                assert coords is not None, "piece is not a subalgebra"
                table[(a, b)] = coords
        pieces.append(Piece(name, B, table))
    return LieComposite(labels, pieces)


def random_instance(rng: random.Random):
    mats, specs = rng.choice(_algebras())
    chosen = [s for s in specs if rng.random() < 0.7] or [specs[0]]
    c = matrix_composite(mats, chosen)
    k = mats[c.labels[0]].shape[0]
    kind = rng.choice(["natural", "conjugate", "padded", "zero", "scaled", "corrupt", "random"])
    rand = lambda: F(rng.randint(-3, 3), rng.randint(1, 3))
    if kind == "zero":
        return c, MatrixRep(k, {l: mx.zeros(k) for l in c.labels}), kind
    if kind == "random":
        return c, MatrixRep(k, {l: mx.mat([[rand() for _ in range(k)] for _ in range(k)])
                                for l in c.labels}), kind
    assign = {l: mats[l].copy() for l in c.labels}
    if kind == "conjugate":
        P = mx.eye(k)
        for i in range(k):
            for j in range(i + 1, k):
                P[i, j] = rand()
        Pinv = np.stack([mx.solve(P, mx.eye(k)[:, col]) for col in range(k)], axis=1)
        assign = {l: P.dot(a).dot(Pinv) for l, a in assign.items()}
    elif kind == "padded" and k < 5:
        pad = rng.randint(1, 5 - k)
        m = k + pad
        assign = {l: np.block([[a, mx.zeros(k, pad)], [mx.zeros(pad, k), mx.zeros(pad)]])
                  for l, a in assign.items()}
        return c, MatrixRep(m, assign), kind
    elif kind == "scaled":
        s = rand()
        assign = {l: a * s for l, a in assign.items()}
    elif kind == "corrupt":
        l = rng.choice(c.labels)
        i, j = rng.randrange(k), rng.randrange(k)
        assign[l][i, j] += F(1)
    return c, MatrixRep(k, assign), kind
