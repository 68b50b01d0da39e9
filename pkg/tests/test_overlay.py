import json
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wittcomp import matrices as mx
from wittcomp.composite import LieComposite, MatrixRep, Piece, check_representation
from wittcomp.overlay import (
    Decomposition, DecompositionError, band_candidates, build_LC, is_overlay_rep,
    theorem_1C_window,
)
from wittcomp.witt import WeightParam

from random_composites import E, matrix_composite, random_instance


def trivial_overlay(c, T):
    lc = build_LC(Decomposition.trivial(T.m))
    return is_overlay_rep(c, T, lc, {p.name: 0 for p in c.pieces})


def test_build_LC_examples():
    assert build_LC(Decomposition.trivial(2)).dims() == [4]
    lc = build_LC(Decomposition.bands(2, [(0,), (1,)]))
    assert lc.dims() == [1, 1]
    assert [mx.to_grid(b[0]) for b in (lc.piece_basis(0), lc.piece_basis(1))] == [
        [["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]]
    assert build_LC(Decomposition.bands(3, [(0, 1), (2,)])).dims() == [4, 1]


def test_build_LC_non_direct_rejected():
    d = Decomposition(2, [mx.eye(2), mx.mat([[1], [1]])])
    assert not d.direct
    with pytest.raises(DecompositionError, match="non-direct"):
        build_LC(d)


def test_decomposition_must_span():
    with pytest.raises(DecompositionError):
        Decomposition(3, [mx.mat([[1], [0], [0]])])


def test_skew_decomposition_projectors():
    d = Decomposition(2, [mx.mat([[1], [0]]), mx.mat([[1], [1]])])
    lc = build_LC(d)
    P0, P1 = lc.projectors
    assert mx.equal(P0 + P1, mx.eye(2)) and mx.is_zero(P0.dot(P1))
    for i, dim in enumerate(lc.dims()):
        assert len(lc.piece_basis(i)) == dim
        assert all(lc.contains(i, X) for X in lc.piece_basis(i))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_piece_dimensions_are_squares(sizes):
    m = sum(sizes)
    bands, start = [], 0
    for s in sizes:
        bands.append(tuple(range(start, start + s)))
        start += s
    lc = build_LC(Decomposition.bands(m, bands))
    assert lc.dims() == [s * s for s in sizes]
    assert [len(lc.piece_basis(i)) for i in range(len(sizes))] == lc.dims()


def block_example():
    # two aff(1) pieces acting on separate diagonal blocks of a 4-dim space
    mats = {"a": E(2, 0, 0), "b": E(2, 0, 1), "c": E(2, 0, 0), "d": E(2, 0, 1)}
    c = matrix_composite(mats, [("P", [{"a": 1}, {"b": 1}]), ("Q", [{"c": 1}, {"d": 1}])])
    Z2 = mx.zeros(2)
    T = MatrixRep(4, {
        "a": np.block([[E(2, 0, 0), Z2], [Z2, Z2]]), "b": np.block([[E(2, 0, 1), Z2], [Z2, Z2]]),
        "c": np.block([[Z2, Z2], [Z2, E(2, 0, 0)]]), "d": np.block([[Z2, Z2], [Z2, E(2, 0, 1)]]),
    })
    return c, T, build_LC(Decomposition.bands(4, [(0, 1), (2, 3)]))


def test_block_example_and_swap():
    c, T, lc = block_example()
    assert is_overlay_rep(c, T, lc, {"P": 0, "Q": 1}).passed
    rep = is_overlay_rep(c, T, lc, {"P": 1, "Q": 0})
    assert not rep.passed and rep.containment


def test_glueing_violation():
    # a shared element whose image is not in both assigned blocks
    mats = {"x": E(2, 0, 0), "y": E(2, 0, 1), "z": E(2, 1, 1)}
    c = matrix_composite(mats, [("P", [{"x": 1}, {"y": 1}]), ("Q", [{"x": 1}, {"z": 1}])])
    T = MatrixRep(2, {"x": mx.zeros(2), "y": mx.zeros(2), "z": mx.zeros(2)})
    lc = build_LC(Decomposition.bands(2, [(0,), (1,)]))
    assert is_overlay_rep(c, T, lc, {"P": 0, "Q": 1}).passed
    T.assignment["x"] = E(2, 0, 0)
    rep = is_overlay_rep(c, T, lc, {"P": 0, "Q": 1})
    assert rep.glueing and not rep.passed


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_trivial_decomposition_equals_representation_check(seed):
    c, T, _ = random_instance(random.Random(seed))
    assert trivial_overlay(c, T).passed == check_representation(c, T).passed


def test_band_candidates():
    cands = band_candidates(3)
    assert len(cands) == 8 and cands == sorted(cands)
    assert ((0, 1, 2, 3),) in cands and ((0,), (1,), (2,), (3,)) in cands


def test_window_spin2_trivial_passes():
    w = WeightParam.parse("1")
    rep = theorem_1C_window(w, 6, 2, candidates=[[range(7)]])
    assert rep.candidates[0]["pass"]


def test_window_spin1_two_bands_deterministic():
    w = WeightParam.parse("1")
    bands = [[0, 1, 2, 3], [4, 5, 6]]
    a = theorem_1C_window(w, 6, 1, candidates=[bands]).to_json()
    b = theorem_1C_window(w, 6, 1, candidates=[bands]).to_json()
    assert a == b
    entry = json.loads(a)["candidates"][0]
    assert entry["bands"] == bands and entry["pass"] is False
    assert entry["first_violation"].startswith("p+: T(e-1)")


def test_window_search_order_independent():
    w = WeightParam.parse("3/2")
    cands = band_candidates(4)
    a = theorem_1C_window(w, 4, 2, candidates=cands)
    b = theorem_1C_window(w, 4, 2, candidates=list(reversed(cands)))
    assert a.to_json() == b.to_json()
    assert a.passing == [[[0, 1, 2, 3, 4]]]


def test_window_precondition():
    with pytest.raises(ValueError):
        theorem_1C_window(WeightParam.parse("1"), 3, 2)
    with pytest.raises(ValueError):
        theorem_1C_window(WeightParam.parse("1"), 6, 3)
