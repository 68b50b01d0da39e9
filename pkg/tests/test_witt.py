import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from wittcomp.operators import GradedOp, commutator
from wittcomp.witt import (
    CURRENT_RULES, DEFAULT_H_SAMPLE, WeightError, WeightParam, certify_theorem_1A_in_h,
    current, qr_symmetry, rule_satisfies_jacobi, sl2_relations, sl2_triple,
    verify_theorem_1A, verify_theorem_1B, witt_assignment, witt_defect,
)

import oracle

WEIGHTS = [WeightParam.parse(h) for h in DEFAULT_H_SAMPLE]
Z, D = GradedOp.mul_z(1), GradedOp.diff(1)


def test_weight_constraint():
    for bad in ("0", "-1/2", "-3"):
        with pytest.raises(WeightError):
            WeightParam.parse(bad)
    assert WeightParam.parse("1/2").q_R is None
    assert WeightParam.parse("1").q_R == 1
    assert WeightParam.parse("3/2").q_R == F(1, 2)


@given(st.fractions(min_value=F(-50), max_value=F(50), max_denominator=30))
def test_qr_round_trip(h):
    try:
        w = WeightParam(h)
    except WeightError:
        return
    if w.qr_defined:
        assert (1 / w.q_R + 1) / 2 == h
        assert WeightParam.from_qr(w.q_R) == w


@pytest.mark.parametrize("w", WEIGHTS, ids=DEFAULT_H_SAMPLE)
def test_sl2_relations(w):
    assert all(sl2_relations(w).values())


def test_sl2_examples():
    lm1, l0, lp1 = sl2_triple(WeightParam.parse("1/2"))
    assert l0.apply_monomial(3) == {3: F(7, 2)}
    for h in ("1/2", "5"):
        lm1, l0, lp1 = sl2_triple(WeightParam.parse(h))
        assert commutator(lp1, lm1) == l0.scale(2)
        assert commutator(lm1, l0) == -lm1
        # oracle: (z d^2 + 2h d)(z p) - z (z d^2 + 2h d) p = 2 (z d + h) p
        ref = oracle.sl2(h)
        for n in range(10):
            assert commutator(lp1, lm1).apply_monomial(n) == oracle.bracket_on(ref[2], ref[0], n)


def test_qr_symmetry_examples():
    for w in WEIGHTS:
        assert qr_symmetry(w, 1) == Z
        assert qr_symmetry(w, 0) == GradedOp.fun_xi(RatFun_nu_plus(w.h))
        assert qr_symmetry(w, -1) == sl2_triple(w)[2]
        for n in range(8):
            assert qr_symmetry(w, -1).apply_monomial(n) == (
                {n - 1: n * (n - 1 + 2 * w.h)} if n * (n - 1 + 2 * w.h) else {})


def RatFun_nu_plus(c):
    from wittcomp.arith import Poly, RatFun
    return RatFun(Poly((c, 1)))


@pytest.mark.parametrize("w", WEIGHTS, ids=DEFAULT_H_SAMPLE)
def test_families_match_oracle(w):
    for k in range(-4, 5):
        for n in range(12):
            assert qr_symmetry(w, k).apply_monomial(n) == oracle.spin2(w.h, k)(n)
            assert current(w, k).apply_monomial(n) == oracle.spin1(w.h, k)(n)


def test_current_examples():
    w = WeightParam.parse("1")
    assert current(w, 0) == GradedOp.identity()
    assert current(w, 2) == GradedOp.diff(2)
    for n in range(6):
        assert current(w, -1).apply_monomial(n) == {n + 1: F(1, n + 2)}


def test_witt_assignment_resolution():
    for w in WEIGHTS:
        rho = witt_assignment(w)
        assert (rho.negate_index, rho.sign, rho.sign_convention) == (True, 1, "flipped")
        assert [t[1] for t in rho.tested].count("pass") == 1
        assert [rho.rho(w, i) for i in (-1, 0, 1)] == list(sl2_triple(w))
        assert witt_defect(w, rho, 0, 0).is_zero()


def test_witt_assignment_example_bracket():
    # [rho(e_1), rho(e_2)] = -rho(e_3); difference of the two products on z^n
    # is -n(n-1)(n-2)(n-3+4h)
    for w in WEIGHTS:
        rho = witt_assignment(w)
        assert commutator(rho.rho(w, 1), rho.rho(w, 2)) == -rho.rho(w, 3)
        br = commutator(rho.rho(w, 1), rho.rho(w, 2))
        for n in range(10):
            c = -n * (n - 1) * (n - 2) * (n - 3 + 4 * w.h)
            assert br.apply_monomial(n) == ({n - 3: c} if c else {})


@pytest.mark.parametrize("w", WEIGHTS, ids=DEFAULT_H_SAMPLE)
def test_defects_match_oracle(w):
    rho = witt_assignment(w)
    for i, j in [(2, 3), (-1, 1), (2, -2), (3, -1), (-3, 2), (4, -4)]:
        D_ij = witt_defect(w, rho, i, j)
        for n in range(14):
            assert D_ij.apply_monomial(n) == oracle.witt_defect_on(w.h, i, j, n)


def test_theorem_1A_examples():
    w = WeightParam.parse("1")
    rep = verify_theorem_1A(w, 4)
    assert verify_theorem_1A(w, 5).entry(2, 3).status == "zero"
    assert rep.entry(-1, 1).status == "zero"
    assert rep.entry(2, -2).status == "nonzero"
    with pytest.raises(ValueError):
        verify_theorem_1A(w, 1)


def test_defect_2_minus_2_low_degree_values():
    # frozen from the formula oracle: low-degree values at the two weights
    # where the generic factor vanishes identically
    rho_half = witt_assignment(WeightParam.parse("1/2"))
    d = witt_defect(WeightParam.parse("1/2"), rho_half, 2, -2)
    assert d.apply_monomial(0) == {0: F(1, 4)} and d.apply_monomial(1) == {1: F(1, 4)}
    assert all(not d.apply_monomial(n) for n in range(2, 12))
    d1 = witt_defect(WeightParam.parse("1"), witt_assignment(WeightParam.parse("1")), 2, -2)
    assert d1.apply_monomial(0) == {0: F(-1)}
    assert all(not d1.apply_monomial(n) for n in range(1, 12))


def test_defect_report_antisymmetric():
    rep = verify_theorem_1A(WeightParam.parse("3/2"), 4)
    for e in rep.entries:
        assert e.defect == -rep.entry(e.j, e.i).defect


def test_defect_report_serialization():
    rep = verify_theorem_1A(WeightParam.parse("1"), 3)
    data = json.loads(rep.to_json())
    assert data["h"] == "1" and data["K"] == 3
    pairs = [(e["i"], e["j"]) for e in data["entries"]]
    assert pairs == sorted(pairs)
    assert set(data["entries"][0]) >= {"i", "j", "status", "defect"}
    lines = rep.to_csv().splitlines()
    assert lines[0] == "i,j,status" and len(lines) == 1 + len(rep.entries)


def test_grading_consistency():
    for w in WEIGHTS:
        for k in range(1, 5):
            prod = qr_symmetry(w, -k) @ qr_symmetry(w, k)
            assert prod.shifts == (0,)


def test_h_certification_small_window():
    ok, bound, sample = certify_theorem_1A_in_h(2)
    assert ok and len(sample) == bound + 1


def test_theorem_1B_examples():
    w = WeightParam.parse("7/3")
    rho = witt_assignment(w)
    assert commutator(rho.rho(w, 1), current(w, 1)) == -current(w, 2)
    assert commutator(current(w, 1), current(w, 2)).is_zero()
    assert commutator(rho.rho(w, 0), current(w, 0)).is_zero()
    rep = verify_theorem_1B(w, 4)
    assert rep.passed and rep.resolved_rule == "[e_i,f_j] = -j f_(i+j)"


def test_printed_rule_fails_jacobi():
    printed, plus, minus = CURRENT_RULES
    ok, witness = rule_satisfies_jacobi(printed, 3)
    assert not ok and witness == (-3, -2, -3)
    # [e_a,[e_b,f_c]] - [e_b,[e_a,f_c]] = c(b-a) f_(a+b+c) under +j, opposite
    # in sign to (a-b)[e_(a+b), f_c]; only -j is consistent
    assert not rule_satisfies_jacobi(plus, 3)[0]
    assert rule_satisfies_jacobi(minus, 3)[0]
