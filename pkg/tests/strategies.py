from fractions import Fraction

from hypothesis import strategies as st

from wittcomp.arith import Poly, RatFun
from wittcomp.operators import GradedOp
from wittcomp.witt import WeightParam

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-4, max_value=4)


def polys(max_degree=3):
    return st.lists(rats, max_size=max_degree + 1).map(Poly)


@st.composite
def safe_dens(draw, max_degree=2):
    """Monic denominators whose roots are negative, so no pole at n >= 0."""
    roots = draw(st.lists(st.fractions(min_value=Fraction(1, 3), max_value=9, max_denominator=6),
                          max_size=max_degree))
    return Poly.from_roots([-r for r in roots])


@st.composite
def ratfuns(draw, max_degree=3):
    return RatFun(draw(polys(max_degree)), draw(safe_dens()))


@st.composite
def nonzero_ratfuns(draw):
    f = draw(ratfuns())
    return f if not f.is_zero() else RatFun(1)


weights = st.sampled_from(["1/2", "1", "3/2", "7/3", "5", "2/3", "-1/3"]).map(WeightParam.parse)


@st.composite
def atoms(draw):
    kind = draw(st.sampled_from(["z", "d", "xi", "qr", "cur"]))
    if kind == "z":
        return GradedOp.mul_z(draw(st.integers(0, 3)))
    if kind == "d":
        return GradedOp.diff(draw(st.integers(0, 3)))
    if kind == "xi":
        return GradedOp.fun_xi(draw(ratfuns(2)))
    from wittcomp.witt import current, qr_symmetry
    w = draw(weights)
    k = draw(st.integers(-3, 3))
    return qr_symmetry(w, k) if kind == "qr" else current(w, k)


@st.composite
def graded_ops(draw, max_terms=3):
    """Sums of short products of generators, scaled by random rationals."""
    out = GradedOp.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        term = draw(atoms())
        if draw(st.booleans()):
            term = term @ draw(atoms())
        out = out + term.scale(draw(rats))
    return out
