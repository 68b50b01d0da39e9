"""Formula-level reference: operators as functions ``n -> {degree: coeff}``.

Nothing here touches the package's operator calculus; each family is
transcribed straight from its action on a monomial.
"""
from fractions import Fraction as F


def falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def rising(x, k):
    out = F(1)
    for t in range(k):
        out *= x + t
    return out


def spin2(h, k):
    """Family index ``k``: lowers by ``|k|`` for ``k <= 0``, raises by ``k`` otherwise."""
    h = F(h)

    def act(n):
        if k <= 0:
            j = -k
            c = falling(n, j) * (n - j + h * (j + 1))
            return {n - j: F(c)} if c else {}
        c = (n + h * (k + 1)) / rising(n + 2 * h, k)
        return {n + k: c} if c else {}
    return act


def spin1(h, i):
    h = F(h)

    def act(n):
        if i >= 0:
            c = falling(n, i)
            return {n - i: F(c)} if c else {}
        return {n - i: 1 / rising(n + 2 * h, -i)}
    return act


def sl2(h):
    """``z``, ``z d + h``, ``z d^2 + 2h d`` acting on ``z^n``."""
    h = F(h)
    lm1 = lambda n: {n + 1: F(1)}
    l0 = lambda n: {n: n + h}
    lp1 = lambda n: {n - 1: F(n * (n - 1 + 2 * h))} if n * (n - 1 + 2 * h) else {}
    return lm1, l0, lp1


def rho(h, i):
    """Abstract ``e_i`` under the resolved dictionary: family index ``-i``."""
    return spin2(h, -i)


def apply_vec(act, vec):
    out = {}
    for n, c in vec.items():
        for m, d in act(n).items():
            out[m] = out.get(m, 0) + c * d
    return {m: c for m, c in out.items() if c}


def combine(*terms):
    """``sum s * vec`` over ``(s, vec)`` pairs."""
    out = {}
    for s, vec in terms:
        for m, c in vec.items():
            out[m] = out.get(m, 0) + s * c
    return {m: c for m, c in out.items() if c}


def bracket_on(a, b, n):
    v = {n: F(1)}
    return combine((1, apply_vec(a, apply_vec(b, v))), (-1, apply_vec(b, apply_vec(a, v))))


def witt_defect_on(h, i, j, n):
    v = {n: F(1)}
    return combine((1, bracket_on(rho(h, i), rho(h, j), n)),
                   (-(i - j), apply_vec(rho(h, i + j), v)))
