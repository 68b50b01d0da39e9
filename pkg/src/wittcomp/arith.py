"""Exact rationals, univariate polynomials and rational functions in ``nu``.

Every coefficient in the package is a :class:`fractions.Fraction`; there is
no floating point path.  Polynomials and rational functions are immutable and
kept in canonical form, so ``==`` is structural equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


def rat_normalize(num: int, den: int) -> Fraction:
    """Return ``num/den`` in lowest terms with a positive denominator."""
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals are rejected."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    num, _, den = text.partition("/")
    return rat_normalize(int(num), int(den) if den else 1)


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


class Poly:
    """Polynomial in ``nu``; ``coeffs[i]`` is the coefficient of ``nu**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def nu(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        """Monic polynomial ``prod (nu - r)``."""
        p = cls.const(1)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quo[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # -- evaluation and substitution ----------------------------------------
    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k) -> "Poly":
        """Return ``p(nu + k)`` (Taylor shift via Horner)."""
        if k == 0 or self.degree < 1:
            return self
        step = Poly((Fraction(k), 1))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * step + Poly.const(c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def squarefree(self) -> "Poly":
        return self.divmod(self.gcd(self.derivative()))[0].monic()

    def sturm_sequence(self) -> list["Poly"]:
        seq = [self, self.derivative()]
        while not seq[-1].is_zero():
            seq.append(-seq[-2].divmod(seq[-1])[1])
        return seq[:-1]

    def cauchy_bound(self) -> int:
        """Integer bound on the absolute value of every real root."""
        lead = abs(self.lead)
        return 1 + int(max((abs(c) for c in self.coeffs[:-1]), default=0) / lead)

    def integer_roots(self, lo: int) -> list[int]:
        """All integer roots ``n >= lo``, by Sturm-sequence bisection."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        if self.degree == 0:
            return []
        p = self.squarefree()
        hi = p.cauchy_bound()
        if lo > hi:
            return []
        lo = max(lo, -hi)
        seq = p.sturm_sequence()
        def changes(x) -> int:
            signs = [v for v in (q(x) for q in seq) if v != 0]
            return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))

        def at(k: int):
            # a point strictly between k and k + 1 that is not a root
            x = k + Fraction(1, 2)
            while p(x) == 0:
                x += Fraction(1, 1 << 20)
            return x

        roots: list[int] = []

        def search(a: int, b: int, va: int, vb: int) -> None:
            # integers in (a, b] lie in (at(a), at(b)); va - vb counts roots there
            if va - vb == 0:
                return
            if b - a == 1:
                if p(b) == 0:
                    roots.append(b)
                return
            mid = (a + b) // 2
            vm = changes(at(mid))
            search(a, mid, va, vm)
            search(mid, b, vm, vb)

        a, b = lo - 1, hi
        search(a, b, changes(at(a)), changes(at(b)))
        return roots

    # -- rendering ------------------------------------------------------------
    def render(self, var: str = "nu") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def falling_factorial(k: int) -> Poly:
    """``nu (nu - 1) ... (nu - k + 1)``."""
    return Poly.from_roots(range(k))


def rising_product(start, k: int) -> Poly:
    """``(nu + start)(nu + start + 1) ... (nu + start + k - 1)``."""
    start = Fraction(start)
    return Poly.from_roots(-(start + j) for j in range(k))


class RatFun:
    """Rational function ``num/den`` in ``nu``.

    Canonical form: ``den`` monic, ``gcd(num, den) = 1``, zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | int | Fraction = 0, den: Poly | int | Fraction = 1):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
        lc = den.lead
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFun":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def poly(cls, p: Poly) -> "RatFun":
        return cls._raw(p, Poly.const(1)) if p else cls()

    @classmethod
    def nu(cls) -> "RatFun":
        return cls.poly(Poly.nu())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == RatFun(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return RatFun(other) - self

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = Fraction(other)
            if other == 0:
                return RatFun()
            return RatFun._raw(self.num * other, self.den)
        if self.is_zero() or other.is_zero():
            return RatFun()
        # cross-cancel keeps intermediate degrees small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        a_num = self.num.divmod(g1)[0] if g1.degree > 0 else self.num
        b_den = other.den.divmod(g1)[0] if g1.degree > 0 else other.den
        b_num = other.num.divmod(g2)[0] if g2.degree > 0 else other.num
        a_den = self.den.divmod(g2)[0] if g2.degree > 0 else self.den
        num, den = a_num * b_num, a_den * b_den
        lc = den.lead
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFun._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun(other)
        return self * other.inverse()

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise PoleError(f"pole at nu = {x}")
        return self.num(x) / d

    def shift(self, k) -> "RatFun":
        """Return ``f(nu + k)``; canonical form is preserved by translation."""
        if k == 0:
            return self
        return RatFun._raw(self.num.shift(k), self.den.shift(k))

    def render(self, var: str = "nu") -> str:
        """``(num)/(den)``; both parts are always parenthesized."""
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __repr__(self) -> str:
        return f"RatFun({self.render()})"


def ratfun_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    """Binary arithmetic by name (``add``, ``sub``, ``mul``, ``div``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfun_eval(f: RatFun, x) -> Fraction:
    return f(x)


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    """Lagrange interpolation through distinct abscissae."""
    out = Poly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = Poly.const(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * Poly((-xj, 1)) * (1 / (xi - xj))
        out = out + basis
    return out
