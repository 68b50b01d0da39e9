"""Graded shift operators on the polynomial space C[z].

An operator is a finite sum of shift components ``d -> c_d(nu)`` acting on
monomials by ``z^n -> sum_d c_d(n) z^(n+d)``.  This covers multiplication by
``z^k``, ``d^k/dz^k``, functions of the Euler operator ``xi = z d/dz`` and
every product of those.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .arith import Poly, PoleError, RatFun, falling_factorial


class WellFormednessError(ValueError):
    """An operator would hit a pole or leave C[z] at some degree n >= 0."""


class Coeff:
    """Coefficient sequence ``n -> c(n)`` on degrees ``n >= lo``.

    Stored as explicit values for ``lo <= n < lo + len(head)`` followed by a
    rational function ``f`` valid from there on.  Composition with a shift
    that annihilates low monomials leaves removable singularities (zero
    times pole) in the naive rational product; the head records the true
    values there.  Canonical form pops head entries that ``f`` reproduces,
    so equality is structural.
    """

    __slots__ = ("f", "lo", "head")

    def __init__(self, f: RatFun, lo: int, head: Iterable = ()):
        head = [Fraction(v) for v in head]
        while head:
            n = lo + len(head) - 1
            if f.den(n) == 0 or f(n) != head[-1]:
                break
            head.pop()
        self.f, self.lo, self.head = f, lo, tuple(head)

    @property
    def start(self) -> int:
        return self.lo + len(self.head)

    def value(self, n: int) -> Fraction:
        k = n - self.lo
        if k < 0:
            raise ValueError(f"degree {n} is below the coefficient's domain")
        return self.head[k] if k < len(self.head) else self.f(n)

    def is_zero(self) -> bool:
        return self.f.is_zero() and not any(self.head)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Coeff) and self.lo == other.lo
                and self.f == other.f and self.head == other.head)

    def __hash__(self) -> int:
        return hash((self.f, self.lo, self.head))

    def __add__(self, other: "Coeff") -> "Coeff":
        top = max(self.start, other.start)
        head = [self.value(n) + other.value(n) for n in range(self.lo, top)]
        return Coeff(self.f + other.f, self.lo, head)

    def __neg__(self) -> "Coeff":
        return Coeff(-self.f, self.lo, (-v for v in self.head))

    def scale(self, s: Fraction) -> "Coeff":
        return Coeff(self.f * s, self.lo, (v * s for v in self.head))

    def render(self) -> str:
        out = self.f.render()
        if self.head:
            vals = ", ".join(f"n={self.lo + k}: {v}" for k, v in enumerate(self.head))
            out += f" [{vals}]"
        return out


def _domain(d: int) -> int:
    return max(0, -d)


class GradedOp:
    """Immutable finite sum of shift components.

    ``GradedOp({d: c_d})`` with rational-function coefficients validates that
    ``c_d`` has no pole at degrees ``n >= max(0, -d)`` and that negative
    shifts vanish on the monomials they would push below degree zero.
    Results of arithmetic are exact by construction and skip the check.
    """

    __slots__ = ("components",)

    def __init__(self, components: Mapping[int, RatFun] | None = None, *, check: bool = True):
        comps: dict[int, Coeff] = {}
        for d, c in (components or {}).items():
            d = int(d)
            if not isinstance(c, RatFun):
                c = RatFun(c)
            if check:
                _validate_component(d, c)
            coeff = Coeff(c, _domain(d))
            if not coeff.is_zero():
                comps[d] = coeff
        self.components: dict[int, Coeff] = dict(sorted(comps.items()))

    @classmethod
    def _from_coeffs(cls, comps: Mapping[int, Coeff]) -> "GradedOp":
        obj = object.__new__(cls)
        obj.components = dict(sorted((d, c) for d, c in comps.items() if not c.is_zero()))
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "GradedOp":
        return cls()

    @classmethod
    def identity(cls) -> "GradedOp":
        return cls({0: RatFun(1)}, check=False)

    @classmethod
    def mul_z(cls, k: int = 1) -> "GradedOp":
        if k < 0:
            raise ValueError("power of z must be nonnegative")
        return cls({k: RatFun(1)}, check=False)

    @classmethod
    def diff(cls, k: int = 1) -> "GradedOp":
        if k < 0:
            raise ValueError("order of derivative must be nonnegative")
        return cls({-k: RatFun.poly(falling_factorial(k))}, check=False)

    @classmethod
    def fun_xi(cls, f: RatFun | Poly | int | Fraction) -> "GradedOp":
        if not isinstance(f, RatFun):
            f = RatFun(f)
        return cls({0: f})

    # -- structure ------------------------------------------------------------
    @property
    def shifts(self) -> tuple[int, ...]:
        return tuple(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def max_shift(self) -> int:
        return max(self.components, default=0)

    def min_shift(self) -> int:
        return min(self.components, default=0)

    def coefficient(self, d: int) -> RatFun:
        """Rational part of the shift-``d`` component (zero if absent)."""
        c = self.components.get(d)
        return c.f if c is not None else RatFun()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOp):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(tuple(self.components.items()))

    # -- linear structure ----------------------------------------------------
    def __add__(self, other: "GradedOp") -> "GradedOp":
        out = dict(self.components)
        for d, c in other.components.items():
            out[d] = out[d] + c if d in out else c
        return GradedOp._from_coeffs(out)

    def __neg__(self) -> "GradedOp":
        return GradedOp._from_coeffs({d: -c for d, c in self.components.items()})

    def __sub__(self, other: "GradedOp") -> "GradedOp":
        return self + (-other)

    def scale(self, s) -> "GradedOp":
        s = Fraction(s)
        if s == 0:
            return GradedOp()
        return GradedOp._from_coeffs({d: c.scale(s) for d, c in self.components.items()})

    def __rmul__(self, s) -> "GradedOp":
        return self.scale(s)

    def compose(self, other: "GradedOp") -> "GradedOp":
        """``self`` after ``other``.

        Component ``(d1, c1)`` of ``self`` after ``(d2, c2)`` of ``other``
        contributes ``c2(nu) * c1(nu + d2)`` at shift ``d1 + d2`` wherever
        both factors are evaluated inside their domains, and zero where
        ``other`` sends the monomial out of ``self``'s domain.
        """
        out: dict[int, Coeff] = {}
        for d2, c2 in other.components.items():
            for d1, c1 in self.components.items():
                d = d1 + d2
                lo = _domain(d)
                top = max(c2.start, c1.start - d2, lo)
                head = []
                for n in range(lo, top):
                    if n < c2.lo or n + d2 < c1.lo:
                        head.append(Fraction(0))
                    else:
                        head.append(c2.value(n) * c1.value(n + d2))
                term = Coeff(c2.f * c1.f.shift(d2), lo, head)
                out[d] = out[d] + term if d in out else term
        return GradedOp._from_coeffs(out)

    def __matmul__(self, other: "GradedOp") -> "GradedOp":
        return self.compose(other)

    # -- action --------------------------------------------------------------
    def apply_monomial(self, n: int) -> dict[int, Fraction]:
        out = {}
        for d, c in self.components.items():
            if n >= c.lo:
                val = c.value(n)
                if val:
                    out[n + d] = val
        return out

    def apply(self, v: "VermaVec") -> "VermaVec":
        out: dict[int, Fraction] = {}
        for n, a in enumerate(v.coeffs):
            if a:
                for m, val in self.apply_monomial(n).items():
                    out[m] = out.get(m, Fraction(0)) + a * val
        return VermaVec.from_dict(out)

    def dump(self) -> str:
        """One line per shift: ``shift d: <num>/<den>``."""
        if not self.components:
            return "0"
        return "\n".join(f"shift {d}: {c.render()}" for d, c in sorted(self.components.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{d}: {c.render()}" for d, c in self.components.items())
        return f"GradedOp({{{inner}}})"


def _validate_component(d: int, c: RatFun) -> None:
    lo = _domain(d)
    if c.den.degree > 0:
        roots = c.den.integer_roots(0 if d < 0 else lo)
        if roots:
            raise WellFormednessError(f"shift {d}: coefficient has a pole at degree {roots[0]}")
    for n in range(0, -d):
        if c(n) != 0:
            raise WellFormednessError(f"shift {d}: z^{n} would be sent below degree 0")


def basic_op(kind: str, arg) -> GradedOp:
    if kind == "mul_z":
        return GradedOp.mul_z(arg)
    if kind == "diff":
        return GradedOp.diff(arg)
    if kind == "fun_xi":
        return GradedOp.fun_xi(arg)
    raise ValueError(f"unknown basic operator {kind!r}")


def op_combine(a: GradedOp, b: GradedOp, op: str, scalar=None) -> GradedOp:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "scale":
        return a.scale(scalar)
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown combinator {op!r}")


def commutator(a: GradedOp, b: GradedOp) -> GradedOp:
    return a.compose(b) - b.compose(a)


def op_equal(a: GradedOp, b: GradedOp) -> bool:
    return a == b


class VermaVec:
    """Polynomial in ``z``; ``coeffs[n]`` multiplies ``z^n``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, n: int, c=1) -> "VermaVec":
        return cls([0] * n + [c])

    @classmethod
    def from_dict(cls, d: Mapping[int, Fraction]) -> "VermaVec":
        if not d:
            return cls()
        cs = [Fraction(0)] * (max(d) + 1)
        for n, c in d.items():
            cs[n] = c
        return cls(cs)

    def __eq__(self, other) -> bool:
        return isinstance(other, VermaVec) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "VermaVec") -> "VermaVec":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return VermaVec(x + y for x, y in zip(a, b))

    def __sub__(self, other: "VermaVec") -> "VermaVec":
        return self + VermaVec(-c for c in other.coeffs)

    def render(self) -> str:
        """Text form such as ``7/2*z^3 - z + 1``; ``0`` for the zero vector."""
        terms = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if not c:
                continue
            mono = "" if n == 0 else ("z" if n == 1 else f"z^{n}")
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"VermaVec({self.render()})"


def apply(a: GradedOp, v: VermaVec) -> VermaVec:
    return a.apply(v)


def truncate_to_matrix(a: GradedOp, N: int) -> np.ndarray:
    """Matrix of ``a`` on ``z^0..z^N``; outputs above degree ``N`` are dropped.

    Column ``n`` is the image of ``z^n``.  Only columns whose exact image
    stays inside the window are faithful; see :func:`interior_columns`.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    M = np.full((N + 1, N + 1), Fraction(0), dtype=object)
    for n in range(N + 1):
        for m, val in a.apply_monomial(n).items():
            if m <= N:
                M[m, n] = val
    return M


def interior_columns(N: int, *ops: GradedOp) -> range:
    """Columns on which any product of ``ops`` (in any order) is exact after
    truncation: the total upward reach must stay within degree ``N``."""
    reach = sum(max(op.max_shift(), 0) for op in ops)
    return range(0, max(N - reach + 1, 0))
