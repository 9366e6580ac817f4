"""Univariate and piecewise polynomials with AlgNum coefficients."""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .algnum import AlgNum, FieldMismatch, as_algnum, sign, sqrt

__all__ = ["Poly", "PiecewisePoly", "integrate", "quad_roots", "OutOfDomain"]


class OutOfDomain(ValueError):
    pass


class Poly:
    """Dense polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [as_algnum(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[AlgNum, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def linear(cls, c0, c1) -> Poly:
        """``c0 + c1*t``."""
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> AlgNum:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else AlgNum.rational(0)

    @property
    def lead(self) -> AlgNum:
        return self.coeff(self.degree)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, t) -> AlgNum:
        acc = AlgNum.rational(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Poly:
        other = other if isinstance(other, Poly) else Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        other = other if isinstance(other, Poly) else Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = as_algnum(other)
            return Poly(c * a for a in self.coeffs)
        if not self or not other:
            return Poly()
        out = [AlgNum.rational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Poly:
        c = as_algnum(c)
        return Poly(a / c for a in self.coeffs)

    def __pow__(self, n: int) -> Poly:
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> Poly:
        return Poly(c * i for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> Poly:
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose(self, other: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [AlgNum.rational(0)] * max(len(rem) - other.degree, 1)
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            c = rem[-1] / other.lead
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[i + shift] = rem[i + shift] - c * b
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(quot), Poly(rem)

    def integral(self, a, b) -> AlgNum:
        F = self.antiderivative()
        return F(b) - F(a)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: Sequence) -> Poly:
        return cls(AlgNum.from_json(c) for c in obj)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def quad_roots(p: Poly) -> list[AlgNum]:
    """Real roots of a polynomial of degree at most two, ascending.

    A double root is listed twice.  Irrational roots come back in the
    quadratic (or, over a quadratic base field, biquadratic) extension that
    contains them.
    """
    if not p:
        raise ValueError("the zero polynomial has no finite root set")
    if p.degree > 2:
        raise ValueError(f"quad_roots needs degree <= 2, got {p.degree}")
    if p.degree == 0:
        return []
    if p.degree == 1:
        return [-p.coeff(0) / p.coeff(1)]
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    s = sign(disc)
    if s < 0:
        return []
    if s == 0:
        r = -b / (2 * a)
        return [r, r]
    root = sqrt(disc)
    try:
        r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
    except FieldMismatch:
        # base field and sqrt(disc) differ: widen into the compositum explicitly
        f = b.field.compositum(a.field).compositum(root.field)
        a, b, root = a.lift(f), b.lift(f), root.lift(f)
        r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
    return sorted([r1, r2])


class PiecewisePoly:
    """Continuous function given by polynomial pieces on consecutive intervals."""

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints: Sequence, pieces: Sequence[Poly]) -> None:
        bps = tuple(as_algnum(t) for t in breakpoints)
        pcs = tuple(pieces)
        if len(bps) != len(pcs) + 1 or not pcs:
            raise ValueError("need k+1 breakpoints for k >= 1 pieces")
        for lo, hi in zip(bps, bps[1:]):
            if not lo < hi:
                raise ValueError(f"breakpoints must increase strictly: {lo} !< {hi}")
        for i in range(1, len(pcs)):
            t = bps[i]
            if pcs[i - 1](t) != pcs[i](t):
                raise ValueError(f"pieces disagree at breakpoint {t}")
        self.breakpoints = bps
        self.pieces = pcs

    @property
    def domain(self) -> tuple[AlgNum, AlgNum]:
        return self.breakpoints[0], self.breakpoints[-1]

    def intervals(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    def _check(self, t) -> AlgNum:
        t = as_algnum(t)
        lo, hi = self.domain
        if t < lo or t > hi:
            raise OutOfDomain(f"{t} outside [{lo}, {hi}]")
        return t

    def piece_index(self, t) -> int:
        """Index of the piece whose closed interval holds ``t`` (leftmost)."""
        t = self._check(t)
        i = bisect_left(self.breakpoints, t)
        return min(max(i - 1, 0), len(self.pieces) - 1)

    def __call__(self, t) -> AlgNum:
        return self.pieces[self.piece_index(t)](t)

    def integrate(self, a, b) -> AlgNum:
        a, b = self._check(a), self._check(b)
        if b < a:
            return -self.integrate(b, a)
        total = AlgNum.rational(0)
        for lo, hi, p in self.intervals():
            left = lo if lo > a else a
            right = hi if hi < b else b
            if left < right:
                total = total + p.integral(left, right)
        return total

    def derivative(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, [p.derivative() for p in self.pieces])

    def map(self, fn) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, [fn(p) for p in self.pieces])

    def __mul__(self, c) -> PiecewisePoly:
        return self.map(lambda p: p * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PiecewisePoly)
            and self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
        )

    def to_json(self) -> dict:
        return {
            "breakpoints": [t.to_json() for t in self.breakpoints],
            "pieces": [p.to_json() for p in self.pieces],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PiecewisePoly:
        return cls(
            [AlgNum.from_json(t) for t in obj["breakpoints"]],
            [Poly.from_json(p) for p in obj["pieces"]],
        )

    def __repr__(self) -> str:
        body = "; ".join(f"[{lo}, {hi}]: {p}" for lo, hi, p in self.intervals())
        return f"PiecewisePoly({body})"


def integrate(f: PiecewisePoly, a, b) -> AlgNum:
    """Exact definite integral of ``f`` over ``[a, b]``."""
    return f.integrate(a, b)
