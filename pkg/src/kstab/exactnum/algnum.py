"""Exact elements of Q, Q(sqrt d) and Q(sqrt p, sqrt q).

An element is stored as rational coordinates over the product basis of the
field's radicands: ``{1}``, ``{1, sqrt d}`` or ``{1, sqrt p, sqrt q, sqrt pq}``.
Basis index ``mask`` stands for the product of the radicands whose bit is set.

Each element carries its declared field.  Rationals mix freely with
anything and an element of a subfield is lifted into the larger field, but
elements of two different quadratic fields never mix implicitly: lift both
into :meth:`Field.compositum` with :meth:`AlgNum.lift` first.  Equality and
hashing are by value, so ``1 + 0*sqrt 2 == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Union

__all__ = [
    "AlgNum",
    "Field",
    "FieldMismatch",
    "QQ",
    "as_algnum",
    "sign",
    "sqrt",
    "squarefree_decomposition",
]


class FieldMismatch(ValueError):
    """Operands live in incompatible extensions."""


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` squarefree (``n > 0``)."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    k, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return k, d * n


def _is_squarefree(n: int) -> bool:
    return n >= 2 and squarefree_decomposition(n)[0] == 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Field:
    """Q with zero, one or two adjoined square roots of squarefree integers."""

    radicands: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        r = self.radicands
        if len(r) > 2:
            raise ValueError("at most two radicands are supported")
        for d in r:
            if not isinstance(d, int) or not _is_squarefree(d):
                raise ValueError(f"radicand {d!r} is not a squarefree integer > 1")
        if len(r) == 2:
            if r[0] == r[1]:
                raise ValueError("biquadratic radicands must be distinct")
            if r[0] > r[1]:
                object.__setattr__(self, "radicands", (r[1], r[0]))

    @classmethod
    def rational(cls) -> Field:
        return cls(())

    @classmethod
    def quad(cls, d: int) -> Field:
        return cls((d,))

    @classmethod
    def biquad(cls, p: int, q: int) -> Field:
        return cls((p, q))

    @property
    def kind(self) -> str:
        return ("rational", "quad", "biquad")[len(self.radicands)]

    @property
    def dim(self) -> int:
        return 1 << len(self.radicands)

    def basis_product(self, mask: int) -> int:
        """Integer under the square root for basis element ``mask``."""
        out = 1
        for i, d in enumerate(self.radicands):
            if mask >> i & 1:
                out *= d
        return out

    def squarefree_parts(self) -> dict[int, int]:
        """Map squarefree part of each basis element to its mask."""
        return {squarefree_decomposition(self.basis_product(m))[1]: m for m in range(self.dim)}

    def contains(self, other: Field) -> bool:
        mine = self.squarefree_parts()
        return all(s in mine for s in other.squarefree_parts())

    def compositum(self, other: Field) -> Field:
        if self.contains(other):
            return self
        if other.contains(self):
            return other
        gens = sorted({d for d in self.radicands + other.radicands})
        # drop generators already produced by products of the others
        if len(gens) == 3:
            a, b, c = gens
            if squarefree_decomposition(a * b)[1] == c:
                gens = [a, b]
            elif squarefree_decomposition(a * c)[1] == b:
                gens = [a, c]
            elif squarefree_decomposition(b * c)[1] == a:
                gens = [b, c]
        if len(gens) > 2:
            raise FieldMismatch(f"compositum of {self} and {other} has degree > 4")
        return Field(tuple(gens))

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "quad":
            return {"kind": "quad", "d": self.radicands[0]}
        return {"kind": "biquad", "p": self.radicands[0], "q": self.radicands[1]}

    @classmethod
    def from_json(cls, obj: dict) -> Field:
        kind = obj.get("kind", "rational")
        if kind == "rational":
            return cls.rational()
        if kind == "quad":
            return cls.quad(int(obj["d"]))
        if kind == "biquad":
            return cls.biquad(int(obj["p"]), int(obj["q"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self) -> str:
        if not self.radicands:
            return "Q"
        return "Q(" + ", ".join(f"√{d}" for d in self.radicands) + ")"


QQ = Field()

Number = Union["AlgNum", int, Fraction]


def _sqrt_interval(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval of width 2**-bits containing sqrt(n)."""
    scale = 1 << bits
    lo = math.isqrt(n * scale * scale)
    if lo * lo == n * scale * scale:
        return Fraction(lo, scale), Fraction(lo, scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


class AlgNum:
    """Immutable exact number in a field of degree at most four."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, coords: Iterable, field: Field = QQ) -> None:
        cs = tuple(c if type(c) is Fraction else Fraction(c) for c in coords)
        if len(cs) != field.dim:
            raise ValueError(f"{field} needs {field.dim} coordinates, got {len(cs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", cs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("AlgNum is immutable")

    # --- constructors -------------------------------------------------
    @classmethod
    def rational(cls, x) -> AlgNum:
        return cls((Fraction(x),))

    @classmethod
    def quad(cls, a, b, d: int) -> AlgNum:
        """``a + b*sqrt(d)``."""
        return cls((a, b), Field.quad(d))

    @classmethod
    def biquad(cls, c0, c1, c2, c3, p: int, q: int) -> AlgNum:
        if p > q:
            p, q, c1, c2 = q, p, c2, c1
        return cls((c0, c1, c2, c3), Field.biquad(p, q))

    # --- structure ----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        """True when the value is rational, whatever the declared field."""
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def lift(self, field: Field) -> AlgNum:
        """The same value declared in the larger ``field``."""
        return AlgNum(self.coordinates_in(field), field)

    def canonical(self) -> AlgNum:
        """The same value declared in the smallest field that holds it."""
        f, cs = _normalize(self.field, self.coords)
        return self if f == self.field else AlgNum(cs, f)

    def coordinates_in(self, field: Field) -> tuple[Fraction, ...]:
        if not field.contains(self.field):
            raise FieldMismatch(f"{self.field} is not a subfield of {field}")
        target = field.squarefree_parts()
        out = [Fraction(0)] * field.dim
        for mask, c in enumerate(self.coords):
            if not c:
                continue
            n = self.field.basis_product(mask)
            sf = squarefree_decomposition(n)[1]
            tmask = target[sf]
            m = field.basis_product(tmask)
            # sqrt(n) = sqrt(n/m) * sqrt(m) with n/m a rational square
            ratio = Fraction(n, m)
            root = Fraction(math.isqrt(ratio.numerator), math.isqrt(ratio.denominator))
            out[tmask] += c * root
        return tuple(out)

    # --- coercion -----------------------------------------------------
    def _coerce(self, other) -> tuple[AlgNum, AlgNum] | None:
        if isinstance(other, AlgNum):
            o = other
        elif isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            o = AlgNum.rational(other)
        else:
            return None
        if self.field == o.field:
            return self, o
        if self.field.contains(o.field):
            return self, o.lift(self.field)
        if o.field.contains(self.field):
            return self.lift(o.field), o
        a, b = self.canonical(), o.canonical()
        if a.field.contains(b.field):
            return a, b.lift(a.field)
        if b.field.contains(a.field):
            return a.lift(b.field), b
        raise FieldMismatch(f"cannot mix {self.field} and {o.field} implicitly")

    # --- arithmetic ---------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(tuple(x + y for x, y in zip(a.coords, b.coords)), a.field)

    __radd__ = __add__

    def __neg__(self) -> AlgNum:
        return AlgNum(tuple(-x for x in self.coords), self.field)

    def __pos__(self) -> AlgNum:
        return self

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(tuple(x - y for x, y in zip(a.coords, b.coords)), a.field)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(tuple(y - x for x, y in zip(a.coords, b.coords)), a.field)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(_mul_coords(a.field, a.coords, b.coords), a.field)

    __rmul__ = __mul__

    def inverse(self) -> AlgNum:
        if not self:
            raise ZeroDivisionError("AlgNum division by zero")
        f = self.field
        if f.kind == "rational":
            return AlgNum((1 / self.coords[0],))
        if self.is_rational:
            return AlgNum((1 / self.coords[0],) + (Fraction(0),) * (f.dim - 1), f)
        # product of the nontrivial conjugates over the norm
        conj = None
        for sigma in range(1, f.dim):
            c = _conjugate(f, self.coords, sigma)
            conj = c if conj is None else _mul_coords(f, conj, c)
        norm = _mul_coords(f, self.coords, conj)
        assert not any(norm[1:]), "norm must be rational"
        return AlgNum(tuple(x / norm[0] for x in conj), f)

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(a.coords, a.field) * AlgNum(b.coords, b.field).inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return AlgNum(b.coords, b.field) * AlgNum(a.coords, a.field).inverse()

    def __pow__(self, n: int) -> AlgNum:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = AlgNum.rational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugates(self) -> list[AlgNum]:
        return [AlgNum(_conjugate(self.field, self.coords, s), self.field) for s in range(self.field.dim)]

    # --- order --------------------------------------------------------
    def sign(self) -> int:
        return sign(self)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgNum):
            if self.field == other.field:
                return self.coords == other.coords
            a, b = self.canonical(), other.canonical()
            return a.field == b.field and a.coords == b.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            c = self.canonical()
            h = hash(c.coords[0]) if c.field.kind == "rational" else hash((c.field, c.coords))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def _cmp(self, other) -> int | None:
        diff = self.__sub__(other)
        if diff is NotImplemented:
            return None
        return sign(diff)

    def __lt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __abs__(self) -> AlgNum:
        return -self if sign(self) < 0 else self

    def __float__(self) -> float:
        return sum(
            float(c) * math.sqrt(self.field.basis_product(m)) for m, c in enumerate(self.coords) if c
        ) if any(self.coords) else 0.0

    # --- text ---------------------------------------------------------
    def __repr__(self) -> str:
        return f"AlgNum({self})"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.coords[0])
        parts = []
        for mask, c in enumerate(self.coords):
            if not c:
                continue
            if mask == 0:
                parts.append(str(c))
                continue
            rad = f"√{self.field.basis_product(mask)}"
            sgn, c = ("-", -c) if c < 0 else ("", c)
            if c == 1:
                parts.append(sgn + rad)
            else:
                parts.append(sgn + (f"{c}{rad}" if c.denominator == 1 else f"({c}){rad}"))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        """Encode in the smallest field holding the value."""
        c = self.canonical()
        f = c.field
        if f.kind == "rational":
            return _frac_str(c.coords[0])
        if f.kind == "quad":
            return {"d": f.radicands[0], "a": _frac_str(c.coords[0]), "b": _frac_str(c.coords[1])}
        return {"p": f.radicands[0], "q": f.radicands[1], "c": [_frac_str(x) for x in c.coords]}

    @classmethod
    def from_json(cls, obj) -> AlgNum:
        if isinstance(obj, AlgNum):
            return obj
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        if isinstance(obj, dict):
            if "d" in obj:
                return cls.quad(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))
            if "p" in obj:
                c = [Fraction(x) for x in obj["c"]]
                if len(c) != 4:
                    raise ValueError("biquadratic element needs four coordinates")
                return cls.biquad(*c, int(obj["p"]), int(obj["q"]))
        raise ValueError(f"cannot decode AlgNum from {obj!r}")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _mul_coords(field: Field, a, b) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * field.dim
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            # sqrt(S) * sqrt(T) = sqrt(S xor T) * prod(shared radicands)
            out[i ^ j] += x * y * field.basis_product(i & j)
    return tuple(out)


def _conjugate(field: Field, coords, sigma: int) -> tuple[Fraction, ...]:
    return tuple(-c if _popcount(m & sigma) % 2 else c for m, c in enumerate(coords))


def _normalize(field: Field, cs: tuple[Fraction, ...]) -> tuple[Field, tuple[Fraction, ...]]:
    support = [m for m, c in enumerate(cs) if c and m]
    if not support:
        return QQ, (cs[0],)
    if field.kind == "biquad" and len(support) == 1:
        m = support[0]
        k, d = squarefree_decomposition(field.basis_product(m))
        return Field.quad(d), (cs[0], cs[m] * k)
    return field, cs


def as_algnum(x: Number) -> AlgNum:
    if isinstance(x, AlgNum):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return AlgNum.rational(Fraction(x))


def sign(x: Number) -> int:
    """Exact sign of ``x``.

    Irrational elements are bracketed by rational intervals around each
    square root, halving the width until the enclosure excludes zero.  A
    nonzero algebraic number has a positive distance from zero, so the loop
    terminates.
    """
    x = as_algnum(x)
    if x.is_rational:
        c = x.coords[0]
        return (c > 0) - (c < 0)
    f = x.field
    bits = 16
    while True:
        lo = hi = x.coords[0]
        roots = [_sqrt_interval(d, bits) for d in f.radicands]
        for mask in range(1, f.dim):
            c = x.coords[mask]
            if not c:
                continue
            blo, bhi = Fraction(1), Fraction(1)
            for i, (rlo, rhi) in enumerate(roots):
                if mask >> i & 1:
                    blo, bhi = blo * rlo, bhi * rhi
            if c > 0:
                lo, hi = lo + c * blo, hi + c * bhi
            else:
                lo, hi = lo + c * bhi, hi + c * blo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def sqrt(x: Number) -> AlgNum:
    """Square root of a nonnegative element, if it lies in a supported field.

    Rational input always succeeds (the result is rational or quadratic).
    Quadratic input succeeds when the root lies in the same quadratic field.
    """
    x = as_algnum(x)
    if sign(x) < 0:
        raise ValueError(f"square root of negative number {x}")
    if not x:
        return x
    if x.is_rational:
        c = x.coords[0]
        k, d = squarefree_decomposition(c.numerator * c.denominator)
        coef = Fraction(k, c.denominator)
        return AlgNum.rational(coef) if d == 1 else AlgNum.quad(0, coef, d)
    x = x.canonical()
    if x.field.kind == "quad":
        a, b = x.coords
        d = x.field.radicands[0]
        # (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 = (a +- sqrt(a^2 - d b^2)) / 2
        norm = a * a - d * b * b
        if norm >= 0:
            r = _rational_sqrt(norm)
            if r is not None:
                for cand in ((a + r) / 2, (a - r) / 2):
                    u = _rational_sqrt(cand) if cand > 0 else None
                    if u:
                        v = b / (2 * u)
                        root = AlgNum.quad(u, v, d)
                        return root if sign(root) > 0 else -root
    raise NotImplementedError(f"sqrt({x}) leaves the supported fields")


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    n, m = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if n * n == c.numerator and m * m == c.denominator:
        return Fraction(n, m)
    return None


def common_field(values: Iterable[Number]) -> Field:
    """Smallest field (by explicit compositum) containing all ``values``."""
    fields = [as_algnum(v).field for v in values]
    return reduce(lambda a, b: a.compositum(b), fields, QQ)
