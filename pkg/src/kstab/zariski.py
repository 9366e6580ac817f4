"""Intersection lattices and Zariski chambers of ``D(t) = P0 - t*E``.

The lattice is spanned by named classes.  The first two are reserved: the
polarization ``P0`` (usually a pullback, so ``P0.E = 0``) and the divisor
``E`` being subtracted.  The rest are candidate negative curves; the
negative part of every ``D(t)`` must be supported on them.  That is an input
assumption, and the only certificate of it is that the chambers tile
``[0, T]`` with no gaps.

Classes need not be independent: the Gram matrix of the generators may be
degenerate (for the tacnode, ``P0 - 4E`` and ``L + Q`` are numerically
equal), which is harmless since everything goes through the pairing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import IncompleteCandidates
from .exactnum import AlgNum, Field, Poly, as_algnum, quad_roots
from .exactnum.linalg import is_negative_definite, solve

__all__ = [
    "IntersectionLattice",
    "DivisorClass",
    "ZariskiChamber",
    "pair",
    "zariski_decompose",
    "nef_chambers",
    "certify_chamber",
]

MAX_CANDIDATES = 8


@dataclass(frozen=True)
class IntersectionLattice:
    classes: tuple[str, ...]
    gram: tuple[tuple[AlgNum, ...], ...]

    def __post_init__(self) -> None:
        classes = tuple(self.classes)
        gram = tuple(tuple(as_algnum(x) for x in row) for row in self.gram)
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "gram", gram)
        n = len(classes)
        if n < 2:
            raise ValueError("lattice needs at least the polarization and E")
        if len(set(classes)) != n:
            raise ValueError("class names must be distinct")
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError(f"Gram matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({classes[i]}, {classes[j]})")
        if not gram[0][0] > 0:
            raise ValueError("polarization must have positive self-intersection")
        if n - 2 > MAX_CANDIDATES:
            raise ValueError(f"at most {MAX_CANDIDATES} candidate curves")

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def polarization(self) -> str:
        return self.classes[0]

    @property
    def exceptional(self) -> str:
        return self.classes[1]

    @property
    def curves(self) -> tuple[str, ...]:
        return self.classes[2:]

    def index(self, name: str) -> int:
        try:
            return self.classes.index(name)
        except ValueError:
            raise KeyError(f"no class named {name!r}") from None

    def entry(self, a: str, b: str) -> AlgNum:
        return self.gram[self.index(a)][self.index(b)]

    def basis(self, name: str) -> DivisorClass:
        coeffs = [0] * self.rank
        coeffs[self.index(name)] = 1
        return DivisorClass(self, coeffs)

    def zero(self) -> DivisorClass:
        return DivisorClass(self, [0] * self.rank)

    def divisor(self, **coeffs) -> DivisorClass:
        out = [0] * self.rank
        for name, c in coeffs.items():
            out[self.index(name)] = c
        return DivisorClass(self, out)

    def field(self) -> Field:
        out = Field()
        for row in self.gram:
            for x in row:
                out = out.compositum(x.field)
        return out

    def scaled(self, k) -> IntersectionLattice:
        """Same surface with the polarization replaced by ``k`` times itself."""
        k = as_algnum(k)
        n = self.rank
        g = [[self.gram[i][j] * (k if i == 0 else 1) * (k if j == 0 else 1) for j in range(n)] for i in range(n)]
        return IntersectionLattice(self.classes, tuple(map(tuple, g)))

    def to_json(self) -> dict:
        return {
            "field": self.field().to_json(),
            "classes": list(self.classes),
            "gram": [[x.to_json() for x in row] for row in self.gram],
        }

    @classmethod
    def from_json(cls, obj: dict) -> IntersectionLattice:
        return cls(
            tuple(obj["classes"]),
            tuple(tuple(AlgNum.from_json(x) for x in row) for row in obj["gram"]),
        )


@dataclass(frozen=True)
class DivisorClass:
    lattice: IntersectionLattice = field(repr=False)
    coeffs: tuple[AlgNum, ...]

    def __post_init__(self) -> None:
        cs = tuple(as_algnum(c) for c in self.coeffs)
        if len(cs) != self.lattice.rank:
            raise ValueError(f"expected {self.lattice.rank} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    def _check(self, other: DivisorClass) -> None:
        if other.lattice != self.lattice:
            raise ValueError("divisor classes live on different lattices")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.lattice, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.lattice, [-a for a in self.coeffs])

    def __mul__(self, c) -> DivisorClass:
        return DivisorClass(self.lattice, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def coefficient(self, name: str) -> AlgNum:
        return self.coeffs[self.lattice.index(name)]

    def __getitem__(self, name: str) -> AlgNum:
        return self.coefficient(name)

    def items(self):
        return zip(self.lattice.classes, self.coeffs)

    def to_json(self) -> dict:
        return {name: c.to_json() for name, c in self.items() if c}

    def __str__(self) -> str:
        terms = [f"{c}*{n}" if c != 1 else n for n, c in self.items() if c]
        return " + ".join(terms) if terms else "0"


def pair(d1: DivisorClass, d2: DivisorClass) -> AlgNum:
    """Intersection number ``d1 . d2``."""
    d1._check(d2)
    g = d1.lattice.gram
    total = AlgNum.rational(0)
    for i, a in enumerate(d1.coeffs):
        if not a:
            continue
        for j, b in enumerate(d2.coeffs):
            if b:
                total = total + a * g[i][j] * b
    return total


def _support_gram(lat: IntersectionLattice, support: Sequence[int]) -> list[list[AlgNum]]:
    return [[lat.gram[i][j] for j in support] for i in support]


def _pair_vec(lat: IntersectionLattice, coeffs: Sequence, j: int):
    """``(sum coeffs_i C_i) . C_j`` for coefficients that may be polynomials."""
    total = 0
    for i, c in enumerate(coeffs):
        if lat.gram[i][j]:
            total = c * lat.gram[i][j] + total
    return total


def zariski_decompose(lat: IntersectionLattice, d: DivisorClass) -> tuple[DivisorClass, DivisorClass]:
    """Split ``d = P + N`` against the lattice's candidate curves.

    Supports are tried in order of increasing size; the first one giving
    ``N >= 0`` with negative definite support, ``P.C = 0`` on the support and
    ``P.C >= 0`` on the other candidates and on ``E`` is the answer (the
    decomposition is unique, so order only affects speed).
    """
    if d.lattice != lat:
        raise ValueError("divisor is not on this lattice")
    curves = list(range(2, lat.rank))
    checks = curves + [1]
    for size in range(len(curves) + 1):
        for support in combinations(curves, size):
            g = _support_gram(lat, support)
            if support and not is_negative_definite(g):
                continue
            rhs = [[pair(d, DivisorClass(lat, _unit(lat.rank, j)))] for j in support]
            xs = [row[0] for row in solve(g, rhs)] if support else []
            if any(x < 0 for x in xs):
                continue
            n_coeffs = [AlgNum.rational(0)] * lat.rank
            for j, x in zip(support, xs):
                n_coeffs[j] = x
            neg = DivisorClass(lat, n_coeffs)
            pos = d - neg
            if all(_pair_vec(lat, pos.coeffs, j) >= 0 for j in checks):
                return pos, neg
    raise IncompleteCandidates("candidate set incomplete or D not pseudo-effective")


def _unit(n: int, j: int) -> list[int]:
    v = [0] * n
    v[j] = 1
    return v


@dataclass(frozen=True)
class ZariskiChamber:
    """One interval of ``t`` on which the support of ``N(t)`` is constant.

    ``neg_coeffs`` holds the affine coefficient of each supported curve,
    ``positive`` the coefficient vector of ``P(t)`` (affine polynomials),
    ``vol_piece`` the quadratic ``P(t)^2`` and ``restricted`` the affine
    ``P(t).E``.
    """

    t_lo: AlgNum
    t_hi: AlgNum
    support: tuple[str, ...]
    neg_coeffs: dict[str, Poly]
    positive: tuple[Poly, ...]
    vol_piece: Poly
    restricted: Poly

    def positive_at(self, lat: IntersectionLattice, t) -> DivisorClass:
        return DivisorClass(lat, [p(t) for p in self.positive])

    def negative_at(self, lat: IntersectionLattice, t) -> DivisorClass:
        return lat.divisor(**{name: p(t) for name, p in self.neg_coeffs.items()})

    def to_json(self) -> dict:
        return {
            "interval": [self.t_lo.to_json(), self.t_hi.to_json()],
            "support": list(self.support),
            "negative_part": {k: v.to_json() for k, v in self.neg_coeffs.items()},
            "volume_piece": self.vol_piece.to_json(),
            "restricted_volume_piece": self.restricted.to_json(),
        }


def _eventually_nonneg(p: Poly, t0: AlgNum, strict: bool) -> bool:
    """Is the affine ``p`` >= 0 (or > 0) on some interval ``(t0, t0 + eps)``?"""
    v = p(t0)
    if v > 0:
        return True
    if v < 0:
        return False
    slope = p.coeff(1)
    return slope > 0 if strict else slope >= 0


def _first_root_after(p: Poly, t0: AlgNum) -> AlgNum | None:
    if p.degree < 1:
        return None
    roots = [r for r in quad_roots(p) if r > t0]
    return min(roots) if roots else None


def _chamber_at(lat: IntersectionLattice, t0: AlgNum, min_size: int = 0) -> tuple:
    curves = list(range(2, lat.rank))
    dvec = [Poly.const(1)] + [Poly.linear(0, -1)] + [Poly()] * (lat.rank - 2)
    for size in range(min_size, len(curves) + 1):
        for support in combinations(curves, size):
            g = _support_gram(lat, support)
            if support and not is_negative_definite(g):
                continue
            # N coefficients solve G_S x = (D(t).C_j), affine in t: two right-hand sides
            rhs = []
            for j in support:
                dc = _pair_vec(lat, dvec, j)
                rhs.append([dc.coeff(0), dc.coeff(1)])
            sol = solve(g, rhs) if support else []
            xs = [Poly.linear(r[0], r[1]) for r in sol]
            if not all(_eventually_nonneg(x, t0, strict=True) for x in xs):
                continue
            pvec = list(dvec)
            for j, x in zip(support, xs):
                pvec[j] = pvec[j] - x
            others = [j for j in curves if j not in support] + [1]
            constraints = [Poly() + _pair_vec(lat, pvec, j) for j in others]
            if not all(_eventually_nonneg(c, t0, strict=False) for c in constraints):
                continue
            return support, xs, pvec, constraints
    return None


def nef_chambers(lat: IntersectionLattice) -> list[ZariskiChamber]:
    """Chambers of ``D(t) = P0 - tE`` tiling ``[0, T]``.

    From each chamber start ``t0`` the support valid just to the right of
    ``t0`` is found by enumeration; the chamber ends at the first root of a
    validity constraint (a coefficient or an intersection turning negative)
    or at the first root of the volume, which is ``T``.
    """
    chambers: list[ZariskiChamber] = []
    t0 = AlgNum.rational(0)
    exc = lat.index(lat.exceptional)
    while True:
        found = _chamber_at(lat, t0)
        if found is None:
            raise IncompleteCandidates(
                f"incomplete candidate curve set: no valid support just after t={t0}"
            )
        support, xs, pvec, constraints = found
        vol = Poly()
        for i, a in enumerate(pvec):
            vol = vol + a * _pair_vec(lat, pvec, i)
        ends = [r for r in (_first_root_after(c, t0) for c in constraints + xs) if r is not None]
        t_vol = _first_root_after(vol, t0)
        if t_vol is None and not ends:
            raise IncompleteCandidates("incomplete candidate curve set: volume never reaches 0")
        t_end = min(ends) if ends else None
        final = t_vol is not None and (t_end is None or t_vol <= t_end)
        t_hi = t_vol if final else t_end
        names = tuple(lat.classes[j] for j in support)
        restricted = Poly() + _pair_vec(lat, pvec, exc)
        chambers.append(
            ZariskiChamber(
                t_lo=t0,
                t_hi=t_hi,
                support=names,
                neg_coeffs=dict(zip(names, xs)),
                positive=tuple(pvec),
                vol_piece=vol,
                restricted=restricted,
            )
        )
        if final:
            break
        t0 = t_hi
    _check_tiling(chambers)
    return chambers


def _check_tiling(chambers: list[ZariskiChamber]) -> None:
    for a, b in zip(chambers, chambers[1:]):
        if a.t_hi != b.t_lo:
            raise IncompleteCandidates("incomplete candidate curve set: chambers leave a gap")
        if not set(a.support) <= set(b.support):
            raise IncompleteCandidates("incomplete candidate curve set: support shrinks")


def certify_chamber(lat: IntersectionLattice, ch: ZariskiChamber) -> dict[str, bool]:
    """Exact certificates for one chamber.

    Every constraint is affine in ``t``, so nonnegativity on the closed
    interval reduces to the two endpoints; ``P.N = 0`` is checked as a
    polynomial identity.
    """
    idx = [lat.index(n) for n in ch.support]
    neg_vec = [Poly()] * lat.rank
    for n, p in ch.neg_coeffs.items():
        neg_vec[lat.index(n)] = p
    pn = Poly()
    for i, a in enumerate(ch.positive):
        pn = pn + a * _pair_vec(lat, neg_vec, i)
    checks = [j for j in range(2, lat.rank)] + [1]
    ends = (ch.t_lo, ch.t_hi)
    p2 = Poly()
    for i, a in enumerate(ch.positive):
        p2 = p2 + a * _pair_vec(lat, list(ch.positive), i)
    return {
        "negative_definite": is_negative_definite(_support_gram(lat, idx)),
        "coefficients_nonnegative": all(p(t) >= 0 for p in ch.neg_coeffs.values() for t in ends),
        "positive_part_nef": all(_pair_vec(lat, list(ch.positive), j)(t) >= 0 for j in checks for t in ends),
        "orthogonal": not pn,
        "volume_is_positive_square": p2 == ch.vol_piece,
    }
