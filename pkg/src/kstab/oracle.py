"""Brute force over honest section spaces of P^1 and P^2.

Sections of ``O(K)`` are polynomials in the monomial basis, vectors are
lists of Fractions in that basis, and subspaces are row-reduced spanning
sets.  A monomial valuation gives each monomial a weight; the value of a
section is the least weight in its support.  For such a valuation the
monomial basis is compatible with the filtration, so ``S_m`` is an average
of weights, and the closed-form limit is the mean of the weight over the
moment polytope (a segment or a triangle), integrated separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DomainError
from .exactnum import Poly
from .exactnum.linalg import nullspace, rank, rref

__all__ = [
    "MonomialModel",
    "FiltrationSpec",
    "Subspace",
    "monomials",
    "monomial_filtration",
    "compatible_basis",
    "is_compatible",
    "section_value",
    "s_m",
    "s_m_from_basis",
    "graded_dims",
    "basis_divisor_split",
    "closed_form_s",
    "s_convergence",
    "SplitReport",
    "ConvergenceReport",
    "MAX_DIM",
]

MAX_DIM = 2000


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class MonomialModel:
    """``O(k)`` on P^1 (``ambient="curve"``) or P^2 (``"plane"``) with a monomial valuation.

    ``weights`` has one entry per homogeneous coordinate, or one fewer for
    affine weights at the point where the last coordinate is 1 (the last
    homogeneous weight is then 0).
    """

    ambient: str
    k: int
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.ambient not in ("curve", "plane"):
            raise DomainError(f"ambient must be 'curve' or 'plane', got {self.ambient!r}")
        if self.k < 1:
            raise DomainError("degree k must be >= 1")
        w = tuple(Fraction(x) for x in self.weights)
        n = self.dim
        if len(w) == n:
            w = w + (Fraction(0),)
        if len(w) != n + 1:
            raise DomainError(f"expected {n} affine or {n + 1} homogeneous weights, got {len(self.weights)}")
        if any(x < 0 for x in w) or not any(w):
            raise DomainError("weights must be nonnegative and not all zero")
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return 1 if self.ambient == "curve" else 2

    def weight(self, exps: Sequence[int]) -> Fraction:
        return sum((w * e for w, e in zip(self.weights, exps)), Fraction(0))

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "k": self.k, "weights": [_q(w) for w in self.weights]}


def monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``degree`` in ``n + 1`` variables, lexicographic."""
    if n == 1:
        return [(i, degree - i) for i in range(degree + 1)]
    return [(i, j, degree - i - j) for i in range(degree + 1) for j in range(degree - i + 1)]


def _section_count(model: MonomialModel, m: int) -> int:
    d = m * model.k
    return d + 1 if model.dim == 1 else (d + 1) * (d + 2) // 2


def _check_size(model: MonomialModel, m: int) -> None:
    if m < 1:
        raise DomainError("m must be >= 1")
    if _section_count(model, m) > MAX_DIM:
        raise DomainError(f"section space of dimension {_section_count(model, m)} exceeds {MAX_DIM}")


class Subspace:
    """Row-reduced basis of a subspace of ``Q^dim``."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, vectors: Sequence[Sequence] = ()) -> None:
        self.dim = dim
        vecs = [[Fraction(x) for x in v] for v in vectors]
        if any(len(v) != dim for v in vecs):
            raise DomainError(f"vectors must have length {dim}")
        red, piv = rref(vecs) if vecs else ([], [])
        self.rows = [r for r in red[: len(piv)]]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: Sequence) -> bool:
        return rank(self.rows + [list(v)]) == self.rank

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.dim, self.rows + other.rows)

    def __and__(self, other: Subspace) -> Subspace:
        if not self.rows or not other.rows:
            return Subspace(self.dim)
        # x in both  <=>  sum a_i u_i = sum b_j w_j
        cols = self.rows + [[-x for x in w] for w in other.rows]
        mat = [[c[i] for c in cols] for i in range(self.dim)]
        out = []
        for v in nullspace(mat, len(cols)):
            vec = [Fraction(0)] * self.dim
            for a, u in zip(v[: self.rank], self.rows):
                if a:
                    vec = [x + a * y for x, y in zip(vec, u)]
            out.append(vec)
        return Subspace(self.dim, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, rank={self.rank})"


@dataclass(frozen=True)
class FiltrationSpec:
    """A descending chain ``V = F^{l_0} > F^{l_1} > ... > F^{l_r} = 0`` of subspaces of ``Q^dim``.

    ``levels`` pairs each jump value ``l_i`` (strictly increasing) with a
    spanning set; the first subspace must be everything and the last zero.
    """

    dim: int
    levels: tuple[tuple[Fraction, tuple[tuple[Fraction, ...], ...]], ...]

    def __post_init__(self) -> None:
        lv = tuple((Fraction(lam), tuple(tuple(Fraction(x) for x in v) for v in span)) for lam, span in self.levels)
        object.__setattr__(self, "levels", lv)
        if not lv:
            raise DomainError("filtration needs at least one level")
        lams = [lam for lam, _ in lv]
        if any(b <= a for a, b in zip(lams, lams[1:])):
            raise DomainError("filtration levels must increase strictly")
        subs = self.subspaces()
        if subs[0].rank != self.dim:
            raise DomainError("filtration must start at the whole space")
        if subs[-1].rank != 0:
            raise DomainError("filtration must end at 0")
        for big, small in zip(subs, subs[1:]):
            if not all(big.contains(v) for v in small.rows):
                raise DomainError("filtration chain is not descending")

    def subspaces(self) -> list[Subspace]:
        return [Subspace(self.dim, span) for _, span in self.levels]

    def value(self, v: Sequence) -> Fraction:
        """Largest level whose subspace contains ``v`` (for ``v != 0``)."""
        best = self.levels[0][0]
        for (lam, _), sub in zip(self.levels, self.subspaces()):
            if sub.rank and sub.contains(v):
                best = lam
        return best


def monomial_filtration(model: MonomialModel, m: int) -> tuple[list[tuple[int, ...]], FiltrationSpec]:
    """The valuation's filtration on ``H^0(O(mk))`` in the monomial basis."""
    _check_size(model, m)
    mons = monomials(model.dim, m * model.k)
    n = len(mons)
    ws = [model.weight(e) for e in mons]
    levels = []
    for lam in sorted(set(ws)):
        span = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n) if ws[i] >= lam)
        levels.append((lam, span))
    top = levels[-1][0]
    levels.append((top + 1, ()))
    return mons, FiltrationSpec(n, tuple(levels))


def compatible_basis(f: FiltrationSpec, g: FiltrationSpec) -> list[list[Fraction]]:
    """A basis of ``V`` that restricts to a basis of every ``F^l`` and every ``G^l``.

    For each pair of levels, lift a basis of
    ``(F^j & G^i) / (F^{j+1} & G^i + F^j & G^{i+1})`` and take the union.
    """
    if f.dim != g.dim:
        raise DomainError("filtrations live on spaces of different dimension")
    fs, gs = f.subspaces(), g.subspaces()
    zero = Subspace(f.dim)
    basis: list[list[Fraction]] = []
    for j, i in product(range(len(fs)), range(len(gs))):
        top = fs[j] & gs[i]
        if not top.rank:
            continue
        lower = (fs[j + 1] if j + 1 < len(fs) else zero) & gs[i]
        lower = lower + (fs[j] & (gs[i + 1] if i + 1 < len(gs) else zero))
        acc = list(lower.rows)
        for v in top.rows:
            if rank(acc + [v]) > len(acc):
                acc.append(v)
                basis.append(list(v))
    if len(basis) != f.dim or rank(basis) != f.dim:
        raise DomainError("inconsistent filtrations: graded pieces do not assemble to a basis")
    if not (is_compatible(basis, f) and is_compatible(basis, g)):
        raise DomainError("constructed basis failed the compatibility check")
    return basis


def is_compatible(basis: Sequence[Sequence], f: FiltrationSpec) -> bool:
    """Does every subspace of the chain have a basis drawn from ``basis``?"""
    for sub in f.subspaces():
        inside = [list(v) for v in basis if sub.contains(v)]
        if len(inside) != sub.rank or (inside and rank(inside) != sub.rank):
            return False
    return True


def section_value(model: MonomialModel, mons: Sequence[tuple[int, ...]], v: Sequence) -> Fraction:
    vals = [model.weight(e) for e, c in zip(mons, v) if c]
    if not vals:
        raise DomainError("the zero section has no value")
    return min(vals)


def graded_dims(model: MonomialModel, m: int) -> dict[Fraction, int]:
    """``dim Gr^l`` of the valuation filtration on ``H^0(O(mk))``."""
    _check_size(model, m)
    out: dict[Fraction, int] = {}
    for e in monomials(model.dim, m * model.k):
        w = model.weight(e)
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def s_m(model: MonomialModel, m: int) -> Fraction:
    """``(1/(m N_m)) * sum_l l * dim Gr^l``."""
    dims = graded_dims(model, m)
    total = sum(dims.values())
    return sum((lam * d for lam, d in dims.items()), Fraction(0)) / (m * total)


def s_m_from_basis(model: MonomialModel, m: int, basis: Sequence[Sequence]) -> Fraction:
    """Value of the m-basis type divisor of ``basis`` along the valuation."""
    mons = monomials(model.dim, m * model.k)
    if len(basis) != len(mons) or rank([list(v) for v in basis]) != len(mons):
        raise DomainError("not a basis of the section space")
    return sum((section_value(model, mons, v) for v in basis), Fraction(0)) / (m * len(mons))


def _divisorial_coordinate(model: MonomialModel) -> int:
    nz = [i for i, w in enumerate(model.weights) if w]
    if len(nz) != 1 or model.weights[nz[0]] != 1:
        raise DomainError("basis-divisor split needs the order of vanishing along one coordinate hyperplane")
    return nz[0]


@dataclass(frozen=True)
class SplitReport:
    coeff_e: Fraction
    residual_dims: dict[int, int]
    expected_dims: dict[int, int]

    @property
    def matches(self) -> bool:
        return self.residual_dims == self.expected_dims

    def to_json(self) -> dict:
        return {
            "coeff_E": _q(self.coeff_e),
            "residual_dims": {str(j): d for j, d in self.residual_dims.items()},
            "expected_dims": {str(j): d for j, d in self.expected_dims.items()},
            "matches": self.matches,
        }


def basis_divisor_split(model: MonomialModel, m: int) -> SplitReport:
    """Split the monomial m-basis type divisor as ``S_m * E + Gamma``.

    ``E`` is the coordinate hyperplane the valuation measures.  The sections
    vanishing to order exactly ``j`` along ``E`` restrict to a basis of
    ``H^0(E, O(mk - j))``, which is what ``expected_dims`` records.
    """
    _check_size(model, m)
    idx = _divisorial_coordinate(model)
    mons = monomials(model.dim, m * model.k)
    n = len(mons)
    coeff = Fraction(sum(e[idx] for e in mons), m * n)
    residual: dict[int, int] = {}
    for e in mons:
        residual[e[idx]] = residual.get(e[idx], 0) + 1
    top = m * model.k
    # sections of O(top - j) on E = P^(dim-1)
    expected = {j: (1 if model.dim == 1 else top - j + 1) for j in range(top + 1)}
    return SplitReport(coeff, dict(sorted(residual.items())), expected)


def closed_form_s(model: MonomialModel) -> Fraction:
    """Mean of the weight over the moment polytope of ``O(k)``, by exact integration."""
    k = model.k
    x = Poly.x()
    if model.dim == 1:
        w0, w1 = model.weights
        f = x * w0 + (Poly.const(k) - x) * w1
        return (f.integral(0, k) / k).to_fraction()
    w0, w1, w2 = model.weights
    # integrate w0*x + w1*y + w2*(k - x - y) over 0 <= y <= k - x, then over x
    rest = Poly.const(k) - x
    inner = (x * w0 + rest * w2) * rest + rest * rest * ((w1 - w2) / 2)
    return (inner.integral(0, k) / (Fraction(k * k, 2))).to_fraction()


@dataclass(frozen=True)
class ConvergenceReport:
    model: MonomialModel
    limit: Fraction
    rows: tuple[tuple[int, Fraction, Fraction], ...]
    tolerance: Fraction

    @property
    def ok(self) -> bool:
        return self.rows[-1][2] <= self.tolerance

    def to_json(self) -> dict:
        return {
            "model": self.model.to_json(),
            "limit": _q(self.limit),
            "tolerance": _q(self.tolerance),
            "rows": [{"m": m, "S_m": _q(s), "gap": _q(g)} for m, s, g in self.rows],
            "ok": self.ok,
        }


def s_convergence(model: MonomialModel, m_list: Sequence[int], tolerance=Fraction(3, 16)) -> ConvergenceReport:
    """``S_m`` against the closed-form limit; ``ok`` when the last gap is within ``tolerance``.

    The default tolerance is empirical.
    """
    ms = list(m_list)
    if not ms or any(b <= a for a, b in zip(ms, ms[1:])):
        raise DomainError("m list must be nonempty and strictly increasing")
    limit = closed_form_s(model)
    rows = tuple((m, s, abs(s - limit)) for m in ms for s in [s_m(model, m)])
    return ConvergenceReport(model, limit, rows, Fraction(tolerance))
