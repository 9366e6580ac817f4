"""Adjunction to the exceptional curve, and the two-weight optimizer.

The exceptional divisor of a (weighted) point blow-up on a surface is a P^1
carrying the different plus ``lambda`` times the fixed part of the
refinement.  The delta of that pair on P^1 is explicit, which turns
``A/S`` into a lower bound for ``delta_x`` whenever the induced pair is
K-semistable.

For a two-weight family the ratio ``A/S`` is a rational function of the
weight ratio ``mu = a/b``; it is recovered by exact interpolation and
minimized in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .errors import DomainError
from .exactnum import AlgNum, Field, Poly, as_algnum, quad_roots
from .exactnum.linalg import nullspace, rank
from .fujita import RefinementSummary, SurfaceBlowupModel, s_invariant, summarize

__all__ = [
    "PonePair",
    "delta_pone",
    "AdjunctionReport",
    "adjunction_bound",
    "FitError",
    "ratfun_fit",
    "QMFamily",
    "QMResult",
    "qm_minimize",
    "ratio_at",
    "FGResult",
    "fg_check",
    "convergent_weights",
    "r_sequence",
]


@dataclass(frozen=True)
class PonePair:
    """A boundary ``sum a_i P_i`` on P^1."""

    points: tuple[tuple[str, AlgNum], ...] = ()

    def __post_init__(self) -> None:
        pts = tuple((str(p), as_algnum(a)) for p, a in self.points)
        object.__setattr__(self, "points", pts)
        labels = [p for p, _ in pts]
        if len(set(labels)) != len(labels):
            raise DomainError("repeated point label on P^1")
        for p, a in pts:
            if a < 0 or a >= 1:
                raise DomainError(f"coefficient at {p} must lie in [0, 1), got {a}")
        if not self.total < 2:
            raise DomainError("boundary degree must be < 2 for a log Fano pair on P^1")

    @property
    def total(self) -> AlgNum:
        return sum((a for _, a in self.points), AlgNum.rational(0))

    def coefficient(self, label: str) -> AlgNum:
        return dict(self.points).get(label, AlgNum.rational(0))

    def to_json(self) -> dict:
        return {p: a.to_json() for p, a in self.points}

    def __str__(self) -> str:
        return " + ".join(f"({a}){p}" for p, a in self.points if a) or "0"


def delta_pone(pair: PonePair) -> AlgNum:
    """``(1 - max a_i) / (1 - sum a_i / 2)``; the pair is K-semistable iff this is >= 1."""
    amax = max((a for _, a in pair.points), default=AlgNum.rational(0))
    return (1 - amax) / (1 - pair.total / 2)


@dataclass(frozen=True)
class AdjunctionReport:
    """``lam = A/S`` together with the induced pair on ``E``.

    When some induced coefficient reaches 1 the pair is not log Fano; the
    report is then ``degenerate`` with ``r`` and ``lower_bound`` unset.
    """

    lam: AlgNum
    induced: tuple[tuple[str, AlgNum], ...]
    r: AlgNum | None
    lower_bound: AlgNum | None
    degenerate: bool
    summary: RefinementSummary = field(repr=False, compare=False)

    @property
    def tight(self) -> bool:
        return not self.degenerate and self.r >= 1

    @property
    def induced_pair(self) -> PonePair:
        if self.degenerate:
            raise DomainError("adjunction bound degenerate: induced coefficient >= 1")
        return PonePair(self.induced)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "induced_pair": {p: a.to_json() for p, a in self.induced},
            "r": None if self.r is None else self.r.to_json(),
            "lower_bound": None if self.lower_bound is None else self.lower_bound.to_json(),
            "tight": self.tight,
            "degenerate": self.degenerate,
            "summary": self.summary.to_json(),
        }


def adjunction_bound(model: SurfaceBlowupModel) -> AdjunctionReport:
    summary = summarize(model)
    lam = model.log_discrepancy / summary.s
    coeffs: dict[str, AlgNum] = {}
    for p, c in model.diff_points:
        coeffs[p] = c
    for p, m in summary.fixed_part_mults.items():
        coeffs[p] = coeffs.get(p, AlgNum.rational(0)) + lam * m
    induced = tuple(coeffs.items())
    if any(a >= 1 for _, a in induced) or not sum((a for _, a in induced), AlgNum.rational(0)) < 2:
        return AdjunctionReport(lam, induced, None, None, True, summary)
    r = delta_pone(PonePair(induced))
    bound = lam if r >= 1 else r * lam
    return AdjunctionReport(lam, induced, r, bound, False, summary)


class FitError(DomainError):
    pass


def ratfun_fit(samples: Sequence[tuple], num_deg: int, den_deg: int) -> tuple[Poly, Poly]:
    """Recover ``P/Q`` with ``deg P <= num_deg`` and ``deg Q <= den_deg`` from exact samples.

    Degree pairs are tried smallest first, so the answer is in lowest terms;
    ``Q`` is monic.  Every sample is checked against the result.
    """
    pts = [(as_algnum(x), as_algnum(y)) for x, y in samples]
    if len(pts) < num_deg + den_deg + 2:
        raise FitError(f"need at least {num_deg + den_deg + 2} samples, got {len(pts)}")
    if len({x for x, _ in pts}) != len(pts):
        raise FitError("sample abscissae must be distinct")
    pairs = sorted(product(range(num_deg + 1), range(den_deg + 1)), key=lambda d: (d[0] + d[1], d[1]))
    for dn, dd in pairs:
        rows = [[x**i for i in range(dn + 1)] + [-y * x**j for j in range(dd + 1)] for x, y in pts]
        basis = nullspace(rows, dn + dd + 2)
        if len(basis) != 1:
            continue
        v = basis[0]
        p, q = Poly(v[: dn + 1]), Poly(v[dn + 1 :])
        if not q or q.degree != dd:
            continue
        p, q = p / q.lead, q / q.lead
        if all(q(x) and p(x) == y * q(x) for x, y in pts):
            return p, q
    raise FitError("degree bound wrong: no rational function of the given degrees fits every sample")


@dataclass(frozen=True)
class QMFamily:
    """Models indexed by coprime weights ``(a, b)``, with ``mu = a/b`` on an interval.

    ``mu_lo``/``mu_hi`` bound the open interval of admissible ratios
    (``None`` for an infinite end).
    """

    name: str
    builder: Callable[[int, int], SurfaceBlowupModel]
    admissible: Callable[[int, int], bool]
    mu_lo: Fraction | None = None
    mu_hi: Fraction | None = None
    degrees: tuple[int, int] = (2, 2)

    def model(self, a: int, b: int) -> SurfaceBlowupModel:
        if not self.admissible(a, b):
            raise DomainError(f"weights ({a}, {b}) not admissible for {self.name}")
        return self.builder(a, b)


def ratio_at(family: QMFamily, a: int, b: int) -> AlgNum:
    """``A/S`` of the family member with weights ``(a, b)``."""
    m = family.model(a, b)
    return m.log_discrepancy / s_invariant(m)


@dataclass(frozen=True)
class QMResult:
    mu_star: AlgNum | None
    value: AlgNum
    kind: str
    numerator: Poly
    denominator: Poly
    samples: tuple[tuple[AlgNum, AlgNum], ...]

    def __call__(self, mu) -> AlgNum:
        return self.numerator(mu) / self.denominator(mu)

    def to_json(self) -> dict:
        return {
            "mu_star": None if self.mu_star is None else self.mu_star.to_json(),
            "value": self.value.to_json(),
            "kind": self.kind,
            "fit": {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()},
            "samples": [[m.to_json(), v.to_json()] for m, v in self.samples],
        }


def qm_minimize(family: QMFamily, sample_weights: Sequence[tuple[int, int]]) -> QMResult:
    """Exact infimum of ``A/S`` over the family's interval of ratios.

    Interior candidates are the roots of ``P'Q - PQ'``; finite ends of the
    interval and the limit at infinity are compared too.  An end wins only
    as an infimum (the interval is open), reported with ``kind="endpoint"``.
    """
    samples = tuple((AlgNum.rational(Fraction(a, b)), ratio_at(family, a, b)) for a, b in sample_weights)
    p, q = ratfun_fit(samples, *family.degrees)
    crit = p.derivative() * q - p * q.derivative()
    lo = None if family.mu_lo is None else as_algnum(family.mu_lo)
    hi = None if family.mu_hi is None else as_algnum(family.mu_hi)

    def inside(mu: AlgNum) -> bool:
        return (lo is None or mu > lo) and (hi is None or mu < hi)

    interior: list[tuple[AlgNum, AlgNum]] = []
    if crit:
        if crit.degree > 2:
            raise FitError(f"critical-point numerator has degree {crit.degree} > 2")
        for mu in quad_roots(crit):
            if inside(mu) and q(mu):
                interior.append((mu, p(mu) / q(mu)))
    ends: list[tuple[AlgNum | None, AlgNum]] = []
    for e in (lo, hi):
        if e is not None and q(e):
            ends.append((e, p(e) / q(e)))
    if (lo is None or hi is None) and p.degree <= q.degree:
        lim = p.coeff(q.degree) / q.lead
        ends.append((None, lim))
    if not interior and not ends:
        raise DomainError("no admissible critical point and no finite endpoint value")
    best_int = min(interior, key=lambda c: c[1]) if interior else None
    best_end = min(ends, key=lambda c: c[1]) if ends else None
    if best_int is not None and (best_end is None or best_int[1] <= best_end[1]):
        mu, val, kind = best_int[0], best_int[1], "interior"
    else:
        mu, val, kind = best_end[0], best_end[1], "endpoint"
    return QMResult(mu, val, kind, p, q, samples)


@dataclass(frozen=True)
class FGResult:
    breakpoint: AlgNum
    independent: bool
    rank: int
    field: Field

    def to_json(self) -> dict:
        return {
            "breakpoint": self.breakpoint.to_json(),
            "independent": self.independent,
            "rank": self.rank,
            "field": self.field.to_json(),
        }


def fg_check(a0, b0) -> FGResult:
    """Q-linear independence of ``a0``, ``b0`` and the chamber wall ``a0(2a0+3b0)/(2a0+b0)``.

    Independence means the wall is not a rational combination of the two
    weights, which is what rules out finite generation of the associated
    graded ring.  Both weights must already share a field.
    """
    a0, b0 = as_algnum(a0), as_algnum(b0)
    if not (a0 > 0 and b0 > 0 and b0 < 2 * a0):
        raise DomainError("need a0 > 0, b0 > 0 and b0 < 2*a0")
    wall = a0 * (2 * a0 + 3 * b0) / (2 * a0 + b0)
    f = a0.field.compositum(b0.field).compositum(wall.field)
    vecs = [list(x.coordinates_in(f)) for x in (a0, b0, wall)]
    r = rank(vecs)
    return FGResult(wall, r == 3, r, f)


def convergent_weights(mu_num: AlgNum, count: int) -> list[tuple[int, int]]:
    """Continued-fraction convergents ``a/b`` of a positive real number."""
    out: list[tuple[int, int]] = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    x = as_algnum(mu_num)
    for _ in range(count):
        n = math.floor(float(x))
        # the float floor can be off by one near an integer; fix it exactly
        while x < n:
            n -= 1
        while x >= n + 1:
            n += 1
        h0, h1 = h1, n * h1 + h0
        k0, k1 = k1, n * k1 + k0
        out.append((h1, k1))
        frac = x - n
        if not frac:
            break
        x = 1 / frac
    return out


def r_sequence(family: QMFamily, weights: Sequence[tuple[int, int]]) -> list[dict]:
    """``lam``, ``r`` and the bound ``min(lam, r*lam)`` along a sequence of weights."""
    rows = []
    for a, b in weights:
        if not family.admissible(a, b):
            continue
        rep = adjunction_bound(family.model(a, b))
        rows.append({"a": a, "b": b, "lambda": rep.lam, "r": rep.r, "bound": rep.lower_bound})
    return rows
