"""Preset models and closed-form reports.

Cubic surfaces: ``x`` is a point of a smooth cubic surface and ``C`` its
tangent hyperplane section.  Each case blows up ``x`` (ordinary or weighted)
and records the lattice spanned by ``P0 = -pi^*K``, ``E`` and the strict
transforms of the components of ``C`` through ``x``.

Conventions used for the implied entries below.  For a weighted blow-up with
weights ``(a, b)`` (``a`` on the first local coordinate):

* ``(E^2) = -1/(ab)`` and ``A(E) = a + b``;
* a curve with ``v_E(C) = v`` has ``(C~.E) = v/(ab)`` and
  ``(C~^2) = (C^2) - v^2/(ab)``;
* ``(P0.C~) = (-K.C) = deg C`` for a curve of degree ``deg C`` on the cubic;
* on the cubic, lines have ``(L^2) = -1`` and conics ``(Q^2) = 0``.

``E`` is a P^1 with cyclic quotient points of index ``a`` and ``b``; the
different has coefficient ``1 - 1/m`` at a point of index ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .adjunction import QMFamily, QMResult, adjunction_bound, qm_minimize
from .errors import DomainError
from .exactnum import AlgNum, PiecewisePoly, Poly, as_algnum, sqrt, squarefree_decomposition
from .fujita import SurfaceBlowupModel, s_invariant
from .zariski import IntersectionLattice

__all__ = [
    "CubicCase",
    "CASE_NAMES",
    "TABLE_ORDER",
    "cubic_model",
    "line_conic_family",
    "line_conic_minimum",
    "DEFAULT_LINE_CONIC_WEIGHTS",
    "cubic_delta",
    "EckardtReport",
    "eckardt_report",
    "small_deg_bound",
    "secant_line_s",
    "IndexTwoReport",
    "index_two_report",
]

CASE_NAMES = ("eckardt", "tacnode", "cusp", "node", "three_lines", "line_conic")
# row order of the published table
TABLE_ORDER = ("eckardt", "tacnode", "cusp", "three_lines", "node", "line_conic")

DEFAULT_LINE_CONIC_WEIGHTS = ((1, 1), (2, 1), (3, 1), (3, 2), (4, 3), (5, 2), (5, 3))


@dataclass(frozen=True)
class CubicCase:
    kind: str
    a: int | None = None
    b: int | None = None

    def __post_init__(self) -> None:
        kind = self.kind.replace("-", "_")
        object.__setattr__(self, "kind", kind)
        if kind not in CASE_NAMES:
            raise DomainError(f"unknown cubic case {self.kind!r}; expected one of {', '.join(CASE_NAMES)}")
        if kind == "line_conic":
            a, b = (2, 1) if self.a is None and self.b is None else (self.a, self.b)
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
            if not _line_conic_ok(a, b):
                raise DomainError(f"line_conic weights need coprime a, b > 0 with b < 2a, got ({a}, {b})")
        elif self.a is not None or self.b is not None:
            raise DomainError(f"case {kind} takes no weights")

    @classmethod
    def line_conic(cls, a: int, b: int) -> CubicCase:
        return cls("line_conic", a, b)

    @property
    def label(self) -> str:
        return f"line_conic({self.a},{self.b})" if self.kind == "line_conic" else self.kind


def _line_conic_ok(a, b) -> bool:
    return isinstance(a, int) and isinstance(b, int) and a > 0 and b > 0 and b < 2 * a and gcd(a, b) == 1


def _lattice(classes, gram) -> IntersectionLattice:
    return IntersectionLattice(tuple(classes), tuple(tuple(Fraction(x) for x in row) for row in gram))


def cubic_model(case: CubicCase | str) -> SurfaceBlowupModel:
    if isinstance(case, str):
        case = CubicCase(case)
    k = case.kind
    h = Fraction(1, 2)
    if k == "eckardt":
        # C = three lines through x; ordinary blow-up, (L~i^2) = -1 - 1
        g = [
            [3, 0, 1, 1, 1],
            [0, -1, 1, 1, 1],
            [1, 1, -2, 0, 0],
            [1, 1, 0, -2, 0],
            [1, 1, 0, 0, -2],
        ]
        lat = _lattice(["-K", "E", "L1", "L2", "L3"], g)
        inc = {"L1": (("P1", 1),), "L2": (("P2", 1),), "L3": (("P3", 1),)}
        return SurfaceBlowupModel(lat, 2, (), inc, case.label)
    if k == "tacnode":
        # weights (2,1): v(L) = v(Q) = 2, (E^2) = -1/2
        g = [
            [3, 0, 1, 2],
            [0, -h, 1, 1],
            [1, 1, -3, 0],
            [2, 1, 0, -2],
        ]
        lat = _lattice(["-K", "E", "Ltilde", "Qtilde"], g)
        inc = {"Ltilde": (("P1", 1),), "Qtilde": (("P2", 1),)}
        return SurfaceBlowupModel(lat, 3, (("P0", h),), inc, case.label)
    if k == "cusp":
        # weights (3,2): v(C) = 6, (E^2) = -1/6, (C~^2) = 3 - 36/6
        g = [
            [3, 0, 3],
            [0, Fraction(-1, 6), 1],
            [3, 1, -3],
        ]
        lat = _lattice(["-K", "E", "Ctilde"], g)
        inc = {"Ctilde": (("P2", 1),)}
        return SurfaceBlowupModel(lat, 5, (("P0", h), ("P1", Fraction(2, 3))), inc, case.label)
    if k == "node":
        # ordinary blow-up, both branches through x: (C~.E) = 2, (C~^2) = 3 - 4
        g = [
            [3, 0, 3],
            [0, -1, 2],
            [3, 2, -1],
        ]
        lat = _lattice(["-K", "E", "Ctilde"], g)
        inc = {"Ctilde": (("P1", 1), ("P2", 1))}
        return SurfaceBlowupModel(lat, 2, (), inc, case.label)
    if k == "three_lines":
        # L1, L2 through x, L3 meets each of them away from x
        g = [
            [3, 0, 1, 1, 1],
            [0, -1, 1, 1, 0],
            [1, 1, -2, 0, 1],
            [1, 1, 0, -2, 1],
            [1, 0, 1, 1, -1],
        ]
        lat = _lattice(["-K", "E", "L1tilde", "L2tilde", "L3"], g)
        inc = {"L1tilde": (("P1", 1),), "L2tilde": (("P2", 1),)}
        return SurfaceBlowupModel(lat, 2, (), inc, case.label)
    a, b = case.a, case.b
    ab = Fraction(a * b)
    # weight a on the line's local equation, b on the conic's: v(L) = a, v(Q) = b
    g = [
        [3, 0, 1, 2],
        [0, -1 / ab, Fraction(1, b), Fraction(1, a)],
        [1, Fraction(1, b), -1 - Fraction(a, b), 1],
        [2, Fraction(1, a), 1, -Fraction(b, a)],
    ]
    lat = _lattice(["-K", "E", "Ltilde", "Qtilde"], g)
    diff = tuple((p, c) for p, c in (("P1", 1 - Fraction(1, b)), ("P2", 1 - Fraction(1, a))) if c)
    inc = {"Ltilde": (("P1", Fraction(1, b)),), "Qtilde": (("P2", Fraction(1, a)),)}
    return SurfaceBlowupModel(lat, a + b, diff, inc, case.label)


def line_conic_family() -> QMFamily:
    return QMFamily(
        name="line-conic",
        builder=lambda a, b: cubic_model(CubicCase.line_conic(a, b)),
        admissible=_line_conic_ok,
        mu_lo=Fraction(1, 2),
        mu_hi=None,
        degrees=(2, 2),
    )


def line_conic_minimum(weights=DEFAULT_LINE_CONIC_WEIGHTS) -> QMResult:
    return qm_minimize(line_conic_family(), weights)


def cubic_delta(case: CubicCase | str) -> AlgNum:
    """``delta_x`` of the cubic surface at a point of the given type."""
    if isinstance(case, str):
        case = CubicCase(case)
    if case.kind == "eckardt":
        return eckardt_report(2, 3).delta_x
    if case.kind == "line_conic":
        return line_conic_minimum().value
    rep = adjunction_bound(cubic_model(case))
    if not rep.tight:
        raise DomainError(f"adjunction bound for {case.label} is not tight (r = {rep.r})")
    return rep.lower_bound


@dataclass(frozen=True)
class EckardtReport:
    """Ordinary blow-up of a generalized Eckardt point on a degree ``d`` hypersurface in ``P^(n+1)``."""

    n: int
    d: int
    s_h: AlgNum
    s_h_integral: AlgNum
    f_coeff: AlgNum
    delta_h: AlgNum
    delta_x: AlgNum | None
    volume: PiecewisePoly
    assumes_kss_base: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "S_H": self.s_h.to_json(),
            "S_H_integral": self.s_h_integral.to_json(),
            "F_coeff": self.f_coeff.to_json(),
            "delta_H": self.delta_h.to_json(),
            "delta_X": None if self.delta_x is None else self.delta_x.to_json(),
            "volume": self.volume.to_json(),
            "assumption_kss_of_lines_through_x": self.assumes_kss_base,
        }


def eckardt_report(n: int, d: int) -> EckardtReport:
    if n < 1 or d < 1:
        raise DomainError("need n >= 1 and d >= 1")
    t = Poly.x()
    first = Poly.const(d) - t**n
    if d == 1:
        vol = PiecewisePoly([0, 1], [first])
    else:
        second = (Poly.const(d) - t) ** n / Fraction(d - 1) ** (n - 1)
        vol = PiecewisePoly([0, 1, d], [first, second])
    s_int = vol.integrate(0, d) / d
    s_h = AlgNum.rational(Fraction(d + n - 1, n + 1))
    if s_int != s_h:
        raise AssertionError(f"integral {s_int} disagrees with closed form {s_h}")
    delta_x = None
    if d <= n + 1:
        delta_x = AlgNum.rational(Fraction(n * (n + 1), (n - 1 + d) * (n + 2 - d)))
    return EckardtReport(
        n=n,
        d=d,
        s_h=s_h,
        s_h_integral=s_int,
        f_coeff=AlgNum.rational(Fraction(1, n + 1) * (1 - Fraction(1, d))),
        delta_h=AlgNum.rational(Fraction(n * (n + 1), d + n - 1)),
        delta_x=delta_x,
        volume=vol,
        # the lines through x form a Fano hypersurface only when d <= n - 1; its
        # K-semistability is then taken on trust
        assumes_kss_base=2 <= d <= n - 1,
    )


def small_deg_bound(n: int, vol_l) -> AlgNum:
    """``(n+1)/(L^n)``."""
    vol_l = as_algnum(vol_l)
    if not vol_l > 0:
        raise DomainError("volume must be positive")
    return (n + 1) / vol_l


def secant_line_s(n: int) -> AlgNum:
    """``S(H; L)`` for a line ``L`` on a smooth degree ``n`` surface in P^3, via the lattice engine.

    ``(H^2) = n``, ``(H.L) = 1``, ``(L^2) = 2 - n``; no negative curves are
    needed since ``H - L`` is nef.
    """
    lat = _lattice(["H", "L"], [[n, 1], [1, 2 - n]])
    return s_invariant(SurfaceBlowupModel(lat, 1, (), {}, f"secant({n})"))


@dataclass(frozen=True)
class IndexTwoReport:
    n: int
    s_tail: AlgNum
    c1_tail_deg: AlgNum
    curve_bound: AlgNum
    eta_bound: AlgNum
    point_bound: AlgNum
    checks: dict[str, bool]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s_tail": self.s_tail.to_json(),
            "c1_tail_deg": self.c1_tail_deg.to_json(),
            "curve_bound": self.curve_bound.to_json(),
            "eta_bound": self.eta_bound.to_json(),
            "eta_bound_field": self.eta_bound.field.to_json(),
            "point_bound": self.point_bound.to_json(),
            "checks": dict(self.checks),
        }


def index_two_report(n: int) -> IndexTwoReport:
    if n < 4:
        raise DomainError("index-two report needs n >= 4")
    s_hl = secant_line_s(n)
    if s_hl != Fraction(2, 3) - Fraction(1, 3 * n):
        raise AssertionError(f"lattice value S(H;L) = {s_hl} disagrees with 2/3 - 1/(3n)")
    s_tail = Fraction(6, n + 1) * s_hl
    c1 = Fraction(4, n + 1) * (n - 1 + Fraction(1, n))
    curve = 4 / c1
    eta = 2 * sqrt(n)
    k, d = squarefree_decomposition(n)
    # n^(3/2) = n*sqrt(n), lives in Q(sqrt d) (or Q when n is a square)
    p1 = AlgNum.rational(Fraction(4 * n - 2, n + 1))
    p2 = AlgNum.rational(Fraction(2 * n, n + 1)) * (AlgNum.rational(k) if d == 1 else AlgNum.quad(0, k, d))
    point = p1 if p1 >= p2 else p2
    checks = {
        "s_tail_below_n_over_n_plus_1": s_tail < Fraction(n, n + 1),
        "c1_tail_below_4n_over_n_plus_1": c1 < Fraction(4 * n, n + 1),
        "curve_bound_at_least_n_plus_1_over_n": curve >= Fraction(n + 1, n),
        "point_bound_below_n": point < n,
    }
    return IndexTwoReport(
        n=n,
        s_tail=s_tail,
        c1_tail_deg=AlgNum.rational(c1),
        curve_bound=AlgNum.rational(curve),
        eta_bound=eta,
        point_bound=point,
        checks=checks,
    )
