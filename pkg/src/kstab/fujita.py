"""Volumes, thresholds and refinement data for a divisor ``E`` over a surface.

Everything is read off the chambers of ``P0 - tE``: the volume is the
square of the positive part, ``P.E`` is the restricted volume, and the
negative part restricted to ``E`` feeds the fixed part of the refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError
from .exactnum import AlgNum, Field, PiecewisePoly, Poly, as_algnum
from .zariski import IntersectionLattice, ZariskiChamber, nef_chambers, pair

__all__ = [
    "SurfaceBlowupModel",
    "RefinementSummary",
    "volume_fn",
    "pseff_threshold",
    "s_invariant",
    "restricted_volume_fn",
    "fixed_part_mults",
    "c1_degree",
    "beta",
    "summarize",
]


@dataclass(frozen=True, eq=False)
class SurfaceBlowupModel:
    """A polarized surface with a divisor ``E`` over a point, as lattice data.

    ``diff_points`` lists the different on ``E`` as ``(label, coefficient)``
    pairs and ``incidence`` maps each candidate curve to the points where it
    meets ``E`` with their local intersection numbers.  Those numbers are
    rational for weighted blow-ups (a curve through a cyclic quotient point
    of ``E``), so only positivity is required, together with
    ``sum of multiplicities = (C.E)``.
    """

    lattice: IntersectionLattice
    log_discrepancy: AlgNum
    diff_points: tuple[tuple[str, AlgNum], ...] = ()
    incidence: dict[str, tuple[tuple[str, AlgNum], ...]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        lat = self.lattice
        object.__setattr__(self, "log_discrepancy", as_algnum(self.log_discrepancy))
        diff = tuple((str(p), as_algnum(c)) for p, c in self.diff_points)
        object.__setattr__(self, "diff_points", diff)
        inc = {str(c): tuple((str(p), as_algnum(m)) for p, m in pts) for c, pts in self.incidence.items()}
        object.__setattr__(self, "incidence", inc)
        if not self.log_discrepancy > 0:
            raise DomainError("log discrepancy must be positive")
        labels = [p for p, _ in diff]
        if len(set(labels)) != len(labels):
            raise DomainError("repeated point label in the different")
        for p, c in diff:
            if c < 0 or c >= 1:
                raise DomainError(f"different coefficient at {p} must lie in [0, 1), got {c}")
        e = lat.basis(lat.exceptional)
        for curve in lat.curves:
            pts = inc.get(curve, ())
            if any(not m > 0 for _, m in pts):
                raise DomainError(f"incidence multiplicities of {curve} must be positive")
            total = sum((m for _, m in pts), AlgNum.rational(0))
            if total != pair(lat.basis(curve), e):
                raise DomainError(f"incidence of {curve} sums to {total}, but ({curve}.E) = {pair(lat.basis(curve), e)}")
        unknown = set(inc) - set(lat.curves)
        if unknown:
            raise DomainError(f"incidence given for unknown curves {sorted(unknown)}")

    @property
    def polarization_volume(self) -> AlgNum:
        return self.lattice.gram[0][0]

    @property
    def points(self) -> list[str]:
        """Every labelled point on ``E``, in first-seen order."""
        seen: dict[str, None] = {}
        for p, _ in self.diff_points:
            seen.setdefault(p)
        for curve in self.lattice.curves:
            for p, _ in self.incidence.get(curve, ()):
                seen.setdefault(p)
        return list(seen)

    @cached_property
    def chambers(self) -> list[ZariskiChamber]:
        return nef_chambers(self.lattice)

    def scaled(self, k) -> SurfaceBlowupModel:
        """Replace the polarization by ``k`` times itself; ``E`` and ``A`` are unchanged."""
        return SurfaceBlowupModel(
            self.lattice.scaled(k), self.log_discrepancy, self.diff_points, self.incidence, self.name
        )

    def field(self) -> Field:
        f = self.lattice.field().compositum(self.log_discrepancy.field)
        for _, c in self.diff_points:
            f = f.compositum(c.field)
        return f

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lattice": self.lattice.to_json(),
            "log_discrepancy": self.log_discrepancy.to_json(),
            "diff_points": [[p, c.to_json()] for p, c in self.diff_points],
            "incidence": {c: [[p, m.to_json()] for p, m in pts] for c, pts in self.incidence.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> SurfaceBlowupModel:
        try:
            return cls(
                lattice=IntersectionLattice.from_json(obj["lattice"]),
                log_discrepancy=AlgNum.from_json(obj["log_discrepancy"]),
                diff_points=tuple((p, AlgNum.from_json(c)) for p, c in obj.get("diff_points", [])),
                incidence={
                    c: tuple((p, AlgNum.from_json(m)) for p, m in pts)
                    for c, pts in obj.get("incidence", {}).items()
                },
                name=obj.get("name", ""),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed model description: {exc}") from exc


def volume_fn(model: SurfaceBlowupModel) -> PiecewisePoly:
    chs = model.chambers
    return PiecewisePoly([chs[0].t_lo] + [c.t_hi for c in chs], [c.vol_piece for c in chs])


def pseff_threshold(model: SurfaceBlowupModel) -> AlgNum:
    return model.chambers[-1].t_hi


def s_invariant(model: SurfaceBlowupModel) -> AlgNum:
    vol = volume_fn(model)
    return vol.integrate(0, pseff_threshold(model)) / model.polarization_volume


def restricted_volume_fn(model: SurfaceBlowupModel) -> PiecewisePoly:
    chs = model.chambers
    return PiecewisePoly([chs[0].t_lo] + [c.t_hi for c in chs], [c.restricted for c in chs])


def fixed_part_mults(model: SurfaceBlowupModel) -> dict[str, AlgNum]:
    """Multiplicity of the asymptotic fixed part of the refinement at each point of ``E``.

    ``(2/vol) * integral of (P.E)(t) * (N(t)|_E at the point)``; points that no
    candidate curve passes through get 0.
    """
    out = {p: AlgNum.rational(0) for p in model.points}
    for ch in model.chambers:
        restricted_at: dict[str, Poly] = {}
        for curve, coeff in ch.neg_coeffs.items():
            for p, m in model.incidence.get(curve, ()):
                restricted_at[p] = restricted_at.get(p, Poly()) + coeff * m
        for p, poly in restricted_at.items():
            out[p] = out[p] + (ch.restricted * poly).integral(ch.t_lo, ch.t_hi)
    scale = AlgNum.rational(2) / model.polarization_volume
    return {p: v * scale for p, v in out.items()}


def c1_degree(model: SurfaceBlowupModel, s: AlgNum | None = None) -> AlgNum:
    """Degree of ``(P0 - S*E)|_E``."""
    lat = model.lattice
    s = s_invariant(model) if s is None else s
    e = lat.basis(lat.exceptional)
    return pair(lat.basis(lat.polarization) - e * s, e)


def beta(model: SurfaceBlowupModel) -> AlgNum:
    return model.log_discrepancy - s_invariant(model)


@dataclass(frozen=True)
class RefinementSummary:
    s: AlgNum
    t: AlgNum
    volume: PiecewisePoly
    restricted_volume: PiecewisePoly
    fixed_part_mults: dict[str, AlgNum]
    c1_degree: AlgNum
    beta: AlgNum

    def to_json(self) -> dict:
        return {
            "S": self.s.to_json(),
            "T": self.t.to_json(),
            "volume": self.volume.to_json(),
            "restricted_volume": self.restricted_volume.to_json(),
            "fixed_part_mults": {p: v.to_json() for p, v in self.fixed_part_mults.items()},
            "c1_degree": self.c1_degree.to_json(),
            "beta": self.beta.to_json(),
        }


def summarize(model: SurfaceBlowupModel) -> RefinementSummary:
    s = s_invariant(model)
    return RefinementSummary(
        s=s,
        t=pseff_threshold(model),
        volume=volume_fn(model),
        restricted_volume=restricted_volume_fn(model),
        fixed_part_mults=fixed_part_mults(model),
        c1_degree=c1_degree(model, s),
        beta=model.log_discrepancy - s,
    )
