from fractions import Fraction

import pytest

from kstab.catalog import CubicCase, cubic_model
from kstab.errors import DomainError
from kstab.exactnum import Poly
from kstab.fujita import (
    SurfaceBlowupModel,
    beta,
    c1_degree,
    fixed_part_mults,
    pseff_threshold,
    restricted_volume_fn,
    s_invariant,
    summarize,
    volume_fn,
)
from kstab.zariski import IntersectionLattice

CUBICS = ["eckardt", "tacnode", "cusp", "node", "three_lines", CubicCase.line_conic(2, 1)]
t = Poly.x()


def line_conic_s(a, b):
    return Fraction(10 * a * a + 19 * a * b + 3 * b * b, 9 * (2 * a + b))


def test_tacnode_volume_pieces():
    vol = volume_fn(cubic_model("tacnode"))
    v1 = 3 - t * t / 2
    assert vol.breakpoints == (0, 1, 2, 4)
    assert vol.pieces == (v1, v1 + (t - 1) ** 2 / 3, v1 + (t - 1) ** 2 / 3 + (t - 2) ** 2 / 2)


def test_cusp_volume_pieces():
    vol = volume_fn(cubic_model("cusp"))
    assert vol.pieces == (3 - t * t / 6, (6 - t) ** 2 / 6)


@pytest.mark.parametrize(
    "case, T, S",
    [
        ("tacnode", 4, Fraction(17, 9)),
        ("cusp", 6, 3),
        ("node", 2, Fraction(7, 6)),
        ("three_lines", 2, Fraction(11, 9)),
        ("eckardt", 3, Fraction(4, 3)),
        (CubicCase.line_conic(2, 1), 3, Fraction(9, 5)),
    ],
    ids=str,
)
def test_thresholds(case, T, S):
    m = cubic_model(case)
    assert pseff_threshold(m) == T
    assert s_invariant(m) == S
    assert volume_fn(m)(0) == m.polarization_volume


def test_fixed_parts():
    assert fixed_part_mults(cubic_model("tacnode")) == {"P0": 0, "P1": Fraction(17, 54), "P2": Fraction(4, 27)}
    assert fixed_part_mults(cubic_model("cusp"))["P2"] == Fraction(1, 6)
    f = fixed_part_mults(cubic_model("node"))
    assert f["P1"] == f["P2"] > 0


@pytest.mark.parametrize("a, b", [(2, 1), (3, 2), (5, 3), (7, 4), (1, 1), (4, 1), (7, 5)])
def test_line_conic_closed_forms(a, b):
    # independent formulas for S, the restricted volume and the fixed part
    m = cubic_model(CubicCase.line_conic(a, b))
    assert s_invariant(m) == line_conic_s(a, b)
    rv = restricted_volume_fn(m)
    w = Fraction(a * (2 * a + 3 * b), 2 * a + b)
    assert rv.breakpoints == (0, b, w, a + b)
    assert rv.pieces == (t / (a * b), (t + a) / (a * (a + b)), (a + b - t) * Fraction(4, b * b))
    mu = Fraction(a, b)
    c1 = (20 * mu**3 - 8 * mu**2 + mu + 1) / (9 * mu * (2 * mu + 1) ** 2)
    c2 = Fraction(4) / (9 * (2 * mu + 1) ** 2)
    f = fixed_part_mults(m)
    assert f["P1"] == c1 / b and f["P2"] == c2 / a


def test_c1_and_beta():
    tac = cubic_model("tacnode")
    assert c1_degree(tac) == Fraction(17, 18)
    assert beta(tac) == Fraction(10, 9)
    assert beta(cubic_model("node")) == Fraction(5, 6)
    assert c1_degree(cubic_model("eckardt")) == Fraction(4, 3)
    assert c1_degree(tac, s=0) == 0


def test_ample_model_without_curves():
    lat = IntersectionLattice(("H", "E"), ((1, 0), (0, -1)))
    m = SurfaceBlowupModel(lat, 2, (), {}, "P2")
    s = summarize(m)
    assert s.t == 1 and s.s == Fraction(2, 3) and s.fixed_part_mults == {}
    assert s.beta == Fraction(4, 3)


def test_model_validation():
    lat = cubic_model("tacnode").lattice
    with pytest.raises(DomainError):
        SurfaceBlowupModel(lat, 3, (("P0", 1),), {"Ltilde": (("P1", 1),), "Qtilde": (("P2", 1),)})
    with pytest.raises(DomainError):
        SurfaceBlowupModel(lat, 3, (), {"Ltilde": (("P1", 2),), "Qtilde": (("P2", 1),)})
    with pytest.raises(DomainError):
        SurfaceBlowupModel(lat, 3, (), {"Ltilde": (("P1", 1),)})


def test_model_json_roundtrip():
    m = cubic_model(CubicCase.line_conic(3, 2))
    back = SurfaceBlowupModel.from_json(m.to_json())
    assert back.to_json() == m.to_json()
    assert summarize(back).s == summarize(m).s
    with pytest.raises(DomainError):
        SurfaceBlowupModel.from_json({"lattice": {}})


@pytest.mark.parametrize("case", CUBICS, ids=str)
def test_tian_inequality(case):
    m = cubic_model(case)
    assert s_invariant(m) < Fraction(2, 3) * pseff_threshold(m)


@pytest.mark.parametrize("case", CUBICS, ids=str)
def test_restricted_volume_identity(case):
    m = cubic_model(case)
    vol, rv = volume_fn(m), restricted_volume_fn(m)
    for p, r in zip(vol.pieces, rv.pieces):
        assert r == p.derivative() * Fraction(-1, 2)
    assert rv(0) == 0
    assert rv.integrate(0, pseff_threshold(m)) == m.polarization_volume / 2


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("case", CUBICS, ids=str)
def test_scaling(case, k):
    m = cubic_model(case)
    mk = m.scaled(k)
    assert s_invariant(mk) == k * s_invariant(m)
    assert pseff_threshold(mk) == k * pseff_threshold(m)
    assert c1_degree(mk) == k * c1_degree(m)


@pytest.mark.parametrize("case", CUBICS, ids=str)
def test_summary_invariants(case):
    m = cubic_model(case)
    s = summarize(m)
    assert 0 < s.s < s.t
    assert s.beta == m.log_discrepancy - s.s
    assert s.c1_degree > 0
    assert all(v >= 0 for v in s.fixed_part_mults.values())
    on_curves = {p for pts in m.incidence.values() for p, _ in pts}
    assert all(v == 0 for p, v in s.fixed_part_mults.items() if p not in on_curves)
