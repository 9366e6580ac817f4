from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kstab.adjunction import (
    FitError,
    PonePair,
    QMFamily,
    adjunction_bound,
    convergent_weights,
    delta_pone,
    fg_check,
    qm_minimize,
    r_sequence,
    ratfun_fit,
    ratio_at,
)
from kstab.catalog import DEFAULT_LINE_CONIC_WEIGHTS, CubicCase, cubic_model, line_conic_family
from kstab.errors import DomainError
from kstab.exactnum import AlgNum, Field, Poly
from kstab.fujita import SurfaceBlowupModel
from kstab.zariski import IntersectionLattice

s2 = AlgNum.quad(0, 1, 2)
MU_STAR = AlgNum.quad(Fraction(1, 2), Fraction(1, 2), 6)
VALUE = AlgNum.quad(Fraction(225, 241), Fraction(72, 241), 6)


def closed_ratio(mu):
    return 9 * (mu + 1) * (2 * mu + 1) / (10 * mu * mu + 19 * mu + 3)


def test_delta_pone_examples():
    assert delta_pone(PonePair((("P0", Fraction(1, 2)), ("P1", Fraction(1, 2)), ("P2", Fraction(4, 17))))) == Fraction(17, 13)
    assert delta_pone(PonePair()) == 1
    assert delta_pone(PonePair((("P1", Fraction(2, 3)), ("P2", Fraction(2, 3))))) == 1


def test_pone_pair_validation():
    with pytest.raises(DomainError):
        PonePair((("P", 1),))
    with pytest.raises(DomainError):
        PonePair((("P", Fraction(-1, 3)),))
    with pytest.raises(DomainError):
        PonePair(tuple((f"P{i}", Fraction(9, 10)) for i in range(3)))
    with pytest.raises(DomainError):
        PonePair((("P", Fraction(1, 2)), ("P", Fraction(1, 3))))


coeffs = st.lists(st.fractions(min_value=0, max_value=Fraction(29, 30), max_denominator=30), max_size=5)


@given(coeffs, st.randoms(use_true_random=False))
def test_delta_pone_relabel_and_pad(cs, rnd):
    if sum(cs) >= 2:
        return
    base = PonePair(tuple((f"P{i}", c) for i, c in enumerate(cs)))
    shuffled = list(cs)
    rnd.shuffle(shuffled)
    other = PonePair(tuple((f"Q{i}", c) for i, c in enumerate(shuffled)) + (("Z", 0),))
    assert delta_pone(base) == delta_pone(other)


def test_adjunction_tacnode():
    rep = adjunction_bound(cubic_model("tacnode"))
    assert rep.lam == Fraction(27, 17)
    assert rep.induced_pair.points == (("P0", Fraction(1, 2)), ("P1", Fraction(1, 2)), ("P2", Fraction(4, 17)))
    assert rep.r == Fraction(17, 13)
    assert rep.lower_bound == Fraction(27, 17) and rep.tight


def test_adjunction_cusp_and_node():
    rep = adjunction_bound(cubic_model("cusp"))
    assert rep.lam == Fraction(5, 3)
    assert dict(rep.induced) == {"P0": Fraction(1, 2), "P1": Fraction(2, 3), "P2": Fraction(5, 18)}
    assert rep.lower_bound == Fraction(5, 3)
    rep = adjunction_bound(cubic_model("node"))
    assert rep.lam == Fraction(12, 7)
    a = dict(rep.induced)
    assert a["P1"] == a["P2"] and rep.r >= 1 and rep.lower_bound == Fraction(12, 7)


def test_adjunction_empty_boundary():
    lat = IntersectionLattice(("H", "E"), ((1, 0), (0, -1)))
    rep = adjunction_bound(SurfaceBlowupModel(lat, 2, (), {}))
    assert rep.induced == () and rep.r == 1 and rep.lower_bound == rep.lam


def test_adjunction_degenerate_is_reported():
    # a single curve through one point with a heavy different pushes the coefficient past 1
    lat = IntersectionLattice(("H", "E", "C"), ((3, 0, 3), (0, -1, 2), (3, 2, -1)))
    m = SurfaceBlowupModel(lat, 2, (("P1", Fraction(95, 100)),), {"C": (("P1", 2),)})
    rep = adjunction_bound(m)
    assert rep.degenerate and rep.r is None and rep.lower_bound is None and not rep.tight
    with pytest.raises(DomainError):
        rep.induced_pair


def test_adjunction_bound_not_above_lambda():
    for case in ["tacnode", "cusp", "node", "three_lines", "eckardt", CubicCase.line_conic(3, 2)]:
        rep = adjunction_bound(cubic_model(case))
        assert rep.lower_bound <= rep.lam
        assert rep.tight == (rep.lower_bound == rep.lam)


def test_ratfun_fit_examples():
    mus = [Fraction(i) for i in range(1, 7)]
    p, q = ratfun_fit([(m, closed_ratio(m)) for m in mus], 2, 2)
    assert q == Poly([Fraction(3, 10), Fraction(19, 10), 1])
    assert p == Poly([Fraction(9, 10), Fraction(27, 10), Fraction(9, 5)])
    p, q = ratfun_fit([(m, Fraction(7, 3)) for m in mus], 2, 2)
    assert (p, q) == (Poly.const(Fraction(7, 3)), Poly.const(1))
    p, q = ratfun_fit([(m, m) for m in mus[:3]], 1, 0)
    assert (p, q) == (Poly.x(), Poly.const(1))


def test_ratfun_fit_errors():
    with pytest.raises(FitError):
        ratfun_fit([(1, 1), (2, 2)], 2, 2)
    with pytest.raises(FitError):
        ratfun_fit([(Fraction(i), Fraction(i) ** 3) for i in range(1, 6)], 1, 1)


def test_qm_minimize_line_conic():
    res = qm_minimize(line_conic_family(), DEFAULT_LINE_CONIC_WEIGHTS)
    assert res.kind == "interior"
    assert res.mu_star == MU_STAR
    assert res.value == VALUE
    assert res.value * (25 - 8 * AlgNum.quad(0, 1, 6)) == 9


def test_qm_fit_agrees_with_direct_and_closed_form():
    fam = line_conic_family()
    res = qm_minimize(fam, DEFAULT_LINE_CONIC_WEIGHTS[:6])
    for a, b in [(5, 3), (7, 4), (9, 5)]:
        direct = ratio_at(fam, a, b)
        assert res(Fraction(a, b)) == direct == closed_ratio(Fraction(a, b))


def _constant_family():
    lat = IntersectionLattice(("H", "E"), ((1, 0), (0, -1)))
    return QMFamily(
        "const",
        builder=lambda a, b: SurfaceBlowupModel(lat, 2, (), {}),
        admissible=lambda a, b: a > 0 and b > 0,
        mu_lo=Fraction(0),
    )


def test_qm_constant_family_reports_endpoint():
    res = qm_minimize(_constant_family(), [(1, 1), (2, 1), (3, 1), (3, 2), (1, 2), (1, 3)])
    assert res.kind == "endpoint" and res.value == 3


def test_fg_check_examples():
    res = fg_check(2, 1)
    assert res.breakpoint == Fraction(14, 5) and not res.independent and res.rank <= 2
    res = fg_check(s2, 1)
    assert res.breakpoint == (8 + 5 * s2) / 7 and not res.independent
    f = Field.biquad(2, 3)
    res = fg_check((1 + s2).lift(f), AlgNum.quad(0, 1, 3).lift(f))
    assert res.independent and res.rank == 3
    with pytest.raises(DomainError):
        fg_check(1, 2)


@given(
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=20),
    st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=20),
)
def test_fg_check_rational_always_dependent(a, b):
    if not b < 2 * a:
        return
    assert not fg_check(a, b).independent


def test_convergents_and_r_sequence():
    ws = convergent_weights(MU_STAR, 6)
    assert ws[:4] == [(1, 1), (2, 1), (5, 3), (7, 4)]
    rows = r_sequence(line_conic_family(), ws)
    assert len(rows) == len(ws)
    # the bound never exceeds the true delta, and approaches it
    assert all(r["bound"] <= VALUE for r in rows)
    assert abs(float(rows[-1]["bound"]) - float(VALUE)) < 1e-3
