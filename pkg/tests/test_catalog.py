from fractions import Fraction

import pytest

from kstab.catalog import (
    TABLE_ORDER,
    CubicCase,
    cubic_delta,
    cubic_model,
    eckardt_report,
    index_two_report,
    secant_line_s,
    small_deg_bound,
)
from kstab.errors import DomainError
from kstab.exactnum import AlgNum
from kstab.zariski import pair

TABLE = {
    "eckardt": Fraction(3, 2),
    "tacnode": Fraction(27, 17),
    "cusp": Fraction(5, 3),
    "three_lines": Fraction(18, 11),
    "node": Fraction(12, 7),
    "line_conic": 9 / (25 - 8 * AlgNum.quad(0, 1, 6)),
}


@pytest.mark.parametrize("case", TABLE_ORDER)
def test_cubic_table(case):
    assert cubic_delta(case) == TABLE[case]


def test_case_validation():
    with pytest.raises(DomainError):
        CubicCase("quartic")
    with pytest.raises(DomainError):
        CubicCase.line_conic(1, 2)
    with pytest.raises(DomainError):
        CubicCase.line_conic(4, 2)
    with pytest.raises(DomainError):
        CubicCase("tacnode", 2, 1)
    assert CubicCase("line-conic") == CubicCase.line_conic(2, 1)


def test_model_entries():
    tac = cubic_model("tacnode")
    assert tac.log_discrepancy == 3
    assert tac.lattice.entry("E", "E") == Fraction(-1, 2)
    assert tac.lattice.curves == ("Ltilde", "Qtilde")
    node = cubic_model("node")
    assert node.log_discrepancy == 2 and node.lattice.entry("E", "E") == -1
    assert node.lattice.entry("Ctilde", "E") == 2 and len(node.incidence["Ctilde"]) == 2
    lc = cubic_model(CubicCase.line_conic(2, 1))
    assert lc.log_discrepancy == 3
    assert lc.lattice.entry("Ltilde", "Ltilde") == -3
    assert lc.lattice.entry("Qtilde", "Qtilde") == Fraction(-1, 2)


def test_tacnode_class_identity():
    lat = cubic_model("tacnode").lattice
    d = lat.divisor(**{"-K": 1, "E": -4})
    lq = lat.basis("Ltilde") + lat.basis("Qtilde")
    assert pair(d, d) == pair(lq, lq)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("d", range(2, 7))
def test_eckardt_integral(n, d):
    rep = eckardt_report(n, d)
    assert rep.s_h_integral == rep.s_h == Fraction(d + n - 1, n + 1)
    assert rep.delta_h * rep.s_h == n


def test_eckardt_values():
    assert eckardt_report(2, 3).delta_x == Fraction(3, 2)
    assert eckardt_report(3, 3).delta_x == Fraction(6, 5)
    for n in range(2, 7):
        assert eckardt_report(n, 2).delta_x == 1
    assert eckardt_report(3, 1).delta_x == 1
    assert eckardt_report(2, 5).delta_x is None
    assert eckardt_report(5, 3).assumes_kss_base and not eckardt_report(2, 3).assumes_kss_base
    assert eckardt_report(2, 3).f_coeff == Fraction(2, 9)


def test_eckardt_lattice_cross_check():
    from kstab.fujita import summarize

    s = summarize(cubic_model("eckardt"))
    rep = eckardt_report(2, 3)
    assert s.s == rep.s_h and s.t == 3
    assert set(s.fixed_part_mults.values()) == {rep.f_coeff}


def test_small_deg():
    assert small_deg_bound(1, 2) == 1
    assert small_deg_bound(2, 1) == 3
    assert small_deg_bound(3, 4) == 1
    with pytest.raises(DomainError):
        small_deg_bound(2, 0)


def test_index_two_n4():
    rep = index_two_report(4)
    assert (rep.s_tail, rep.c1_tail_deg, rep.curve_bound, rep.point_bound) == (
        Fraction(7, 10), Fraction(13, 5), Fraction(20, 13), Fraction(16, 5))
    assert rep.eta_bound == 4


def test_index_two_n5_irrational():
    rep = index_two_report(5)
    assert rep.point_bound == Fraction(5, 3) * AlgNum.quad(0, 1, 5)
    assert rep.eta_bound == AlgNum.quad(0, 2, 5)


@pytest.mark.parametrize("n", range(4, 21))
def test_index_two_checks(n):
    rep = index_two_report(n)
    assert all(rep.checks.values())
    assert rep.c1_tail_deg < Fraction(4 * n, n + 1)


def test_index_two_rejects_small_n():
    with pytest.raises(DomainError):
        index_two_report(3)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_secant_line(n):
    assert secant_line_s(n) == Fraction(2, 3) - Fraction(1, 3 * n)
