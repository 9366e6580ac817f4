from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kstab.errors import DomainError
from kstab.oracle import (
    FiltrationSpec,
    MonomialModel,
    Subspace,
    basis_divisor_split,
    closed_form_s,
    compatible_basis,
    graded_dims,
    is_compatible,
    monomial_filtration,
    monomials,
    s_convergence,
    s_m,
    s_m_from_basis,
)


@pytest.mark.parametrize("k", range(1, 6))
def test_curve_point_is_half_degree(k):
    model = MonomialModel("curve", k, (1,))
    for m in range(1, 11):
        assert s_m(model, m) == Fraction(k, 2)
    assert closed_form_s(model) == Fraction(k, 2)


@pytest.mark.parametrize("m", [1, 2, 5, 10])
def test_plane_line(m):
    assert s_m(MonomialModel("plane", 3, (0, 0, 1)), m) == 1


def test_plane_weighted_point():
    model = MonomialModel("plane", 3, (1, 2))
    assert closed_form_s(model) == 3
    for m in (2, 4, 8, 16):
        assert abs(s_m(model, m) - 3) <= Fraction(3, 16)


def test_closed_form_is_centroid():
    # mean of x over the triangle of side k is k/3
    assert closed_form_s(MonomialModel("plane", 3, (1, 0, 0))) == 1
    assert closed_form_s(MonomialModel("plane", 6, (1, 1, 0))) == 4


def test_graded_dims_total():
    model = MonomialModel("plane", 2, (1, 3))
    dims = graded_dims(model, 3)
    assert sum(dims.values()) == len(monomials(2, 6)) == 28


def test_monomial_filtration_values():
    model = MonomialModel("curve", 2, (1,))
    mons, spec = monomial_filtration(model, 1)
    for i, e in enumerate(mons):
        v = [int(i == j) for j in range(len(mons))]
        assert spec.value(v) == model.weight(e)


def _spec(dim, levels):
    return FiltrationSpec(dim, tuple(levels))


def test_compatible_basis_example():
    e1, e2 = (1, 0), (0, 1)
    f = _spec(2, [(0, [e1, e2]), (1, [e1]), (2, [])])
    g = _spec(2, [(0, [e1, e2]), (1, [(1, 1)]), (2, [])])
    basis = compatible_basis(f, g)
    assert Subspace(2, basis).rank == 2
    assert is_compatible(basis, f) and is_compatible(basis, g)
    assert sorted(map(tuple, basis)) == [(1, 0), (1, 1)]


def test_incompatible_generic_basis():
    f = _spec(2, [(0, [(1, 0), (0, 1)]), (1, [(1, 0)]), (2, [])])
    assert not is_compatible([[1, 1], [0, 1]], f)


def test_filtration_validation():
    with pytest.raises(DomainError):
        _spec(2, [(0, [(1, 0)]), (1, [])])
    with pytest.raises(DomainError):
        _spec(2, [(0, [(1, 0), (0, 1)]), (1, [(1, 0)])])
    with pytest.raises(DomainError):
        _spec(2, [(1, [(1, 0), (0, 1)]), (0, [])])
    with pytest.raises(DomainError):
        _spec(3, [(0, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), (1, [(1, 0, 0)]), (2, [(0, 1, 0)]), (3, [])])


@st.composite
def random_flags(draw, dim=3):
    vecs = draw(st.lists(st.lists(st.integers(-2, 2), min_size=dim, max_size=dim), min_size=dim, max_size=dim))
    if Subspace(dim, vecs).rank != dim:
        vecs = [[int(i == j) for j in range(dim)] for i in range(dim)]
    cut = draw(st.integers(1, dim - 1))
    return _spec(dim, [(0, vecs), (1, vecs[cut:]), (2, [])])


@given(random_flags(), random_flags())
def test_compatible_basis_property(f, g):
    basis = compatible_basis(f, g)
    assert is_compatible(basis, f) and is_compatible(basis, g)


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.integers(1, 3))
def test_s_m_from_compatible_basis_matches_counting(k, w0, w1, m):
    if w0 == w1 == 0:
        return
    model = MonomialModel("curve", k, (w0, w1))
    _, f = monomial_filtration(model, m)
    n = f.dim
    # a second filtration by a generic flag, to force a non-monomial basis
    flag = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    g = _spec(n, [(0, flag)] + [(i, flag[i:]) for i in range(1, n)] + [(n, [])])
    basis = compatible_basis(f, g)
    assert s_m_from_basis(model, m, basis) == s_m(model, m)


def test_basis_divisor_split():
    rep = basis_divisor_split(MonomialModel("plane", 3, (0, 0, 1)), 2)
    assert rep.coeff_e == s_m(MonomialModel("plane", 3, (0, 0, 1)), 2) == 1
    assert rep.matches
    rep = basis_divisor_split(MonomialModel("curve", 4, (1,)), 3)
    assert rep.coeff_e == 2 and rep.matches
    with pytest.raises(DomainError):
        basis_divisor_split(MonomialModel("plane", 3, (1, 2)), 1)


def test_s_convergence():
    rep = s_convergence(MonomialModel("plane", 3, (1, 2)), [2, 4, 8, 16])
    assert rep.limit == 3 and rep.ok
    assert [r[0] for r in rep.rows] == [2, 4, 8, 16]
    with pytest.raises(DomainError):
        s_convergence(MonomialModel("plane", 3, (1, 2)), [4, 2])


def test_model_validation_and_size_cap():
    with pytest.raises(DomainError):
        MonomialModel("threefold", 1, (1,))
    with pytest.raises(DomainError):
        MonomialModel("curve", 0, (1,))
    with pytest.raises(DomainError):
        MonomialModel("plane", 1, (1, 2, 3, 4))
    with pytest.raises(DomainError):
        MonomialModel("curve", 1, (0, 0))
    with pytest.raises(DomainError):
        s_m(MonomialModel("plane", 3, (1, 2)), 40)
    with pytest.raises(DomainError):
        s_m(MonomialModel("curve", 1, (1,)), 0)
