from fractions import Fraction

import pytest

from curveforge.curve import FamilyId, PlaneCurve, family_catalog, fermat_form, fermat_parameters
from curveforge.gf import field_of_order, make_field
from curveforge.hpoly import HPoly
from curveforge.svfrob import (
    SVError,
    frobenius_classical,
    frobenius_pointwise,
    inflection_points,
    j2_table,
    sv_basic_bound,
    sv_refined_bound,
)


@pytest.mark.parametrize("q", (5, 7, 8, 9))
def test_family_classical_and_attains(q):
    f = field_of_order(q)
    for t in fermat_parameters(f):
        C = PlaneCurve(fermat_form(f, *t))
        assert frobenius_classical(C).classical
        rep = sv_refined_bound(C)
        assert rep.attained and rep.sum_A == 0
        assert 2 * rep.N == (2 * rep.g - 2) + (q + 2) * (q - 1)
        assert inflection_points(C) == []


def test_hermitian_nonclassical():
    for q in (4, 9):
        C = family_catalog("hermitian", field_of_order(q))
        rep = frobenius_classical(C)
        assert not rep.classical and rep.nu == "eps2" and rep.orders[2] is None
        with pytest.raises(SVError):
            sv_refined_bound(C)


def test_hermitian_cubic_inflections():
    for tag in ("hermitian", "hermitian_fermat"):
        C = family_catalog(tag, field_of_order(4))
        assert len(inflection_points(C)) == 9
        assert set(j2_table(C).values()) == {3}


def test_supplied_nu_accepted():
    C = family_catalog("hermitian", field_of_order(4))
    rep = sv_refined_bound(C, nu=2)
    assert rep.nu == 2 and rep.sum_A == 0


def test_conic_and_quartic():
    f = make_field(5)
    C = family_catalog("conic", f)
    assert frobenius_classical(C).classical
    rep = sv_refined_bound(C)
    assert rep.attained and 2 * rep.N == 12 and rep.rhs == 6
    Q = family_catalog(FamilyId("fermat", (1, 1, 3)), f)
    assert sv_refined_bound(Q).rhs == 16


@pytest.mark.parametrize(
    "C",
    [("conic", 5), ("homma_q", 5), ("exceptional4", 4), ("hermitian", 4), ("hermitian", 9)],
)
def test_pointwise_oracle_agrees(C):
    tag, q = C
    curve = family_catalog(tag, field_of_order(q))
    verdict = frobenius_pointwise(curve)
    if verdict is not None:
        assert verdict == frobenius_classical(curve).classical


def test_pointwise_oracle_on_family():
    f = field_of_order(7)
    for t in fermat_parameters(f):
        v = frobenius_pointwise(PlaneCurve(fermat_form(f, *t)))
        assert v in (True, None)


def test_basic_bound():
    assert sv_basic_bound(2, 5) == 6
    assert sv_basic_bound(4, 5) == 16
    assert sv_basic_bound(3, 4) == Fraction(9)
    assert sv_basic_bound(2, 4) == Fraction(5)
    for q in range(3, 60):
        assert sv_basic_bound(q - 1, q) == (q - 1) ** 2 == (q - 2) * q + 1
    with pytest.raises(SVError):
        sv_basic_bound(0, 5)


def test_singular_curve_rejected():
    f = make_field(5)
    X, Y, Z = (HPoly.linear(f, *v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(SVError):
        sv_refined_bound(PlaneCurve(Y * Y * Z - X * X * (X + Z)))


def test_zero_polynomial():
    with pytest.raises(SVError):
        frobenius_classical(HPoly(make_field(5), 2))
