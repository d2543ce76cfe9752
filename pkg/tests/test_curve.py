import pytest

from curveforge.curve import (
    CurveError,
    FamilyId,
    PlaneCurve,
    coordinate_triangle_complement,
    count_points_ext,
    family_catalog,
    fermat_form,
    fermat_parameters,
    intersection_multiplicity,
    linear_component_check,
    points_ext,
    singular_points_check,
    sziklai_bound,
    tallini_condition,
    tangent_and_multiplicity,
    tangent_line,
)
from curveforge.gf import field_of_order, make_field
from curveforge.hpoly import HPoly


def brute_count(C):
    from curveforge.projplane import enumerate_points

    return sum(1 for P in enumerate_points(C.field) if C.F.evaluate(P) == 0)


@pytest.mark.parametrize(
    "tag,q,n",
    [("exceptional4", 4, 14), ("hermitian", 4, 9), ("hermitian_fermat", 4, 9), ("hermitian", 9, 28),
     ("homma_q", 5, 21), ("homma_q1", 5, 26), ("homma_q", 9, 73), ("homma_q1", 8, 65), ("conic", 5, 6),
     ("conic", 8, 9)],
)
def test_named_counts(tag, q, n):
    C = family_catalog(tag, field_of_order(q))
    assert C.N == n == brute_count(C)


def test_fermat_family_is_triangle_complement():
    f = make_field(7)
    comp = set(coordinate_triangle_complement(f))
    for t in fermat_parameters(f, normalized=False):
        C = family_catalog(FamilyId("fermat", t), f, enforce_sum=True)
        assert set(C.points) == comp


def test_fermat_parameter_validation():
    f = make_field(5)
    with pytest.raises(CurveError):
        family_catalog(FamilyId("fermat", (1, 1, 1)), f, enforce_sum=True)
    with pytest.raises(CurveError):
        family_catalog(FamilyId("fermat", (0, 1, 4)), f)
    with pytest.raises(CurveError):
        family_catalog("hermitian", f)
    with pytest.raises(CurveError):
        family_catalog("nosuch", f)


def test_extension_counts():
    f = make_field(5)
    C = family_catalog("conic", f)
    assert count_points_ext(C, 2) == 26
    g, pts = points_ext(C, 2)
    assert g.q == 25 and len(pts) == 26
    assert count_points_ext(family_catalog(FamilyId("fermat", (1, 1, 3)), f), 1) == 16


def test_hermitian_is_maximal_then_minimal():
    C = family_catalog("hermitian", field_of_order(4))
    assert count_points_ext(C, 2) == 9


def test_optimal_curves_are_nonsingular():
    for tag, q in (("homma_q", 5), ("homma_q1", 5), ("exceptional4", 4)):
        C = family_catalog(tag, field_of_order(q))
        assert singular_points_check(C, 2).nonsingular
        assert linear_component_check(C) == []


def test_singular_and_reducible_detected():
    f = make_field(5)
    X, Y, Z = (HPoly.linear(f, *v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    node = PlaneCurve(Y * Y * Z - X * X * (X + Z))
    rep = singular_points_check(node, 2)
    assert rep.rational == [(0, 0, 1)] and not rep.nonsingular
    assert linear_component_check(PlaneCurve(X * (X * X + Y * Z))) == [(1, 0, 0)]


def test_tangents_and_multiplicities():
    f = make_field(5)
    C = family_catalog("conic", f)  # X^2 + YZ
    assert tangent_line(C, (0, 1, 0)) == (0, 0, 1)
    T, j2 = tangent_and_multiplicity(C, (0, 1, 0))
    assert j2 == 2
    assert intersection_multiplicity(C, (0, 1, 0), (1, 0, 0)) == 1
    with pytest.raises(CurveError):
        tangent_line(C, (1, 0, 0))


def test_tallini_condition_matches_smoothness():
    f = make_field(3)
    for a in range(3):
        for b in range(3):
            for c in range(3):
                if tallini_condition(f, a, b, c):
                    C = family_catalog(FamilyId("tallini", (a, b, c)), f)
                    assert singular_points_check(C, 2).nonsingular


def test_sziklai_bound_values():
    assert sziklai_bound(4, 5) == 16
    assert sziklai_bound(2, 7) == 8


def test_zero_polynomial_rejected():
    with pytest.raises(CurveError):
        PlaneCurve(HPoly(make_field(3), 2))


def test_curve_equality_up_to_scalar():
    f = make_field(7)
    F = fermat_form(f, 1, 1, 5)
    assert PlaneCurve(F) == PlaneCurve(F.scale(3))
