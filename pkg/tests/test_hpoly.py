import random

import pytest
from hypothesis import given, strategies as st

from curveforge.gf import field_of_order, make_field
from curveforge.hpoly import (
    HPoly,
    PolyError,
    UniPoly,
    exact_divide,
    format_curve,
    linear_form,
    monomials,
    parse_curve,
    restrict_to_line,
    substitute,
)
from curveforge.projplane import enumerate_points, mat_det, plane, point_array

QS = (2, 3, 4, 5, 7, 8, 9)


def rand_poly(f, d, rng):
    return HPoly(f, d, [rng.randrange(f.q) for _ in monomials(d)])


@st.composite
def poly_and_field(draw, max_deg=4):
    q = draw(st.sampled_from(QS))
    f = field_of_order(q)
    d = draw(st.integers(0, max_deg))
    coeffs = draw(st.lists(st.integers(0, q - 1), min_size=len(monomials(d)), max_size=len(monomials(d))))
    return HPoly(f, d, coeffs)


def test_monomial_order():
    assert list(monomials(2)) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_small_division_examples():
    f = make_field(7)
    X, Y = HPoly.linear(f, 1, 0, 0), HPoly.linear(f, 0, 1, 0)
    assert exact_divide(X * X - Y * Y, X - Y) == X + Y
    assert exact_divide(X * X + Y * Y, X - Y) is None
    with pytest.raises(PolyError):
        exact_divide(X, HPoly(f, 1))


@given(poly_and_field(), st.integers(0, 10 ** 6))
def test_product_divides(F, seed):
    rng = random.Random(seed)
    G = rand_poly(F.field, rng.randrange(1, 3), rng)
    if G.is_zero:
        return
    Q = exact_divide(F * G, G)
    assert Q == F


@given(poly_and_field(3), st.integers(0, 10 ** 6))
def test_evaluation_is_multiplicative(F, seed):
    rng = random.Random(seed)
    f = F.field
    G = rand_poly(f, rng.randrange(0, 3), rng)
    P = tuple(rng.randrange(f.q) for _ in range(3))
    assert (F * G).evaluate(P) == f.mul(F.evaluate(P), G.evaluate(P))
    assert (F + F).evaluate(P) == f.add(F.evaluate(P), F.evaluate(P))


@given(poly_and_field(3))
def test_vector_evaluation_matches_scalar(F):
    f = F.field
    xs, ys, zs = point_array(f)
    vals = F.evaluate_many(xs, ys, zs)
    assert [int(v) for v in vals] == [F.evaluate(P) for P in enumerate_points(f)]


@given(poly_and_field(3), st.integers(0, 10 ** 6))
def test_compose_is_pullback(F, seed):
    rng = random.Random(seed)
    f = F.field
    B = [[rng.randrange(f.q) for _ in range(3)] for _ in range(3)]
    G = F.compose(B)
    for P in enumerate_points(f)[:12]:
        BP = tuple(f.add(f.add(f.mul(r[0], P[0]), f.mul(r[1], P[1])), f.mul(r[2], P[2])) for r in B)
        assert G.evaluate(P) == F.evaluate(BP)


@given(poly_and_field(3), st.integers(0, 10 ** 6))
def test_substitute_moves_zero_set(F, seed):
    rng = random.Random(seed)
    f = F.field
    while True:
        A = [[rng.randrange(f.q) for _ in range(3)] for _ in range(3)]
        if mat_det(f, A):
            break
    G = substitute(F, A)
    for P in enumerate_points(f)[:15]:
        AP = tuple(f.add(f.add(f.mul(r[0], P[0]), f.mul(r[1], P[1])), f.mul(r[2], P[2])) for r in A)
        assert (F.evaluate(P) == 0) == (G.evaluate(AP) == 0)


def test_partials_char_p():
    f = make_field(3)
    F = HPoly.from_terms(f, 3, {(3, 0, 0): 1, (1, 1, 1): 2})
    Fx, Fy, Fz = F.partials()
    assert Fx == HPoly.from_terms(f, 2, {(0, 1, 1): 2})
    assert Fy == HPoly.from_terms(f, 2, {(1, 0, 1): 2})


def test_restriction_infinity_multiplicity():
    f = make_field(5)
    F = HPoly.from_terms(f, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
    r = restrict_to_line(F, (0, 1, 0))
    assert r.uni == UniPoly(f, [1])
    assert r.infinity_multiplicity == 2
    assert not r.vanishes


@given(st.sampled_from((2, 3, 4, 5, 7)), st.integers(0, 10 ** 6))
def test_restriction_vanishing_iff_divisible(q, seed):
    rng = random.Random(seed)
    f = field_of_order(q)
    l = rng.choice(plane(f).lines)
    d = rng.randrange(1, 4)
    F = rand_poly(f, d, rng)
    if rng.random() < 0.5:
        F = linear_form(f, l) * rand_poly(f, d - 1, rng)
    if F.is_zero:
        return
    assert restrict_to_line(F, l).vanishes == (exact_divide(F, linear_form(f, l)) is not None)


def test_unipoly_roots():
    f = make_field(7)
    p = UniPoly(f, [6, 0, 1])  # t^2 - 1
    assert sorted(p.roots()) == [(1, 1), (6, 1)]
    assert UniPoly(f, [1, 0, 1]).roots() == []
    double = UniPoly(f, [6, 1]) * UniPoly(f, [6, 1])
    assert double.root_multiplicity(1) == 2


def test_curve_file_roundtrip():
    f = make_field(3, 2)
    rng = random.Random(3)
    F = rand_poly(f, 3, rng)
    assert parse_curve(format_curve(F)) == F
    text = "9 2\n0 0 2 1\n2 0 0 5\n"
    G = parse_curve(text)
    assert G.coefficient((2, 0, 0)) == 5
    with pytest.raises(PolyError):
        parse_curve("9 2\n1 0 0 1\n")
    with pytest.raises(PolyError):
        parse_curve("")


def test_binary_form_matches_evaluation():
    f = make_field(5)
    rng = random.Random(1)
    F = rand_poly(f, 3, rng)
    P0, P1 = (1, 2, 0), (0, 3, 1)
    b = F.binary_form(P0, P1)
    for s in range(5):
        for t in range(5):
            v = tuple(f.add(f.mul(s, a), f.mul(t, c)) for a, c in zip(P0, P1))
            acc = 0
            for r, c in enumerate(b):
                acc = f.add(acc, f.mul(c, f.mul(f.pow(s, 3 - r), f.pow(t, r))))
            assert acc == F.evaluate(v)


def test_arithmetic_degree_mismatch():
    f = make_field(5)
    with pytest.raises(PolyError):
        HPoly.linear(f, 1, 0, 0) + HPoly.constant(f, 1)
