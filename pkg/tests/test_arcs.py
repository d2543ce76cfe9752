import random

import pytest
from hypothesis import given, strategies as st

from curveforge.arcs import (
    ArcError,
    complement_zset,
    format_arc,
    is_arc,
    lines_of_class,
    parse_arc,
    point_type,
    point_types,
    spectrum,
    verify_arc_lemmas,
)
from curveforge.curve import FamilyId, family_catalog
from curveforge.data import Q7_Q0, load_arc
from curveforge.gf import field_of_order, make_field
from curveforge.projplane import enumerate_points, plane


def brute_spectrum(S, f):
    S = set(S)
    a = [0] * (f.q + 2)
    for li, pts in enumerate(plane(f).line_points):
        a[sum(1 for i in pts if plane(f).points[i] in S)] += 1
    return tuple(a)


@given(st.sampled_from((2, 3, 4, 5, 7, 8)), st.data())
def test_identities_hold_for_any_set(q, data):
    f = field_of_order(q)
    pts = enumerate_points(f)
    S = data.draw(st.lists(st.sampled_from(pts), unique=True, max_size=len(pts)))
    sp = spectrum(S, f)
    assert sp.a == brute_spectrum(S, f)
    for lhs, rhs in sp.identities().values():
        assert lhs == rhs


@given(st.sampled_from((3, 4, 5, 7)), st.data())
def test_point_type_sums(q, data):
    f = field_of_order(q)
    pts = enumerate_points(f)
    S = set(data.draw(st.lists(st.sampled_from(pts), unique=True, min_size=1)))
    for P, t in zip(pts, point_types(S, f)):
        assert sum(t.psi) == q + 1
        if P in S:
            assert 1 + sum(r * (i - 1) for i, r in enumerate(t.psi)) == len(S)
        else:
            assert sum(r * i for i, r in enumerate(t.psi)) == len(S)


def test_bundled_k0_3_arc():
    f, S = load_arc("q7_k0_3")
    sp = spectrum(S, f)
    assert sp.a == (0, 0, 0, 12, 9, 0, 36, 0, 0)
    assert sp.k0 == 3 and sp.n == 6 and is_arc(S, f, 6)
    assert all(c.passed for c in verify_arc_lemmas(S, f))


def test_bundled_k0_2_arc_and_Q0():
    f, S = load_arc("q7_k0_2")
    sp = spectrum(S, f)
    assert sp.a == (0, 0, 4, 6, 3, 14, 30, 0, 0)
    t = point_type(S, Q7_Q0, f)
    assert t.render() == "6^3 5^2 3^2 2^1"
    assert sorted(lines_of_class(S, Q7_Q0, 5, f)) == [(1, 3, 6), (1, 4, 0)]


@pytest.mark.parametrize("q", (5, 7, 8, 9))
def test_family_arc_lemmas(q):
    f = field_of_order(q)
    params = (1, 1, f.neg(2)) if q % 2 else (1, 2, 3)
    C = family_catalog(FamilyId("fermat", params), f)
    sp = spectrum(C.points, f)
    assert (sp[0], sp[q - 2], sp[q - 1], sp.k0) == (3, (q - 1) ** 2, 3 * (q - 1), 0)
    assert all(c.passed for c in verify_arc_lemmas(C.points, f))


def test_fermat_vertex_type():
    f = make_field(5)
    C = family_catalog(FamilyId("fermat", (1, 1, 3)), f)
    assert point_type(C.points, (1, 0, 0), f).render() == "4^4 0^2"
    Z = complement_zset(C)
    assert len(Z) == 31 - 16


def test_lemmas_not_applicable():
    f = make_field(5)
    checks = verify_arc_lemmas(enumerate_points(f)[:5], f)
    assert [c.passed for c in checks[:3]] == [True] * 3
    assert all(c.passed is None for c in checks[3:])


def test_arc_file_roundtrip_and_errors():
    f, S = load_arc("q7_k0_3")
    g, T = parse_arc(format_arc(S, f))
    assert g == f and set(T) == set(S)
    with pytest.raises(ArcError):
        parse_arc("7 2\n(1:0:0)\n(2:0:0)\n")
    with pytest.raises(ArcError):
        parse_arc("7 3\n(1:0:0)\n(0:1:0)\n")
    with pytest.raises(ArcError):
        parse_arc("7 1\n(1:0:9)\n")
    with pytest.raises(ArcError):
        parse_arc("seven\n")
    g, T = parse_arc("# comment\n5 1\n(0:0:1)  # trailing\n")
    assert T == [(0, 0, 1)]


def test_random_sets_spectrum_seeded():
    f = make_field(7)
    rng = random.Random(0)
    for _ in range(50):
        S = rng.sample(enumerate_points(f), 36)
        assert spectrum(S, f).a == brute_spectrum(S, f)
