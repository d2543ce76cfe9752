import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from curveforge.data import Q7_CONSTRAINTS, q7_quartic, q7_sextic
from curveforge.gf import field_of_order, make_field
from curveforge.hpoly import HPoly
from curveforge.linsolve import (
    GFMatrix,
    LinAlgError,
    NoetherError,
    check_noether_hypotheses,
    det,
    mat_vec,
    noether_reconstruct,
    rank,
    solve,
    solve_high_k0_system,
    vandermonde,
)


@given(st.sampled_from((2, 3, 4, 5, 7, 8, 9)), st.integers(0, 10 ** 6))
def test_solutions_verify(q, seed):
    rng = random.Random(seed)
    f = field_of_order(q)
    r, c = rng.randrange(1, 6), rng.randrange(1, 6)
    M = [[rng.randrange(q) for _ in range(c)] for _ in range(r)]
    b = [rng.randrange(q) for _ in range(r)]
    sol = solve(M, b, f)
    if sol.kind == "inconsistent":
        # no solution: brute force agrees when small
        if q ** c <= 4096:
            assert all(mat_vec(M, list(x), f) != b for x in itertools.product(range(q), repeat=c))
        return
    assert mat_vec(M, sol.particular, f) == b
    for v in sol.basis:
        assert mat_vec(M, v, f) == [0] * r
    assert len(sol.basis) == c - rank(M, f)
    assert (sol.kind == "unique") == (rank(M, f) == c)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rational_det_and_solve(M):
    import numpy as np

    d = det(M)
    assert abs(float(d) - float(np.linalg.det(np.array(M, dtype=float)))) < 1e-6
    sol = solve(M, [1, 2, 3])
    if d != 0:
        assert sol.kind == "unique"
        assert mat_vec(M, sol.particular) == [1, 2, 3]


def test_identity_system():
    f = make_field(7)
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert solve(I, [3, 4, 5], f).particular == [3, 4, 5]
    assert solve(I, [3, 4, 5]).particular == [3, 4, 5]


def test_dimension_mismatch():
    with pytest.raises(LinAlgError):
        solve([[1, 2]], [1, 2])
    with pytest.raises(LinAlgError):
        det([[1, 2]])


@pytest.mark.parametrize("q", (3, 4, 5, 7, 8))
def test_vandermonde_full_rank(q):
    f = field_of_order(q)
    nodes = list(range(1, q))
    for k in range(1, q):
        for sub in itertools.combinations(nodes, k):
            V = vandermonde(f, sub)
            assert V.det() != 0
            assert V.rank() == k


def test_high_k0_system():
    for q in range(5, 14):
        a3, a2, a1 = solve_high_k0_system(q)
        assert 2 * a3 == 3 * (q * q - 3 * q + 2)
        assert a2 == -2 * (q * q - 5 * q + 4) < 0
        assert 2 * a1 == 3 * (q * q - 3 * q + 4)
        assert all(isinstance(x, Fraction) for x in (a3, a2, a1))


def test_gfmatrix_nullspace():
    f = make_field(5)
    M = GFMatrix(f, [[1, 2, 3], [2, 4, 1]])
    assert M.shape == (2, 3)
    for v in M.nullspace():
        assert mat_vec(M.rows, v, f) == [0, 0]
    with pytest.raises(LinAlgError):
        GFMatrix(f, [[1], [1, 2]])


def test_q7_noether_unique_zero():
    G, H = q7_sextic(), q7_quartic()
    res = noether_reconstruct(G, H, 6, Q7_CONSTRAINTS, fixed_a=HPoly.constant(G.field, 1))
    assert res.unique and res.b_vanishes() and res.verdict == "unique"
    assert len(res.intersection) == 24
    for P in Q7_CONSTRAINTS:
        assert (G + res.particular[1] * H).evaluate(P) == 0


def test_q7_five_points_not_enough():
    G, H = q7_sextic(), q7_quartic()
    res = noether_reconstruct(G, H, 6, Q7_CONSTRAINTS[:5], fixed_a=HPoly.constant(G.field, 1))
    assert len(res.basis) == 1


def test_unfixed_a_nullspace_vanishes():
    G, H = q7_sextic(), q7_quartic()
    res = noether_reconstruct(G, H, 6, Q7_CONSTRAINTS)
    for A, B in res.basis:
        F = A * G + B * H
        assert all(F.evaluate(P) == 0 for P in Q7_CONSTRAINTS)


@pytest.mark.parametrize("q", (5, 7, 8, 9))
def test_two_q_minus_one_intersection(q):
    f = field_of_order(q)
    d = q - 1
    G0 = HPoly.from_terms(f, d, {(0, 0, d): 1, (d, 0, 0): f.neg(1), (0, d, 0): f.neg(1)})
    G1 = HPoly.from_terms(f, 2, {(1, 1, 0): 1})
    assert len(check_noether_hypotheses(G0, G1)) == 2 * (q - 1)


def test_noether_errors():
    f = make_field(5)
    X, Y, Z = (HPoly.linear(f, *v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(NoetherError):
        noether_reconstruct(X * Y, X * Z, 3, [])
    with pytest.raises(NoetherError):
        noether_reconstruct(X * X - Y * Z, Y, 1, [])
    with pytest.raises(NoetherError):
        check_noether_hypotheses(X * X - Y * Z, Y)  # Y = 0 is tangent at (0:0:1)
