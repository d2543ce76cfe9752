"""Points, lines and pencils of PG(2, q).

Points and lines are plain tuples of field codes, normalised so that the
leftmost nonzero coordinate is 1.  :class:`Plane` caches the enumeration and
incidence structure for one field.
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from .gf import FieldError, parse_element

INCIDENCE_MATRIX_LIMIT = 32


class GeometryError(ValueError):
    pass


def normalize(f, v):
    """Scale a nonzero triple so its leftmost nonzero entry is 1."""
    for c in v:
        if c:
            if c == 1:
                return tuple(v)
            inv = f.inv(c)
            return tuple(f.mul(inv, x) for x in v)
    raise GeometryError("the zero vector is not a projective point")


def dot(f, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = f.add(acc, f.mul(x, y))
    return acc


def cross(f, a, b):
    mul, sub = f.mul, f.sub
    return (
        sub(mul(a[1], b[2]), mul(a[2], b[1])),
        sub(mul(a[2], b[0]), mul(a[0], b[2])),
        sub(mul(a[0], b[1]), mul(a[1], b[0])),
    )


def incident(f, P, l):
    return dot(f, P, l) == 0


def enumerate_points(f):
    """All q^2+q+1 points: (1:y:z) lexicographically, then (0:1:z), then (0:0:1)."""
    q = f.q
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return pts


enumerate_lines = enumerate_points


def line_through(f, P, Q):
    v = cross(f, P, Q)
    if not any(v):
        raise GeometryError(f"{P} and {Q} do not span a line")
    return normalize(f, v)


def meet(f, l, m):
    """Common point of two distinct lines."""
    v = cross(f, l, m)
    if not any(v):
        raise GeometryError(f"{l} and {m} are the same line")
    return normalize(f, v)


def line_basis(f, l):
    """The two canonical points spanning ``l``.

    With ``i`` the position of the leading 1 of ``l`` and ``j < k`` the other
    two positions, the basis is ``e_j - l_j e_i`` and ``e_k - l_k e_i``; the
    parameter ``(s:t)`` stands for ``s*P0 + t*P1``.
    """
    i = next(idx for idx, c in enumerate(l) if c)
    j, k = [idx for idx in range(3) if idx != i]
    P0 = [0, 0, 0]
    P1 = [0, 0, 0]
    P0[j] = 1
    P0[i] = f.neg(l[j])
    P1[k] = 1
    P1[i] = f.neg(l[k])
    return tuple(P0), tuple(P1), (j, k)


def points_on_line(f, l):
    P0, P1, _ = line_basis(f, l)
    out = [normalize(f, P1)]
    for t in range(f.q):
        out.append(normalize(f, tuple(f.add(a, f.mul(t, b)) for a, b in zip(P0, P1))))
    return out


def format_point(P):
    return "(" + ":".join(str(c) for c in P) + ")"


def format_line(l):
    return "[" + ":".join(str(c) for c in l) + "]"


_POINT_RE = re.compile(r"^\s*[(\[]\s*(\d+)\s*:\s*(\d+)\s*:\s*(\d+)\s*[)\]]\s*$")


def parse_point(f, text, normalize_it=True):
    m = _POINT_RE.match(text)
    if not m:
        raise GeometryError(f"malformed point {text!r}")
    try:
        v = tuple(parse_element(f, g) for g in m.groups())
    except FieldError as exc:
        raise GeometryError(str(exc)) from exc
    return normalize(f, v) if normalize_it else v


parse_line = parse_point


class Plane:
    """Enumeration and incidence of PG(2, q) for one field.

    Point and line indices follow :func:`enumerate_points`.  For
    ``q <= INCIDENCE_MATRIX_LIMIT`` a boolean lines-by-points matrix is
    kept for vectorised spectrum computations.
    """

    def __init__(self, f):
        self.field = f
        self.q = f.q
        self.points = enumerate_points(f)
        self.lines = self.points
        self.index = {P: i for i, P in enumerate(self.points)}
        self.n = len(self.points)
        self.line_points = []
        for l in self.lines:
            self.line_points.append(sorted(self.index[P] for P in points_on_line(f, l)))
        self.point_lines = [[] for _ in range(self.n)]
        for li, pts in enumerate(self.line_points):
            for pi in pts:
                self.point_lines[pi].append(li)
        self.incidence = None
        if self.q <= INCIDENCE_MATRIX_LIMIT:
            inc = np.zeros((self.n, self.n), dtype=np.int32)
            for li, pts in enumerate(self.line_points):
                inc[li, pts] = 1
            self.incidence = inc

    def point_index(self, P):
        return self.index[normalize(self.field, P)]

    def line_index(self, l):
        return self.index[normalize(self.field, l)]

    def pencil(self, P):
        """Indices of the q+1 lines through P, in enumeration order."""
        return self.point_lines[self.point_index(P)]

    def line_through_idx(self, a, b):
        return self.index[line_through(self.field, self.points[a], self.points[b])]

    def collinear(self, a, b, c):
        f = self.field
        return dot(f, cross(f, self.points[a], self.points[b]), self.points[c]) == 0

    def mask(self, indices):
        m = np.zeros(self.n, dtype=np.int32)
        m[list(indices)] = 1
        return m


@lru_cache(maxsize=None)
def plane(f):
    return Plane(f)


@lru_cache(maxsize=None)
def point_array(f):
    """Coordinates of all points as three int64 arrays, in enumeration order."""
    pts = np.array(enumerate_points(f), dtype=np.int64)
    return pts[:, 0], pts[:, 1], pts[:, 2]


def pencil(f, P):
    """The q+1 lines through P as normalised triples."""
    pl = plane(f)
    return [pl.lines[i] for i in pl.pencil(P)]


# -- 3x3 matrices over GF(q), rows of codes --------------------------------

def mat_mul(f, A, B):
    return tuple(
        tuple(
            f.add(f.add(f.mul(A[i][0], B[0][j]), f.mul(A[i][1], B[1][j])), f.mul(A[i][2], B[2][j]))
            for j in range(3)
        )
        for i in range(3)
    )


def mat_vec(f, A, v):
    return tuple(f.add(f.add(f.mul(r[0], v[0]), f.mul(r[1], v[1])), f.mul(r[2], v[2])) for r in A)


def mat_det(f, A):
    cof = cross(f, A[1], A[2])
    return dot(f, A[0], cof)


def mat_transpose(A):
    return tuple(tuple(A[i][j] for i in range(3)) for j in range(3))


def mat_inv(f, A):
    det = mat_det(f, A)
    if det == 0:
        raise GeometryError("singular matrix")
    cols = (cross(f, A[1], A[2]), cross(f, A[2], A[0]), cross(f, A[0], A[1]))
    inv_det = f.inv(det)
    # inverse = adj(A) / det, and the adjugate's columns are the cross products above
    return tuple(tuple(f.mul(inv_det, cols[j][i]) for j in range(3)) for i in range(3))


def identity_matrix():
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))
