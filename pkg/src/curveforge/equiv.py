"""PGL(3, q) acting on points, lines, point sets and curves.

Equivalence is decided by anchoring on an ordered frame (four points, no
three collinear).  Plane points are labelled by an invariant (membership
plus point type); the frame is drawn greedily from the rarest labels of the
first object, and every label-compatible image frame in the second object
determines one candidate projectivity, which is then checked outright.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .arcs import _line_counts, point_indices
from .curve import PlaneCurve, fermat_form, fermat_parameters
from .hpoly import HPoly, substitute
from .projplane import (
    GeometryError,
    identity_matrix,
    mat_det,
    mat_inv,
    mat_mul,
    mat_transpose,
    mat_vec,
    normalize,
    plane,
    point_array,
)


class EquivError(ValueError):
    pass


def _normalize_matrix(f, M):
    for row in M:
        for c in row:
            if c:
                inv = f.inv(c)
                return tuple(tuple(f.mul(inv, x) for x in r) for r in M)
    raise EquivError("zero matrix")


class Projectivity:
    """An element of PGL(3, q), stored with its first nonzero entry equal to 1."""

    def __init__(self, field, matrix):
        M = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(M) != 3 or any(len(r) != 3 for r in M):
            raise EquivError("a projectivity needs a 3x3 matrix")
        if mat_det(field, M) == 0:
            raise EquivError("singular matrix")
        self.field = field
        self.matrix = _normalize_matrix(field, M)

    @classmethod
    def identity(cls, field):
        return cls(field, identity_matrix())

    @classmethod
    def random(cls, field, rng=None):
        rng = rng if rng is not None else random.Random()
        q = field.q
        while True:
            M = [[rng.randrange(q) for _ in range(3)] for _ in range(3)]
            if mat_det(field, M):
                return cls(field, M)

    def inverse(self):
        return Projectivity(self.field, mat_inv(self.field, self.matrix))

    def __matmul__(self, other):
        if other.field != self.field:
            raise EquivError("projectivities over different fields")
        return Projectivity(self.field, mat_mul(self.field, self.matrix, other.matrix))

    def __eq__(self, other):
        return isinstance(other, Projectivity) and self.field == other.field and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.field.q, self.matrix))

    def __repr__(self):
        return f"Projectivity({self.matrix})"

    def entries(self):
        """The nine entries row by row."""
        return [x for row in self.matrix for x in row]


def apply_point(A, P):
    return normalize(A.field, mat_vec(A.field, A.matrix, P))


def apply_line(A, l):
    f = A.field
    return normalize(f, mat_vec(f, mat_transpose(mat_inv(f, A.matrix)), l))


def apply_curve(A, C):
    if C.field != A.field:
        raise EquivError("field mismatch")
    return PlaneCurve(substitute(C.F, A.matrix), name=C.name)


def apply(A, X, kind=None):
    """Image of a point, line (``kind="line"``), point set or curve under A."""
    if isinstance(X, PlaneCurve):
        return apply_curve(A, X)
    if isinstance(X, HPoly):
        if X.field != A.field:
            raise EquivError("field mismatch")
        return substitute(X, A.matrix)
    if isinstance(X, tuple) and len(X) == 3 and all(isinstance(c, int) for c in X):
        return apply_line(A, X) if kind == "line" else apply_point(A, X)
    return [apply_point(A, P) for P in X]


# -- vectorised action on all points ---------------------------------------

@lru_cache(maxsize=None)
def _code_lookup(f):
    q = f.q
    table = np.full(q ** 3, -1, dtype=np.int64)
    xs, ys, zs = point_array(f)
    table[xs * q * q + ys * q + zs] = np.arange(len(xs))
    return table


def _raw_image(f, M, xs, ys, zs):
    out = []
    for row in M:
        acc = f.vmul(row[0], xs)
        acc = f.vadd(acc, f.vmul(row[1], ys))
        acc = f.vadd(acc, f.vmul(row[2], zs))
        out.append(acc)
    return out


def _image_indices(f, M, idx):
    """Plane indices of the images of the points with indices ``idx``."""
    xs, ys, zs = point_array(f)
    X, Y, Z = _raw_image(f, M, xs[idx], ys[idx], zs[idx])
    lead = np.where(X != 0, X, np.where(Y != 0, Y, Z))
    inv = f.vpow(lead, f.q - 2)
    q = f.q
    code = f.vmul(inv, X) * q * q + f.vmul(inv, Y) * q + f.vmul(inv, Z)
    return _code_lookup(f)[code]


# -- invariants -------------------------------------------------------------

def _as_index_set(X, f):
    if isinstance(X, PlaneCurve):
        return set(X.point_indices)
    return point_indices(f, X)


def _labels(f, idx):
    """Invariant label of every plane point: (member, psi profile)."""
    pl = plane(f)
    counts = _line_counts(f, idx)
    labels = []
    for pi in range(pl.n):
        psi = [0] * (f.q + 2)
        for li in pl.point_lines[pi]:
            psi[int(counts[li])] += 1
        labels.append((pi in idx, tuple(psi)))
    return labels, counts


def _choose_frame(f, labels):
    """Greedy frame from the rarest label classes; always succeeds on PG(2, q)."""
    pl = plane(f)
    size = {}
    for lab in labels:
        size[lab] = size.get(lab, 0) + 1
    order = sorted(range(pl.n), key=lambda i: (size[labels[i]], labels[i], i))
    frame = []
    for i in order:
        if any(pl.collinear(a, b, i) for a in frame for b in frame if a < b):
            continue
        frame.append(i)
        if len(frame) == 4:
            return frame
    raise EquivError("no frame found")  # pragma: no cover


def _frame_matrix(f, P):
    """Matrix sending e1, e2, e3, (1,1,1) to the four points P (up to scalar)."""
    cols = P[:3]
    M = tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))
    lam = mat_vec(f, mat_inv(f, M), P[3])
    if not all(lam):
        raise GeometryError("points are not a frame")
    return tuple(tuple(f.mul(M[r][c], lam[c]) for c in range(3)) for r in range(3))


def projectivity_from_frames(f, src, dst):
    """The unique projectivity mapping the frame ``src`` onto ``dst``."""
    T1 = _frame_matrix(f, [tuple(p) for p in src])
    T2 = _frame_matrix(f, [tuple(p) for p in dst])
    return Projectivity(f, mat_mul(f, T2, mat_inv(f, T1)))


# -- equivalence ------------------------------------------------------------

def _spectrum_key(counts, f):
    return tuple(np.bincount(np.asarray(counts, dtype=np.int64), minlength=f.q + 2))


def _curve_match(C1, C2, M):
    """True when F1 = lambda * F2(M v) as polynomials, for some scalar."""
    f = C1.field
    xs, ys, zs = point_array(f)
    v1 = C1._values
    X, Y, Z = _raw_image(f, M, xs, ys, zs)
    v2 = C2.F.evaluate_many(X, Y, Z)
    nz = np.flatnonzero(v1)
    if len(nz):
        i = int(nz[0])
        if v2[i] == 0:
            return False
        lam = f.div(int(v1[i]), int(v2[i]))
        if not np.array_equal(v1, f.vmul(lam, v2)):
            return False
    else:
        lam = None
    G = C2.F.compose(M)
    if G.is_zero:
        return False
    if lam is None:
        return G.monic() == C1.F.monic()
    return G.scale(lam) == C1.F


def are_equivalent(X1, X2, field=None):
    """A projectivity A with A(X1) = X2, or ``None`` when none exists.

    X1 and X2 are both point sets or both :class:`PlaneCurve`.  For curves
    the equations must agree up to a nonzero scalar, not just the point
    sets.  The search is deterministic: the same inputs give the same
    witness.
    """
    curves = isinstance(X1, PlaneCurve)
    if curves != isinstance(X2, PlaneCurve):
        raise EquivError("cannot compare a curve with a point set")
    if curves:
        f = X1.field
        if X2.field != f:
            raise EquivError("field mismatch")
        if X1.degree != X2.degree or X1.N != X2.N:
            return None
    else:
        if field is None:
            raise EquivError("point sets need an explicit field")
        f = field
    S1, S2 = _as_index_set(X1, f), _as_index_set(X2, f)
    if len(S1) != len(S2):
        return None
    lab1, c1 = _labels(f, S1)
    lab2, c2 = _labels(f, S2)
    if _spectrum_key(c1, f) != _spectrum_key(c2, f):
        return None
    if sorted(lab1) != sorted(lab2):
        return None

    pl = plane(f)
    frame = _choose_frame(f, lab1)
    fpts = [pl.points[i] for i in frame]
    pair_count = {}
    for a in range(4):
        for b in range(a + 1, 4):
            pair_count[(a, b)] = int(c1[pl.line_through_idx(frame[a], frame[b])])
    by_label = {}
    for i, lab in enumerate(lab2):
        by_label.setdefault(lab, []).append(i)
    pools = [by_label.get(lab1[i], []) for i in frame]
    src = np.array(sorted(S1), dtype=np.int64)
    target = np.zeros(pl.n, dtype=bool)
    target[list(S2)] = True
    T1 = _frame_matrix(f, fpts)
    T1inv = mat_inv(f, T1)

    def extend(chosen):
        depth = len(chosen)
        if depth == 4:
            yield list(chosen)
            return
        for j in pools[depth]:
            if j in chosen:
                continue
            ok = True
            for a in range(depth):
                if int(c2[pl.line_through_idx(chosen[a], j)]) != pair_count[(a, depth)]:
                    ok = False
                    break
            if not ok:
                continue
            if depth == 2 and pl.collinear(chosen[0], chosen[1], j):
                continue
            if depth == 3 and any(
                pl.collinear(chosen[a], chosen[b], j) for a in range(3) for b in range(a + 1, 3)
            ):
                continue
            chosen.append(j)
            yield from extend(chosen)
            chosen.pop()

    for cand in extend([]):
        T2 = _frame_matrix(f, [pl.points[i] for i in cand])
        M = mat_mul(f, T2, T1inv)
        if len(src) and not target[_image_indices(f, M, src)].all():
            continue
        if curves and not _curve_match(X1, X2, M):
            continue
        return Projectivity(f, M)
    return None


def verify_witness(A, X1, X2, field=None):
    """Check A(X1) = X2 directly."""
    if A is None:
        return False
    if isinstance(X1, PlaneCurve):
        img = apply_curve(A, X1)
        return img.F.monic() == X2.F.monic()
    f = field if field is not None else A.field
    return point_indices(f, apply(A, X1)) == point_indices(f, X2)


# -- the Fermat-type family -------------------------------------------------

def count_family_classes(f):
    """(nu_q, representatives) for alpha X^(q-1) + beta Y^(q-1) + gamma Z^(q-1).

    Triples are taken with alpha = 1 and alpha + beta + gamma = 0; the
    representative of each class is its lexicographically smallest
    coefficient vector.
    """
    params = sorted(fermat_parameters(f, normalized=True))
    reps = []
    curves = []
    for t in params:
        C = PlaneCurve(fermat_form(f, *t), name=f"fermat{t}")
        if any(are_equivalent(C, R) is not None for R in curves):
            continue
        reps.append(t)
        curves.append(C)
    return len(reps), reps


__all__ = [
    "EquivError",
    "Projectivity",
    "apply",
    "apply_curve",
    "apply_line",
    "apply_point",
    "are_equivalent",
    "count_family_classes",
    "projectivity_from_frames",
    "verify_witness",
]
