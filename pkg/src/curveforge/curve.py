"""Plane curves over GF(q): rational points, components, singularities, tangents.

Also holds the catalogue of named curve families (Fermat-type curves of
degree q-1, the optimal curves of degrees 2, sqrt(q)+1, q, q+1, q+2, and the
exceptional quartic over GF(4)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .gf import embed, extension
from .hpoly import HPoly, UniPoly, restrict_to_line
from .projplane import incident, normalize, plane, point_array


class CurveError(ValueError):
    pass


class PlaneCurve:
    """V(F) for a nonzero form F of degree >= 1."""

    def __init__(self, F, name=None):
        if F.is_zero:
            raise CurveError("the zero polynomial does not define a curve")
        if F.degree < 1:
            raise CurveError("a plane curve needs degree >= 1")
        self.F = F
        self.field = F.field
        self.degree = F.degree
        self.name = name

    def __repr__(self):
        label = self.name or self.F.to_str()
        return f"PlaneCurve({label} over {self.field})"

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.F.monic() == other.F.monic()

    def __hash__(self):
        return hash(self.F.monic())

    @cached_property
    def _values(self):
        xs, ys, zs = point_array(self.field)
        return self.F.evaluate_many(xs, ys, zs)

    @cached_property
    def point_indices(self):
        return tuple(int(i) for i in np.flatnonzero(self._values == 0))

    @cached_property
    def points(self):
        pts = plane(self.field).points
        return tuple(pts[i] for i in self.point_indices)

    @property
    def N(self):
        return len(self.point_indices)

    def contains(self, P):
        return self.F.evaluate(P) == 0

    @cached_property
    def partials(self):
        return self.F.partials()

    @cached_property
    def linear_components(self):
        return tuple(linear_component_check(self))

    @cached_property
    def rational_singular_points(self):
        Fx, Fy, Fz = self.partials
        return tuple(P for P in self.points if not any(g.evaluate(P) for g in (Fx, Fy, Fz)))

    def is_nonsingular_at(self, P):
        return any(self.F.gradient_at(P))

    def tangent(self, P):
        return tangent_line(self, P)

    def to_file(self):
        return self.F.to_file()


def rational_points(C):
    """(points in enumeration order, N_q)."""
    return C.points, C.N


def _ext_points(f, m):
    g = extension(f, m)
    return g, embed(f, g), point_array(g)


def count_points_ext(C, m):
    """Number of points of C in PG(2, q^m)."""
    if m < 1:
        raise CurveError("extension degree must be >= 1")
    if m == 1:
        return C.N
    g, e, (xs, ys, zs) = _ext_points(C.field, m)
    vals = C.F.evaluate_many(xs, ys, zs, embedding=e)
    return int(np.count_nonzero(vals == 0))


def points_ext(C, m):
    """Points of C over GF(q^m) as code triples of the extension field."""
    g, e, (xs, ys, zs) = _ext_points(C.field, m)
    vals = C.F.evaluate_many(xs, ys, zs, embedding=e)
    idx = np.flatnonzero(vals == 0)
    return g, [(int(xs[i]), int(ys[i]), int(zs[i])) for i in idx]


def linear_component_check(C):
    """Rational lines l with l | F, by restriction to every line of the plane."""
    pl = plane(C.field)
    vals = C._values
    out = []
    for li, pts in enumerate(pl.line_points):
        if vals[pts].any():
            continue
        if restrict_to_line(C.F, pl.lines[li]).vanishes:
            out.append(pl.lines[li])
    return out


@dataclass
class SingularityReport:
    rational: list
    by_degree: dict = dc_field(default_factory=dict)
    checked_up_to: int = 1

    @property
    def nonsingular(self):
        return not any(self.by_degree.values())


def singular_points_check(C, m=2):
    """Common zeros of F, F_X, F_Y, F_Z over GF(q^j) for j = 1..m.

    ``by_degree[j]`` lists singular points with coordinates in GF(q^j)
    (as code triples of that field) that are not defined over a proper
    subfield GF(q^i) with i | j.
    """
    F = C.F
    parts = C.partials
    report = SingularityReport(rational=list(C.rational_singular_points), checked_up_to=m)
    report.by_degree[1] = list(report.rational)
    for j in range(2, m + 1):
        g, e, (xs, ys, zs) = _ext_points(C.field, j)
        mask = F.evaluate_many(xs, ys, zs, embedding=e) == 0
        for D in parts:
            if D.is_zero:
                continue
            mask &= D.evaluate_many(xs, ys, zs, embedding=e) == 0
        found = []
        for i in np.flatnonzero(mask):
            P = (int(xs[i]), int(ys[i]), int(zs[i]))
            if not _defined_over_proper_subfield(g, P, C.field.h, j):
                found.append(P)
        report.by_degree[j] = found
    return report


def _defined_over_proper_subfield(g, P, base_h, j):
    # normalised coordinates lie in GF(q^i) iff they are fixed by x -> x^(q^i)
    for i in range(1, j):
        if j % i:
            continue
        e = g.p ** (base_h * i)
        if all(g.pow(c, e) == c for c in P):
            return True
    return False


def tangent_line(C, P):
    P = normalize(C.field, P)
    if not C.contains(P):
        raise CurveError(f"{P} is not on the curve")
    grad = C.F.gradient_at(P)
    if not any(grad):
        raise CurveError(f"{P} is a singular point")
    return normalize(C.field, grad)


def intersection_multiplicity(C, P, l):
    """I(P, l ∩ C) for a rational point P on the line l."""
    f = C.field
    P = normalize(f, P)
    l = normalize(f, l)
    if not incident(f, P, l):
        raise CurveError(f"{P} is not on the line {l}")
    return restrict_to_line(C.F, l).multiplicity_at(f, P)


def tangent_and_multiplicity(C, P, l=None):
    """(tangent line at P, I(P, l ∩ C)); l defaults to the tangent, giving j2(P)."""
    T = tangent_line(C, P)
    if l is None:
        l = T
    else:
        l = normalize(C.field, l)
        if not incident(C.field, normalize(C.field, P), l):
            raise CurveError(f"{P} is not on the line {l}")
    return T, intersection_multiplicity(C, P, l)


# -- named families ----------------------------------------------------------

FAMILY_TAGS = (
    "fermat",
    "exceptional4",
    "hermitian",
    "hermitian_fermat",
    "homma_q",
    "homma_q1",
    "tallini",
    "conic",
)


@dataclass(frozen=True)
class FamilyId:
    tag: str
    params: tuple = ()

    def __str__(self):
        if self.params:
            return f"{self.tag}({','.join(str(p) for p in self.params)})"
        return self.tag


def _isqrt_exact(q):
    r = math.isqrt(q)
    return r if r * r == q else None


def tallini_cubic(f, a, b, c):
    """t^3 - (c t^2 + b t + a), lowest degree first."""
    neg = f.neg
    return UniPoly(f, [neg(a), neg(b), neg(c), 1])


def tallini_condition(f, a, b, c):
    """True when t^3 - (c t^2 + b t + a) is irreducible over GF(q).

    A cubic is irreducible iff it has no root in GF(q).
    """
    return not tallini_cubic(f, a, b, c).roots()


def fermat_form(f, alpha, beta, gamma):
    d = f.q - 1
    return HPoly.from_terms(f, d, {(d, 0, 0): alpha, (0, d, 0): beta, (0, 0, d): gamma})


def family_catalog(fid, f, enforce_sum=False):
    """The named curve ``fid`` over ``f`` as a :class:`PlaneCurve`.

    Parameters of ``fermat`` and ``tallini`` are field codes.  ``hermitian``
    and ``hermitian_fermat`` take n with q = n^2 (n defaults to sqrt(q)).
    """
    if isinstance(fid, str):
        fid = FamilyId(fid)
    tag, params = fid.tag, tuple(fid.params)
    q = f.q
    one, m1 = 1, f.neg(1)
    if tag == "fermat":
        if len(params) != 3:
            raise CurveError("fermat needs three parameters")
        alpha, beta, gamma = params
        if not all(0 < v < q for v in params):
            raise CurveError("fermat parameters must be nonzero field elements")
        if enforce_sum and f.add(f.add(alpha, beta), gamma) != 0:
            raise CurveError("fermat parameters must sum to zero")
        if q < 3:
            raise CurveError("fermat family needs q >= 3")
        F = fermat_form(f, alpha, beta, gamma)
    elif tag == "exceptional4":
        if q != 4:
            raise CurveError("the exceptional quartic lives over GF(4)")
        F = HPoly.from_terms(
            f,
            4,
            {
                (4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1,
                (2, 2, 0): 1, (0, 2, 2): 1, (2, 0, 2): 1,
                (2, 1, 1): 1, (1, 2, 1): 1, (1, 1, 2): 1,
            },
        )
    elif tag in ("hermitian", "hermitian_fermat"):
        n = params[0] if params else _isqrt_exact(q)
        if n is None or n * n != q:
            raise CurveError(f"{tag} needs q = n^2, got q = {q}")
        if tag == "hermitian":
            # Y^n Z + Y Z^n - X^(n+1)
            F = HPoly.from_terms(f, n + 1, {(0, n, 1): one, (0, 1, n): one, (n + 1, 0, 0): m1})
        else:
            F = HPoly.from_terms(f, n + 1, {(n + 1, 0, 0): one, (0, n + 1, 0): one, (0, 0, n + 1): one})
    elif tag == "homma_q":
        # X^q - X Z^(q-1) + Y^(q-1) Z - Z^q
        F = HPoly.from_terms(
            f, q, [(q, 0, 0, one), (1, 0, q - 1, m1), (0, q - 1, 1, one), (0, 0, q, m1)]
        )
    elif tag == "homma_q1":
        # X^(q+1) - X^2 Z^(q-1) + Y^q Z - Y Z^q
        F = HPoly.from_terms(
            f, q + 1, [(q + 1, 0, 0, one), (2, 0, q - 1, m1), (0, q, 1, one), (0, 1, q, m1)]
        )
    elif tag == "tallini":
        if len(params) != 3:
            raise CurveError("tallini needs parameters a, b, c")
        a, b, c = params
        if not tallini_condition(f, a, b, c):
            raise CurveError(f"t^3 - ({c} t^2 + {b} t + {a}) is reducible over {f}")
        F = tallini_form(f, a, b, c)
    elif tag == "conic":
        F = HPoly.from_terms(f, 2, {(2, 0, 0): one, (0, 1, 1): one})
    else:
        raise CurveError(f"unknown family {tag!r}")
    return PlaneCurve(F, name=str(fid))


def tallini_form(f, a, b, c):
    """Y(Y^q Z - Y Z^q) + Z(Z^q X - Z X^q) + (aX + bY + cZ)(X^q Y - X Y^q)."""
    q = f.q
    m1 = f.neg(1)
    Y = HPoly.linear(f, 0, 1, 0)
    Z = HPoly.linear(f, 0, 0, 1)
    yz = HPoly.from_terms(f, q + 1, [(0, q, 1, 1), (0, 1, q, m1)])
    zx = HPoly.from_terms(f, q + 1, [(1, 0, q, 1), (q, 0, 1, m1)])
    xy = HPoly.from_terms(f, q + 1, [(q, 1, 0, 1), (1, q, 0, m1)])
    return Y * yz + Z * zx + HPoly.linear(f, a, b, c) * xy


def fermat_parameters(f, normalized=True):
    """All (alpha, beta, gamma) in (GF(q)^*)^3 with alpha + beta + gamma = 0.

    With ``normalized`` only triples with alpha = 1 are returned, one per
    projective class of the parameter vector.
    """
    out = []
    alphas = [1] if normalized else range(1, f.q)
    for alpha in alphas:
        for beta in range(1, f.q):
            gamma = f.neg(f.add(alpha, beta))
            if gamma:
                out.append((alpha, beta, gamma))
    return out


def sziklai_bound(d, q):
    return (d - 1) * q + 1


def coordinate_triangle_complement(f):
    """Points with all three coordinates nonzero."""
    return tuple(P for P in plane(f).points if all(P))
