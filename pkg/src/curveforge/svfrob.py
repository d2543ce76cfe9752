"""Frobenius classicality, Stöhr-Voloch bounds and inflection inventories.

A curve V(F) of degree d over GF(q) is Frobenius nonclassical exactly when
F divides X^q F_X + Y^q F_Y + Z^q F_Z, i.e. when the Frobenius image of a
generic point lies on its tangent line.  Only that dichotomy is computed;
for nonclassical curves the Frobenius order is reported as the symbol
``"eps2"`` and never evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .curve import CurveError, PlaneCurve, _ext_points, singular_points_check, tangent_and_multiplicity
from .hpoly import HPoly, exact_divide
from .projplane import format_point


class SVError(ValueError):
    pass


@dataclass
class FrobeniusReport:
    """``nu`` is 1 for classical curves and the string ``"eps2"`` otherwise.

    ``orders`` holds the order sequence (eps0, eps1, eps2); eps2 is left as
    ``None`` because it is not computed.
    """

    classical: bool
    nu: object
    divisible: bool
    criterion_degree: int
    quotient: HPoly | None = None
    orders: tuple = (0, 1, None)
    note: str = "absolute irreducibility is assumed, not certified"

    def as_dict(self):
        return {
            "classical": self.classical,
            "nu": self.nu,
            "criterion_divisible": self.divisible,
            "criterion_degree": self.criterion_degree,
            "orders": list(self.orders),
            "note": self.note,
        }


def frobenius_criterion(F):
    """X^q F_X + Y^q F_Y + Z^q F_Z."""
    f = F.field
    q = f.q
    Fx, Fy, Fz = F.partials()
    out = HPoly(f, F.degree - 1 + q)
    for D, mono in ((Fx, (q, 0, 0)), (Fy, (0, q, 0)), (Fz, (0, 0, q))):
        if not D.is_zero:
            out = out + HPoly.monomial(f, mono) * D
    return out


def frobenius_classical(C):
    F = C.F if isinstance(C, PlaneCurve) else C
    if F.is_zero:
        raise SVError("zero polynomial")
    R = frobenius_criterion(F)
    Q = exact_divide(R, F)
    divisible = Q is not None
    return FrobeniusReport(
        classical=not divisible,
        nu=1 if not divisible else "eps2",
        divisible=divisible,
        criterion_degree=R.degree,
        quotient=Q,
    )


def frobenius_pointwise(C, degrees=(2, 3)):
    """Pointwise oracle over the extensions GF(q^m), m in ``degrees``.

    Returns True at the first nonsingular point with a coordinate outside
    GF(q) whose Frobenius image is off the tangent line, False if every
    such point tested has it on the tangent, and None when there is no
    such point at all.
    """
    if isinstance(degrees, int):
        degrees = (degrees,)
    tested = False
    for m in degrees:
        verdict = _pointwise_at(C, m)
        if verdict:
            return True
        tested |= verdict is False
    return False if tested else None


def _pointwise_at(C, m):
    f = C.field
    q = f.q
    g, e, (xs, ys, zs) = _ext_points(f, m)
    vals = C.F.evaluate_many(xs, ys, zs, embedding=e)
    on = (vals == 0).nonzero()[0]
    parts = [None if D.is_zero else D.evaluate_many(xs[on], ys[on], zs[on], embedding=e) for D in C.partials]
    tested = False
    for n, i in enumerate(on):
        P = (int(xs[i]), int(ys[i]), int(zs[i]))
        if all(g.pow(c, q) == c for c in P):
            continue
        grad = [0 if p is None else int(p[n]) for p in parts]
        if not any(grad):
            continue
        tested = True
        acc = 0
        for a, c in zip(grad, P):
            acc = g.add(acc, g.mul(a, g.pow(c, q)))
        if acc:
            return True
    return False if tested else None


def sv_basic_bound(d, q):
    """d(d + q - 1)/2 as an exact rational."""
    if d < 1:
        raise SVError("degree must be at least 1")
    return Fraction(d * (d + q - 1), 2)


@dataclass
class SVReport:
    d: int
    q: int
    g: int
    nu: int
    N: int
    basic: Fraction
    rhs: Fraction
    sum_A: int
    j2: dict = dc_field(default_factory=dict)
    attained: bool = False
    caveat: str = ""

    @property
    def basic_floor(self):
        return self.basic.numerator // self.basic.denominator

    def as_dict(self):
        return {
            "d": self.d,
            "q": self.q,
            "g": self.g,
            "nu": self.nu,
            "N": self.N,
            "basic_bound": str(self.basic),
            "basic_bound_floor": self.basic_floor,
            "refined_rhs": str(self.rhs),
            "sum_A": self.sum_A,
            "j2": {format_point(P): v for P, v in self.j2.items()},
            "attained": self.attained,
            "caveat": self.caveat,
        }


def j2_table(C):
    """j2(P) for every rational point; raises on singular points."""
    out = {}
    for P in C.points:
        try:
            _, m = tangent_and_multiplicity(C, P)
        except CurveError as exc:
            raise SVError(str(exc)) from exc
        if m == float("inf"):
            raise SVError(f"the tangent at {format_point(P)} is a component of the curve")
        out[P] = int(m)
    return out


def sv_refined_bound(C, nu=None, ext=2):
    """Refined Stöhr-Voloch bound with the point-wise deficiencies A(P).

    The curve must have no singular point over GF(q^j), j <= ``ext``; the
    genus (d-1)(d-2)/2 is used on that basis, which is recorded as a
    caveat since it does not certify smoothness over the closure.
    """
    rep = singular_points_check(C, ext)
    if not rep.nonsingular:
        bad = next(pts for pts in rep.by_degree.values() if pts)
        raise SVError(f"singular point {bad[0]} found")
    if nu is None:
        fr = frobenius_classical(C)
        if not fr.classical:
            raise SVError("curve is Frobenius nonclassical; supply nu")
        nu = 1
    d, q = C.degree, C.field.q
    g = (d - 1) * (d - 2) // 2
    table = j2_table(C)
    sum_A = sum(v - nu - 1 for v in table.values())
    total = nu * (2 * g - 2) + (q + 2) * d - sum_A
    return SVReport(
        d=d,
        q=q,
        g=g,
        nu=nu,
        N=C.N,
        basic=sv_basic_bound(d, q),
        rhs=Fraction(total, 2),
        sum_A=sum_A,
        j2=table,
        attained=2 * C.N == total,
        caveat=f"nonsingularity checked over GF(q^j) for j <= {ext} only",
    )


def inflection_points(C):
    """Rational points with j2 >= 3."""
    return [P for P, v in j2_table(C).items() if v >= 3]


__all__ = [
    "FrobeniusReport",
    "SVError",
    "SVReport",
    "frobenius_classical",
    "frobenius_criterion",
    "frobenius_pointwise",
    "inflection_points",
    "j2_table",
    "sv_basic_bound",
    "sv_refined_bound",
]
