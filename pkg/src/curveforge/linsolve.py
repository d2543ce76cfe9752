"""Exact Gaussian elimination over GF(q) or Q, and AF+BG reconstruction.

Matrices are lists of rows.  A *domain* supplies the scalar arithmetic:
:class:`GFDomain` wraps a field (elements are codes), :data:`QQ` uses
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .hpoly import HPoly, exact_divide, monomials, restrict_to_line
from .projplane import normalize, plane


class LinAlgError(ValueError):
    pass


class RationalDomain:
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def __repr__(self):
        return "QQ"


QQ = RationalDomain()


class GFDomain:
    zero = 0
    one = 1

    def __init__(self, field):
        self.field = field

    def coerce(self, x):
        return int(x)

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def div(self, a, b):
        return self.field.div(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def __repr__(self):
        return f"GFDomain({self.field})"


def _domain(dom):
    if dom is None:
        return QQ
    if isinstance(dom, (RationalDomain, GFDomain)):
        return dom
    return GFDomain(dom)


def rref(M, dom=None):
    """Reduced row echelon form; pivots are taken at the first nonzero entry."""
    dom = _domain(dom)
    A = [[dom.coerce(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != dom.zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = dom.div(dom.one, A[r][c])
        A[r] = [dom.mul(inv, x) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != dom.zero:
                fac = A[i][c]
                A[i] = [dom.sub(x, dom.mul(fac, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M, dom=None):
    return len(rref(M, dom)[1])


def det(M, dom=None):
    dom = _domain(dom)
    n = len(M)
    if any(len(row) != n for row in M):
        raise LinAlgError("determinant of a non-square matrix")
    A = [[dom.coerce(x) for x in row] for row in M]
    out = dom.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != dom.zero), None)
        if piv is None:
            return dom.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = dom.neg(out)
        out = dom.mul(out, A[c][c])
        inv = dom.div(dom.one, A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != dom.zero:
                fac = dom.mul(A[i][c], inv)
                A[i] = [dom.sub(x, dom.mul(fac, y)) for x, y in zip(A[i], A[c])]
    return out


@dataclass
class Solution:
    """Outcome of :func:`solve`.

    ``kind`` is ``"unique"``, ``"affine"`` or ``"inconsistent"``; for the
    first two ``particular`` solves the system and ``basis`` spans the
    homogeneous solutions (empty when unique).
    """

    kind: str
    particular: list | None = None
    basis: list = dc_field(default_factory=list)


def nullspace(M, ncols=None, dom=None):
    dom = _domain(dom)
    if not M:
        n = ncols or 0
        return [[dom.one if i == j else dom.zero for i in range(n)] for j in range(n)]
    R, pivots = rref(M, dom)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [dom.zero] * n
        v[fc] = dom.one
        for r, pc in enumerate(pivots):
            v[pc] = dom.neg(R[r][fc])
        basis.append(v)
    return basis


def solve(M, b, dom=None):
    dom = _domain(dom)
    if len(M) != len(b):
        raise LinAlgError(f"{len(M)} equations but {len(b)} right-hand sides")
    if not M:
        raise LinAlgError("empty system")
    n = len(M[0])
    if any(len(row) != n for row in M):
        raise LinAlgError("ragged matrix")
    aug = [list(row) + [rhs] for row, rhs in zip(M, b)]
    R, pivots = rref(aug, dom)
    if n in pivots:
        return Solution("inconsistent")
    x = [dom.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    basis = nullspace(M, n, dom)
    return Solution("unique" if not basis else "affine", x, basis)


def mat_vec(M, x, dom=None):
    dom = _domain(dom)
    out = []
    for row in M:
        acc = dom.zero
        for a, v in zip(row, x):
            acc = dom.add(acc, dom.mul(dom.coerce(a), v))
        out.append(acc)
    return out


class GFMatrix:
    """Rectangular matrix over a finite field."""

    def __init__(self, field, rows):
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise LinAlgError("ragged matrix")
        self.field = field
        self.rows = rows

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def rank(self):
        return rank(self.rows, self.field)

    def det(self):
        return det(self.rows, self.field)

    def solve(self, b):
        return solve(self.rows, b, self.field)

    def nullspace(self):
        return nullspace(self.rows, self.shape[1], self.field)


def vandermonde(field, nodes, ncols=None):
    ncols = len(nodes) if ncols is None else ncols
    return GFMatrix(field, [[field.pow(x, e) for e in range(ncols)] for x in nodes])


# -- spectrum systems over Q ---------------------------------------------------

def high_k0_system(q):
    """The three counting identities restricted to a_(q-3), a_(q-2), a_(q-1).

    Unknown order is (a_(q-3), a_(q-2), a_(q-1)).
    """
    k = (q - 1) ** 2
    idx = (q - 3, q - 2, q - 1)
    M = [
        [1, 1, 1],
        list(idx),
        [i * (i - 1) for i in idx],
    ]
    b = [q * q + q + 1, (q + 1) * k, k * (k - 1)]
    return M, b


def solve_high_k0_system(q):
    sol = solve(*high_k0_system(q), dom=QQ)
    if sol.kind != "unique":
        raise LinAlgError(f"high-k0 system for q = {q} is {sol.kind}")
    return tuple(sol.particular)


# -- Noether AF + BG ---------------------------------------------------------

class NoetherError(ValueError):
    pass


@dataclass
class NoetherResult:
    """Solution space of F = A*G + B*H under vanishing constraints.

    ``basis`` entries are ``(A, B)`` pairs of forms.  With a fixed A,
    ``particular`` is one ``(A, B)`` solution (``None`` if inconsistent)
    and ``basis`` holds the homogeneous directions, which have A = 0.
    """

    degree: int
    intersection: list
    basis: list
    particular: tuple | None = None
    fixed_a: HPoly | None = None
    verdict: str = ""
    unknowns: list = dc_field(default_factory=list)

    @property
    def unique(self):
        if self.fixed_a is not None:
            return self.particular is not None and not self.basis
        return len(self.basis) <= 1

    def b_vanishes(self):
        """True when every solution has B = 0."""
        parts = list(self.basis)
        if self.particular is not None:
            parts.append(self.particular)
        return all(B.is_zero for _, B in parts)


def _rational_intersection(G, H):
    pl = plane(G.field)
    return [P for P in pl.points if G.evaluate(P) == 0 and H.evaluate(P) == 0]


def _common_linear_factor(G, H):
    pl = plane(G.field)
    for l in pl.lines:
        if restrict_to_line(G, l).vanishes and restrict_to_line(H, l).vanishes:
            return l
    return None


def check_noether_hypotheses(G, H):
    """Rational intersection of V(G) and V(H), after checking it is transversal.

    Raises :class:`NoetherError` when a common rational linear factor is
    found, when the rational intersection exceeds the Bezout number, or
    when some rational intersection point is singular on either curve or
    the two tangent lines coincide there.
    """
    if G.field != H.field:
        raise NoetherError("G and H live over different fields")
    if G.is_zero or H.is_zero:
        raise NoetherError("zero polynomial")
    l = _common_linear_factor(G, H)
    if l is not None:
        raise NoetherError(f"common component: the line {l}")
    if exact_divide(G, H) is not None or exact_divide(H, G) is not None:
        raise NoetherError("one form divides the other")
    pts = _rational_intersection(G, H)
    if len(pts) > G.degree * H.degree:
        raise NoetherError("intersection exceeds the Bezout number: common component")
    f = G.field
    for P in pts:
        gG = G.gradient_at(P)
        gH = H.gradient_at(P)
        if not any(gG) or not any(gH):
            raise NoetherError(f"intersection point {P} is singular on one of the curves")
        if normalize(f, gG) == normalize(f, gH):
            raise NoetherError(f"curves are tangent at {P}")
    return pts


def _monomial_basis(f, d):
    return [HPoly.monomial(f, m) for m in monomials(d)]


def noether_reconstruct(G, H, D, vanishing=(), nonvanishing=(), fixed_a=None):
    """Forms F = A*G + B*H of degree D vanishing at the given points.

    Unknowns are the coefficients of A (degree D - deg G) and B (degree
    D - deg H), unless ``fixed_a`` pins A, in which case the system in B is
    affine.  ``nonvanishing`` points must stay off V(F); the verdict
    ``"forced trivial"`` means no admissible solution satisfies them
    (checked exactly by enumeration when the solution space is small).
    """
    f = G.field
    if H.field != f:
        raise NoetherError("G and H live over different fields")
    da, db = D - G.degree, D - H.degree
    if da < 0 or db < 0:
        raise NoetherError(f"target degree {D} below deg G = {G.degree} or deg H = {H.degree}")
    inter = check_noether_hypotheses(G, H)
    b_monos = _monomial_basis(f, db)
    a_monos = [] if fixed_a is not None else _monomial_basis(f, da)
    if fixed_a is not None and (fixed_a.degree != da or fixed_a.field != f):
        raise NoetherError(f"fixed A must have degree {da}")
    cols = [M * G for M in a_monos] + [M * H for M in b_monos]
    unknowns = [("B", m) for m in monomials(db)]
    if fixed_a is None:
        unknowns = [("A", m) for m in monomials(da)] + unknowns
    rows = [[c.evaluate(P) for c in cols] for P in vanishing]

    def split(vec):
        a = HPoly(f, da, vec[: len(a_monos)]) if fixed_a is None else fixed_a
        return a, HPoly(f, db, vec[len(a_monos):])

    result = NoetherResult(D, inter, [], fixed_a=fixed_a, unknowns=unknowns)
    if fixed_a is None:
        result.basis = [split(v) for v in nullspace(rows, len(cols), f)]
        forms = [A * G + B * H for A, B in result.basis]
    else:
        FG = fixed_a * G
        if rows:
            sol = solve(rows, [f.neg(FG.evaluate(P)) for P in vanishing], f)
        else:
            sol = Solution("affine", [0] * len(cols), nullspace([], len(cols), f))
        if sol.kind == "inconsistent":
            result.verdict = "inconsistent"
            return result
        result.particular = split(sol.particular)
        result.basis = [(HPoly(f, da), split(v)[1]) for v in sol.basis]
        forms = [FG + result.particular[1] * H] + [B * H for _, B in result.basis]

    # re-verify every emitted solution against the constraints
    for F in forms:
        if any(F.evaluate(P) for P in vanishing):
            raise NoetherError("internal error: solution does not vanish on a constraint")  # pragma: no cover

    result.verdict = _verdict(f, G, H, result, nonvanishing)
    return result


def _verdict(f, G, H, result, nonvanishing, limit=100_000):
    if result.fixed_a is not None:
        P0 = result.fixed_a * G + result.particular[1] * H
        dirs = [B * H for _, B in result.basis]
        if not dirs:
            ok = not P0.is_zero and all(P0.evaluate(P) for P in nonvanishing)
            return "unique" if ok else "forced trivial"
        candidates = _affine_span(f, P0, dirs, limit)
    else:
        dirs = [A * G + B * H for A, B in result.basis]
        if not dirs:
            return "forced trivial"
        candidates = _affine_span(f, None, dirs, limit)
    if candidates is None:
        return "undetermined"
    for F in candidates:
        if F.is_zero:
            continue
        if all(F.evaluate(P) for P in nonvanishing):
            return "admissible"
    return "forced trivial"


def _affine_span(f, base, dirs, limit):
    if f.q ** len(dirs) > limit:
        return None

    def gen():
        for coeffs in itertools.product(range(f.q), repeat=len(dirs)):
            acc = base
            for c, v in zip(coeffs, dirs):
                if c:
                    term = v.scale(c)
                    acc = term if acc is None else acc + term
            if acc is None:
                continue
            yield acc

    return gen()
