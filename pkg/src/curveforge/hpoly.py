"""Homogeneous polynomials in X, Y, Z over GF(q), and univariate helpers.

Coefficients are stored densely in a fixed triangular order of the exponent
triples ``(i, j, k)`` with ``i + j + k = d``: ``i`` descending, then ``j``
descending, so ``X^d`` comes first and ``Z^d`` last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import FieldError, format_element, parse_element
from .projplane import line_basis, mat_det, mat_inv, normalize, plane


class PolyError(ValueError):
    pass


@lru_cache(maxsize=None)
def monomials(d):
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d):
    return {m: n for n, m in enumerate(monomials(d))}


@lru_cache(maxsize=None)
def _multinomial_mod(e, a, b, p):
    return (math.factorial(e) // (math.factorial(a) * math.factorial(b) * math.factorial(e - a - b))) % p


class HPoly:
    """Homogeneous polynomial of a declared degree over a :class:`FieldSpec`.

    The zero polynomial keeps the degree it was created with; ``is_zero``
    reports it.
    """

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree, coeffs=None):
        if degree < 0:
            raise PolyError("degree must be nonnegative")
        n = (degree + 1) * (degree + 2) // 2
        if coeffs is None:
            coeffs = (0,) * n
        coeffs = tuple(coeffs)
        if len(coeffs) != n:
            raise PolyError(f"expected {n} coefficients for degree {degree}, got {len(coeffs)}")
        self.field = field
        self.degree = degree
        self.coeffs = coeffs

    # -- construction --

    @classmethod
    def from_terms(cls, field, degree, terms):
        """Build from ``{(i, j, k): c}`` or an iterable of ``(i, j, k, c)``; repeated terms add up."""
        idx = monomial_index(degree)
        coeffs = [0] * len(idx)
        items = terms.items() if isinstance(terms, dict) else ((t[:3], t[3]) for t in terms)
        for mono, c in items:
            mono = tuple(mono)
            if sum(mono) != degree or min(mono) < 0:
                raise PolyError(f"monomial {mono} does not have degree {degree}")
            n = idx[mono]
            coeffs[n] = field.add(coeffs[n], c)
        return cls(field, degree, coeffs)

    @classmethod
    def from_int_terms(cls, field, degree, terms):
        """Like :meth:`from_terms` but coefficients are integers mapped into the prime field."""
        items = terms.items() if isinstance(terms, dict) else ((t[:3], t[3]) for t in terms)
        return cls.from_terms(field, degree, [(*m, field.from_int(c)) for m, c in items])

    @classmethod
    def monomial(cls, field, mono, c=1):
        return cls.from_terms(field, sum(mono), {tuple(mono): c})

    @classmethod
    def linear(cls, field, a, b, c):
        return cls(field, 1, (a, b, c))

    @classmethod
    def constant(cls, field, c=1):
        return cls(field, 0, (c,))

    # -- basic protocol --

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def terms(self):
        """Nonzero terms as ``((i, j, k), c)`` in triangular order."""
        return [(m, c) for m, c in zip(monomials(self.degree), self.coeffs) if c]

    def coefficient(self, mono):
        return self.coeffs[monomial_index(self.degree)[tuple(mono)]]

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.degree, self.coeffs))

    def __repr__(self):
        return f"HPoly({self.field}, {self.degree}, {self.to_str()})"

    def to_str(self):
        if self.is_zero:
            return "0"
        parts = []
        for (i, j, k), c in self.terms():
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("X", i), ("Y", j), ("Z", k)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def _check(self, other):
        if not isinstance(other, HPoly) or other.field != self.field:
            raise PolyError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            if other.is_zero:
                return self
            if self.is_zero:
                return other
            raise PolyError("sum of forms of different degrees is not homogeneous")
        add = self.field.add
        return HPoly(self.field, self.degree, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        neg = self.field.neg
        return HPoly(self.field, self.degree, [neg(a) for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        mul = self.field.mul
        return HPoly(self.field, self.degree, [mul(c, a) for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other % self.field.p)
        self._check(other)
        f = self.field
        d = self.degree + other.degree
        idx = monomial_index(d)
        out = [0] * len(idx)
        other_terms = other.terms()
        for (i, j, k), a in self.terms():
            for (i2, j2, k2), b in other_terms:
                n = idx[(i + i2, j + j2, k + k2)]
                out[n] = f.add(out[n], f.mul(a, b))
        return HPoly(f, d, out)

    def __pow__(self, e):
        out = HPoly.constant(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def monic(self):
        """Scale so the first nonzero coefficient in triangular order is 1."""
        for c in self.coeffs:
            if c:
                return self.scale(self.field.inv(c))
        return self

    # -- evaluation --

    def evaluate(self, P, embedding=None):
        """F(P) for a raw triple of codes.

        With ``embedding`` the coefficients are mapped into the target field
        and ``P`` is read as a triple over that field.
        """
        if embedding is not None:
            if embedding.src != self.field:
                raise FieldError("embedding source does not match polynomial field")
            f = embedding.dst
            coeffs = [embedding(c) for c in self.coeffs]
        else:
            f = self.field
            coeffs = self.coeffs
        x, y, z = P
        pw = f.pow
        acc = 0
        for (i, j, k), c in zip(monomials(self.degree), coeffs):
            if c:
                v = f.mul(c, f.mul(pw(x, i), f.mul(pw(y, j), pw(z, k))))
                if v:
                    acc = f.add(acc, v)
        return acc

    __call__ = evaluate

    def evaluate_many(self, xs, ys, zs, embedding=None):
        """Vectorised evaluation at arrays of coordinates (numpy)."""
        if embedding is not None:
            if embedding.src != self.field:
                raise FieldError("embedding source does not match polynomial field")
            f = embedding.dst
            coeffs = [embedding(c) for c in self.coeffs]
        else:
            f = self.field
            coeffs = self.coeffs
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        zs = np.asarray(zs, dtype=np.int64)
        cache = {}

        def power(name, arr, e):
            key = (name, e)
            if key not in cache:
                cache[key] = f.vpow(arr, e)
            return cache[key]

        acc = np.zeros(np.broadcast(xs, ys, zs).shape, dtype=np.int64)
        for (i, j, k), c in zip(monomials(self.degree), coeffs):
            if not c:
                continue
            v = f.vmul(power("x", xs, i), power("y", ys, j))
            v = f.vmul(v, power("z", zs, k))
            v = f.vmul(v, np.full_like(v, c))
            acc = f.vadd(acc, v)
        return acc

    # -- calculus --

    def partials(self):
        """Formal partial derivatives (F_X, F_Y, F_Z)."""
        f = self.field
        d = self.degree
        if d == 0:
            z = HPoly(f, 0)
            return z, z, z
        out = []
        for var in range(3):
            terms = {}
            for mono, c in self.terms():
                e = mono[var]
                if e % f.p == 0:
                    continue
                m = list(mono)
                m[var] -= 1
                terms[tuple(m)] = f.scalar(e, c)
            out.append(HPoly.from_terms(f, d - 1, terms))
        return tuple(out)

    def gradient_at(self, P):
        return tuple(g.evaluate(P) for g in self.partials())

    # -- restriction to lines --

    def binary_form(self, P0, P1):
        """Coefficients of F(s*P0 + t*P1): entry r multiplies s^(d-r) t^r."""
        f = self.field
        d = self.degree
        p = f.p
        cache = {}

        def lin_power(var, e):
            key = (var, e)
            if key not in cache:
                a, b = P0[var], P1[var]
                cache[key] = [
                    f.mul(math.comb(e, r) % p, f.mul(f.pow(a, e - r), f.pow(b, r))) for r in range(e + 1)
                ]
            return cache[key]

        out = [0] * (d + 1)
        for (i, j, k), c in self.terms():
            acc = [c]
            for var, e in ((0, i), (1, j), (2, k)):
                if e:
                    acc = _convolve(f, acc, lin_power(var, e))
            for r, v in enumerate(acc):
                if v:
                    out[r] = f.add(out[r], v)
        return out

    def compose(self, B):
        """F(B v) for a 3x3 matrix B of codes."""
        f = self.field
        d = self.degree
        p = f.p
        idx = monomial_index(d)
        lin_powers = {}

        def lp(var, e):
            key = (var, e)
            if key not in lin_powers:
                u, v, w = B[var]
                terms = {}
                for a in range(e + 1):
                    for b in range(e - a + 1):
                        m = _multinomial_mod(e, a, b, p)
                        if m:
                            val = f.mul(m, f.mul(f.pow(u, a), f.mul(f.pow(v, b), f.pow(w, e - a - b))))
                            if val:
                                terms[(a, b, e - a - b)] = val
                lin_powers[key] = terms
            return lin_powers[key]

        out = [0] * len(idx)
        for (i, j, k), c in self.terms():
            acc = {(0, 0, 0): c}
            for var, e in ((0, i), (1, j), (2, k)):
                if not e:
                    continue
                nxt = {}
                for m1, c1 in acc.items():
                    for m2, c2 in lp(var, e).items():
                        m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                        nxt[m] = f.add(nxt.get(m, 0), f.mul(c1, c2))
                acc = nxt
            for m, v in acc.items():
                if v:
                    n = idx[m]
                    out[n] = f.add(out[n], v)
        return HPoly(f, d, out)

    def to_file(self):
        return format_curve(self)


def _convolve(f, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


# -- univariate polynomials --------------------------------------------------

class UniPoly:
    """Polynomial in one variable, coefficients lowest degree first, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.field}, {list(self.coeffs)})"

    def evaluate(self, t):
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, t), c)
        return acc

    __call__ = evaluate

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return UniPoly(self.field, [])
        return UniPoly(self.field, _convolve(self.field, self.coeffs, other.coeffs))

    def __add__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return UniPoly(f, [f.add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def divmod_linear(self, t0):
        """Synthetic division by (t - t0): returns (quotient, remainder)."""
        f = self.field
        if self.is_zero:
            return UniPoly(f, []), 0
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, t0), c)
            out.append(acc)
        rem = out.pop()
        return UniPoly(f, reversed(out)), rem

    def root_multiplicity(self, t0):
        if self.is_zero:
            raise PolyError("root multiplicity of the zero polynomial")
        m = 0
        u = self
        while True:
            quo, rem = u.divmod_linear(t0)
            if rem:
                return m
            m += 1
            u = quo

    def roots(self):
        """Roots in the coefficient field with multiplicities, by exhaustion."""
        if self.is_zero:
            raise PolyError("roots of the zero polynomial")
        return [(t, self.root_multiplicity(t)) for t in range(self.field.q) if self.evaluate(t) == 0]

    def map(self, embedding):
        return UniPoly(embedding.dst, [embedding(c) for c in self.coeffs])


# -- restriction to a line ---------------------------------------------------

@dataclass(frozen=True)
class LineRestriction:
    """F restricted to a line ``l`` parametrised as ``s*P0 + t*P1``.

    ``uni`` is the chart ``s = 1``; ``infinity_multiplicity`` is the order of
    vanishing at ``(0:1)``, i.e. at the point P1, or ``None`` when ``l`` is a
    component.
    """

    line: tuple
    P0: tuple
    P1: tuple
    binary: tuple
    uni: UniPoly
    infinity_multiplicity: int | None

    @property
    def vanishes(self):
        return self.uni.is_zero

    def parameter(self, f, P):
        """Chart parameter ``t`` of P on the line, or ``None`` for P1."""
        _, _, (j, k) = line_basis(f, self.line)
        if P[j] == 0:
            return None
        return f.div(P[k], P[j])

    def multiplicity_at(self, f, P):
        if self.vanishes:
            return math.inf
        t = self.parameter(f, P)
        if t is None:
            return self.infinity_multiplicity
        return self.uni.root_multiplicity(t)


def restrict_to_line(F, l):
    f = F.field
    l = normalize(f, l)
    P0, P1, _ = line_basis(f, l)
    binary = F.binary_form(P0, P1)
    uni = UniPoly(f, binary)
    inf_mult = None if uni.is_zero else F.degree - uni.degree
    return LineRestriction(l, P0, P1, tuple(binary), uni, inf_mult)


# -- exact division ----------------------------------------------------------

def _divide_in_z(F, G):
    """Divide as polynomials in Z over k[X, Y]; G must contain c*Z^m with c != 0."""
    f = F.field
    m = G.degree
    lead = G.coefficient((0, 0, m))
    inv_lead = f.inv(lead)
    g_terms = G.terms()
    rem = {mono: c for mono, c in F.terms()}
    quo = {}
    while True:
        big = [mono for mono in rem if mono[2] >= m]
        if not big:
            break
        mono = max(big, key=lambda t: (t[2], t[0]))
        c = rem[mono]
        qc = f.mul(c, inv_lead)
        qm = (mono[0], mono[1], mono[2] - m)
        quo[qm] = f.add(quo.get(qm, 0), qc)
        for gm, gc in g_terms:
            key = (qm[0] + gm[0], qm[1] + gm[1], qm[2] + gm[2])
            v = f.sub(rem.get(key, 0), f.mul(qc, gc))
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return quo, rem


def _divide_lex(F, G):
    """Multivariate division by a single form in lex order X > Y > Z."""
    f = F.field
    g_terms = sorted(G.terms(), reverse=True)
    lead_m, lead_c = g_terms[0]
    inv_lead = f.inv(lead_c)
    rem = {mono: c for mono, c in F.terms()}
    quo = {}
    leftover = {}
    while rem:
        mono = max(rem)
        c = rem.pop(mono)
        if all(a >= b for a, b in zip(mono, lead_m)):
            qm = tuple(a - b for a, b in zip(mono, lead_m))
            qc = f.mul(c, inv_lead)
            quo[qm] = f.add(quo.get(qm, 0), qc)
            for gm, gc in g_terms[1:]:
                key = (qm[0] + gm[0], qm[1] + gm[1], qm[2] + gm[2])
                v = f.sub(rem.get(key, 0), f.mul(qc, gc))
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        else:
            leftover[mono] = c
    return quo, leftover


def exact_divide(F, G):
    """Quotient Q with F == Q*G, or ``None`` when G does not divide F.

    G is first moved by a projectivity so that it has a nonzero ``Z^deg``
    coefficient, which makes division as polynomials in Z over k[X, Y]
    exact.  If G vanishes at every rational point no such move exists and
    plain lex-order division is used instead.
    """
    if G.field != F.field:
        raise PolyError("polynomials over different fields")
    if G.is_zero:
        raise PolyError("division by the zero polynomial")
    f = F.field
    if F.is_zero:
        return HPoly(f, max(F.degree - G.degree, 0))
    if F.degree < G.degree:
        return None
    dq = F.degree - G.degree
    R = None
    for P in plane(f).points:
        if G.evaluate(P) != 0:
            R = P
            break
    if R is None:
        quo, rem = _divide_lex(F, G)
        if rem:
            return None
        return HPoly.from_terms(f, dq, quo)
    T = _completion_with_last_column(f, R)
    Fs = F.compose(T)
    Gs = G.compose(T)
    quo, rem = _divide_in_z(Fs, Gs)
    if rem:
        return None
    Qs = HPoly.from_terms(f, dq, quo)
    return Qs.compose(mat_inv(f, T))


def _completion_with_last_column(f, R):
    """An invertible matrix whose third column is R."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for a in range(3):
        for b in range(a + 1, 3):
            cols = (basis[a], basis[b], R)
            M = tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))
            if mat_det(f, M) != 0:
                return M
    raise PolyError("could not complete a basis")  # pragma: no cover


def substitute(F, A):
    """F∘A⁻¹: the output's zero set is the image of V(F) under A."""
    M = getattr(A, "matrix", A)
    return F.compose(mat_inv(F.field, M))


def linear_form(f, l):
    return HPoly.linear(f, *l)


# -- curve file format -------------------------------------------------------

def format_curve(F):
    lines = [f"{F.field.q} {F.degree}"]
    for (i, j, k), c in F.terms():
        lines.append(f"{i} {j} {k} {format_element(c)}")
    return "\n".join(lines) + "\n"


def parse_curve(text, field=None):
    """Read the ``q d`` header and ``i j k c`` term lines; order-insensitive."""
    from .gf import field_of_order

    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise PolyError("empty curve file")
    head = rows[0].split()
    if len(head) != 2:
        raise PolyError(f"bad header {rows[0]!r}")
    try:
        q, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise PolyError(f"bad header {rows[0]!r}") from exc
    f = field if field is not None else field_of_order(q)
    if f.q != q:
        raise PolyError(f"file is over GF({q}), expected {f}")
    terms = {}
    for r in rows[1:]:
        parts = r.split()
        if len(parts) != 4:
            raise PolyError(f"bad term line {r!r}")
        try:
            i, j, k = (int(x) for x in parts[:3])
            c = parse_element(f, parts[3])
        except (ValueError, FieldError) as exc:
            raise PolyError(f"bad term line {r!r}") from exc
        if (i, j, k) in terms:
            raise PolyError(f"repeated monomial {(i, j, k)}")
        terms[(i, j, k)] = c
    return HPoly.from_terms(f, d, terms)
