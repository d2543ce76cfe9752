"""Table-backed arithmetic in GF(p^h).

Elements are plain integers in ``[0, q)``.  The base-p digits of an element,
lowest first, are the coefficients of its polynomial representative modulo
the field's defining polynomial; this integer is also the text form used by
every file format in the package.

The hot loops elsewhere in the package work on these raw integer codes through
:class:`FieldSpec` methods.  :class:`Felt` wraps a code together with its field
for interactive use and operator overloading.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_CAP = 2 ** 14
ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


class CapExceeded(FieldError):
    pass


def field_cap():
    """Largest admissible field order; ``CURVEFORGE_CAP`` overrides the default."""
    env = os.environ.get("CURVEFORGE_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q):
    """Return ``(p, h)`` with ``q == p**h``, or ``None`` if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            break
    h = 0
    n = q
    while n % p == 0:
        n //= p
        h += 1
    if n != 1 or not is_prime(p):
        return None
    return p, h


# -- polynomials over GF(p) as coefficient lists, lowest degree first --------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _digits(code, p, h):
    out = []
    for _ in range(h):
        out.append(code % p)
        code //= p
    return out


def _code(digits, p):
    c = 0
    for d in reversed(digits):
        c = c * p + d
    return c


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(poly) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for low in range(p ** deg):
            divisor = _digits(low, p, deg) + [1]
            if not _pmod(poly, divisor, p):
                return False
    return True


def first_irreducible(p, h):
    """Monic irreducible of degree h whose lower coefficients have the least code.

    The code ordering coincides with lexicographic order on the coefficients
    read from degree h-1 down to the constant term.
    """
    for low in range(p ** h):
        poly = _digits(low, p, h) + [1]
        if _is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {h} over GF({p})")


def _primitive_root(p):
    if p == 2:
        return 1
    factors = [f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise FieldError(f"no primitive root mod {p}")


class FieldSpec:
    """The finite field GF(p^h) with exp/log tables over a fixed generator.

    Construct through :func:`make_field`, which caches one instance per
    ``(p, h)``; instances are never mutated after construction.
    """

    def __init__(self, p, h, modulus, generator, exp_table, log_table):
        self.p = p
        self.h = h
        self.q = p ** h
        self.modulus = tuple(modulus)
        self.generator = generator
        # exp has length 2(q-1) so products of logs need no reduction
        self.exp = exp_table
        self.log = log_table
        self._np_exp = np.array(exp_table, dtype=np.int64)
        self._np_log = np.array(log_table, dtype=np.int64)
        self._digits = np.array([_digits(c, p, h) for c in range(self.q)], dtype=np.int64).reshape(self.q, h)
        self.neg_table = [self._neg_slow(a) for a in range(self.q)]
        self.add_table = None
        if self.q <= ADD_TABLE_LIMIT:
            self.add_table = self.vadd(
                np.arange(self.q, dtype=np.int64)[:, None], np.arange(self.q, dtype=np.int64)[None, :]
            ).tolist()

    def __repr__(self):
        return f"GF({self.p}^{self.h})" if self.h > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self):
        return hash((self.p, self.h))

    def __reduce__(self):
        return make_field, (self.p, self.h)

    # -- scalar arithmetic on integer codes --

    def _neg_slow(self, a):
        p = self.p
        return _code([(-d) % p for d in _digits(a, p, self.h)], p)

    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a][b]
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.q - 1)]

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def from_int(self, n):
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    def scalar(self, n, a):
        """n * a for an integer n (repeated addition)."""
        return self.mul(n % self.p, a)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def elements(self):
        return enumerate_elements(self)

    def nonzero(self):
        return self.exp[: self.q - 1]

    # -- vectorised arithmetic on numpy arrays of codes --

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.h == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.h):
            out += ((a % p + b % p) % p) * scale
            a = a // p
            b = b // p
            scale *= p
        return out

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._np_exp[self._np_log[a] + self._np_log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._np_exp[(self._np_log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)


@dataclass(frozen=True)
class Felt:
    """A field element: integer code plus owning field."""

    field: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.field.q:
            raise FieldError(f"{self.index} is not an element of {self.field}")

    def _coerce(self, other):
        if isinstance(other, Felt):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.index
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.div(self.index, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else Felt(self.field, self.field.div(b, self.index))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.index))

    def __pow__(self, e):
        return Felt(self.field, self.field.pow(self.index, e))

    def inverse(self):
        return Felt(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __str__(self):
        return str(self.index)


@lru_cache(maxsize=None)
def _build_field(p, h):
    if h == 1:
        g = _primitive_root(p)
        modulus = [(-g) % p, 1]
        exp = [pow(g, i, p) for i in range(p - 1)]
        generator = g
    else:
        modulus = first_irreducible(p, h)
        q = p ** h

        def mulcode(a, b):
            return _code(_pmod(_pmul(_digits(a, p, h), _digits(b, p, h), p), modulus, p) + [0] * h, p)

        generator = None
        for cand in range(2, q):
            powers = [1]
            x = cand
            while x != 1:
                powers.append(x)
                x = mulcode(x, cand)
            if len(powers) == q - 1:
                generator = cand
                exp = powers
                break
        if generator is None:
            raise FieldError(f"no generator found for GF({p}^{h})")
    q = p ** h
    log = [0] * q
    for i, x in enumerate(exp):
        log[x] = i
    return FieldSpec(p, h, modulus, generator, exp + exp, log)


def make_field(p, h=1, cap=None):
    """Return GF(p^h); identical arguments give the identical object.

    Raises :class:`FieldError` for a non-prime ``p`` or ``h < 1`` and
    :class:`CapExceeded` when ``p**h`` is above the cap.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(h, int) or h < 1:
        raise FieldError(f"extension degree {h!r} must be a positive integer")
    cap = field_cap() if cap is None else cap
    if p ** h > cap:
        raise CapExceeded(f"field order {p}^{h} = {p ** h} exceeds cap {cap}")
    return _build_field(p, h)


def field_of_order(q, cap=None):
    ph = prime_power(q)
    if ph is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(ph[0], ph[1], cap=cap)


def field_arith(a, b, op):
    """Apply ``op`` (add, sub, mul, div, pow, inv, neg) to Felt operands.

    For ``pow`` the second operand is an integer exponent; ``inv`` and ``neg``
    ignore it.
    """
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, Felt) or b.field != a.field:
        raise FieldError("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def enumerate_elements(f):
    """0 followed by g^0, g^1, ..., g^(q-2)."""
    return [0] + list(f.exp[: f.q - 1])


class Embedding:
    """Injective homomorphism GF(p^h) -> GF(p^(hm)).

    ``root`` is the image of the polynomial variable of the source, i.e. a
    root of the source modulus in the target.
    """

    def __init__(self, src, dst, root):
        self.src = src
        self.dst = dst
        self.root = root
        powers = [1]
        for _ in range(src.h - 1):
            powers.append(dst.mul(powers[-1], root))
        table = []
        for code in range(src.q):
            acc = 0
            for d, rp in zip(_digits(code, src.p, src.h), powers):
                if d:
                    acc = dst.add(acc, dst.scalar(d, rp))
            table.append(acc)
        self.table = table
        self._np_table = np.array(table, dtype=np.int64)

    def __call__(self, a):
        return self.table[a]

    def map_array(self, a):
        return self._np_table[np.asarray(a, dtype=np.int64)]

    @property
    def generator_image(self):
        return self.table[self.src.generator]

    def __repr__(self):
        return f"Embedding({self.src} -> {self.dst}, root={self.root})"


@lru_cache(maxsize=None)
def embed(src, dst):
    """Embedding sending the source variable to the least-code root of its modulus."""
    if src.p != dst.p:
        raise FieldError(f"characteristics differ: {src} vs {dst}")
    if dst.h % src.h != 0:
        raise FieldError(f"{src} is not a subfield of {dst}")
    for cand in range(dst.q):
        acc = 0
        for i, c in enumerate(src.modulus):
            if c:
                acc = dst.add(acc, dst.scalar(c, dst.pow(cand, i)))
        if acc == 0:
            return Embedding(src, dst, cand)
    raise FieldError(f"modulus of {src} has no root in {dst}")  # pragma: no cover


def extension(f, m, cap=None):
    """GF(q^m) for ``f = GF(q)``."""
    return make_field(f.p, f.h * m, cap=cap)


def parse_element(f, text):
    try:
        v = int(text)
    except (TypeError, ValueError):
        raise FieldError(f"{text!r} is not an element code of {f}") from None
    if not 0 <= v < f.q:
        raise FieldError(f"{text!r} is not an element code of {f}")
    return v


def format_element(a):
    return str(int(a))
