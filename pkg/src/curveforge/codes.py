"""Projective [n, 3, d]_q codes built from point sets, and their weights.

Generator-matrix file format::

    n 3 d q
    <row 1: n element codes>
    <row 2>
    <row 3>
    W: c_d c_(d+1) ... c_n          (optional)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .arcs import ArcSpectrum, point_indices
from .gf import FieldError, field_of_order, parse_element
from .projplane import normalize, plane

WEIGHT_ENUM_MAX_Q = 64


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class WeightEnumerator:
    q: int
    c: tuple

    @property
    def n(self):
        return len(self.c) - 1

    @property
    def d(self):
        return min(i for i, v in enumerate(self.c) if i > 0 and v)

    def __getitem__(self, i):
        return self.c[i]

    def check(self):
        return self.c[0] == 1 and sum(self.c) == self.q ** 3 and min(self.c) >= 0


class LinearCode3:
    """Code spanned by the rows of a 3 x n generator matrix of field codes."""

    def __init__(self, field, G, declared_d=None, declared_weights=None):
        G = tuple(tuple(int(x) for x in row) for row in G)
        if len(G) != 3 or len({len(r) for r in G}) != 1:
            raise CodeError("generator matrix must have 3 rows of equal length")
        self.field = field
        self.G = G
        self.n = len(G[0])
        self.declared_d = declared_d
        self.declared_weights = declared_weights
        cols = self.columns()
        if any(not any(c) for c in cols):
            raise CodeError("generator matrix has a zero column")

    def columns(self):
        return [tuple(self.G[r][j] for r in range(3)) for j in range(self.n)]

    def column_points(self):
        return [normalize(self.field, c) for c in self.columns()]

    @property
    def is_projective(self):
        pts = self.column_points()
        return len(set(pts)) == len(pts)

    @cached_property
    def weight_enumerator(self):
        return weight_enumerator(self)

    @property
    def d(self):
        return self.weight_enumerator.d

    def __repr__(self):
        return f"LinearCode3(n={self.n}, q={self.field.q})"


def code_from_arc(S, f):
    """Columns are the normalised points of S in plane enumeration order."""
    pts = list(S)
    if len(pts) < 3:
        raise CodeError("need at least three points")
    idx = point_indices(f, pts)
    if len(idx) != len(pts):
        raise CodeError("duplicate points")
    pl = plane(f)
    cols = [pl.points[i] for i in sorted(idx)]
    G = [[c[r] for c in cols] for r in range(3)]
    return LinearCode3(f, G)


def weight_enumerator(code, chunk=4096):
    """Exact enumerator by running through all q^3 message vectors."""
    f = code.field
    q = f.q
    if q > WEIGHT_ENUM_MAX_Q:
        raise CodeError(f"brute-force weight enumeration is limited to q <= {WEIGHT_ENUM_MAX_Q}")
    G = np.array(code.G, dtype=np.int64)
    counts = np.zeros(code.n + 1, dtype=np.int64)
    msgs = np.array([(a, b, c) for a in range(q) for b in range(q) for c in range(q)], dtype=np.int64)
    for start in range(0, len(msgs), chunk):
        m = msgs[start:start + chunk]
        word = f.vmul(m[:, 0:1], G[0][None, :])
        word = f.vadd(word, f.vmul(m[:, 1:2], G[1][None, :]))
        word = f.vadd(word, f.vmul(m[:, 2:3], G[2][None, :]))
        w = np.count_nonzero(word, axis=1)
        counts += np.bincount(w, minlength=code.n + 1)
    return WeightEnumerator(q, tuple(int(v) for v in counts))


def enumerator_from_spectrum(sp, n):
    """Weights implied by a spectrum: c_(n-i) = (q-1) a_i, plus c_0 = 1."""
    c = [0] * (n + 1)
    c[0] = 1
    for i, v in enumerate(sp.a):
        if v:
            c[n - i] += (sp.q - 1) * v
    return WeightEnumerator(sp.q, tuple(c))


def spectrum_weight_check(code, sp):
    """(q-1)(a_0, ..., a_(n-d)) == (c_n, ..., c_d)."""
    if sp.k != code.n or sp.q != code.field.q:
        raise CodeError("spectrum and code do not describe the same point set")
    W = code.weight_enumerator
    top = code.n - W.d
    for i in range(top + 1):
        if (code.field.q - 1) * sp[i] != W[code.n - i]:
            return False
    return all(sp[i] == 0 for i in range(top + 1, len(sp.a)))


# -- generator matrix files ---------------------------------------------------

def format_generator(code, include_weights=False):
    f = code.field
    d = code.declared_d if code.declared_d is not None else code.d
    out = [f"{code.n} 3 {d} {f.q}"]
    out += [" ".join(str(x) for x in row) for row in code.G]
    weights = code.declared_weights
    if weights is None and include_weights:
        weights = code.weight_enumerator.c[d:]
    if weights is not None:
        out.append("W: " + " ".join(str(v) for v in weights))
    return "\n".join(out) + "\n"


def parse_generator(text):
    rows = [r.strip() for r in text.splitlines() if r.strip()]
    if len(rows) < 4:
        raise CodeError("generator file needs a header and three rows")
    try:
        n, k, d, q = (int(x) for x in rows[0].split())
    except ValueError as exc:
        raise CodeError(f"bad header {rows[0]!r}") from exc
    if k != 3:
        raise CodeError("only [n, 3] codes are supported")
    f = field_of_order(q)
    G = []
    for r in rows[1:4]:
        parts = r.split()
        if len(parts) != n:
            raise CodeError(f"row has {len(parts)} entries, expected {n}")
        try:
            G.append([parse_element(f, x) for x in parts])
        except (ValueError, FieldError) as exc:
            raise CodeError(str(exc)) from exc
    weights = None
    for r in rows[4:]:
        if r.startswith("W:"):
            try:
                weights = tuple(int(x) for x in r[2:].split())
            except ValueError as exc:
                raise CodeError(f"bad weight line {r!r}") from exc
            if len(weights) != n - d + 1:
                raise CodeError(f"weight line lists {len(weights)} values, expected {n - d + 1}")
        else:
            raise CodeError(f"unexpected line {r!r}")
    return LinearCode3(f, G, declared_d=d, declared_weights=weights)


def validate_declared(code):
    """Compare a file's declared d and weight line with brute force."""
    W = code.weight_enumerator
    problems = []
    if code.declared_d is not None and code.declared_d != W.d:
        problems.append(f"declared d = {code.declared_d}, computed {W.d}")
    if code.declared_weights is not None:
        d = code.declared_d
        if tuple(W.c[d:]) != tuple(code.declared_weights):
            problems.append("declared weight enumerator differs from brute force")
    return problems


def parse_census_blocks(text, q):
    """Adapter for census-style listings of 3 x n generator matrices.

    Each matrix is three consecutive lines of single-character element codes
    (digits, so q <= 10) without separators.  Lines that are not pure digit
    strings (titles, weight enumerators) end the current block and are
    otherwise ignored.  The layout of published census files has not been
    checked against a real download.
    """
    if q > 10:
        raise CodeError("single-character census rows need q <= 10")
    f = field_of_order(q)
    codes = []
    block = []
    for raw in text.splitlines():
        s = raw.strip()
        if s.isdigit():
            block.append([parse_element(f, ch) for ch in s])
            if len(block) == 3:
                codes.append(LinearCode3(f, block))
                block = []
        else:
            block = []
    return codes


def spectrum_of_code(code):
    """Spectrum of the column point set of a projective code."""
    from .arcs import spectrum

    if not code.is_projective:
        raise CodeError("code is not projective")
    return spectrum(code.column_points(), code.field)


__all__ = [
    "ArcSpectrum",
    "CodeError",
    "LinearCode3",
    "WeightEnumerator",
    "code_from_arc",
    "enumerator_from_spectrum",
    "format_generator",
    "parse_census_blocks",
    "parse_generator",
    "spectrum_of_code",
    "spectrum_weight_check",
    "validate_declared",
    "weight_enumerator",
]
