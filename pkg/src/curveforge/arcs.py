"""Line-intersection spectra, point types and arc predicates for point sets.

A point set is any iterable of points of PG(2, q); internally it is turned
into a set of point indices of :func:`curveforge.projplane.plane`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .projplane import GeometryError, format_point, normalize, parse_point, plane


class ArcError(ValueError):
    pass


def point_indices(f, S):
    pl = plane(f)
    out = set()
    for P in S:
        if isinstance(P, (int, np.integer)):
            out.add(int(P))
        else:
            out.add(pl.index[normalize(f, P)])
    return out


def _line_counts(f, idx):
    """|l ∩ S| for every line, in line enumeration order."""
    pl = plane(f)
    if pl.incidence is not None:
        return pl.incidence @ pl.mask(idx)
    member = np.zeros(pl.n, dtype=bool)
    member[list(idx)] = True
    return np.array([int(member[pts].sum()) for pts in pl.line_points])


@dataclass(frozen=True)
class ArcSpectrum:
    """a[i] = number of lines meeting the set in exactly i points, i = 0..q+1."""

    q: int
    a: tuple
    k: int

    @property
    def n(self):
        return max(i for i, v in enumerate(self.a) if v)

    @property
    def k0(self):
        return min(i for i, v in enumerate(self.a) if v)

    def __getitem__(self, i):
        return self.a[i] if 0 <= i < len(self.a) else 0

    def identities(self):
        """The three double-counting identities, as (lhs, rhs) pairs."""
        q, k, a = self.q, self.k, self.a
        return {
            "lines": (sum(a), q * q + q + 1),
            "incidences": (sum(i * v for i, v in enumerate(a)), k * (q + 1)),
            "pairs": (sum(i * (i - 1) * v for i, v in enumerate(a)), k * (k - 1)),
        }

    def as_dict(self):
        return {"q": self.q, "k": self.k, "n": self.n, "k0": self.k0, "a": list(self.a)}


def spectrum(S, f):
    idx = point_indices(f, S)
    counts = _line_counts(f, idx)
    a = np.bincount(np.asarray(counts, dtype=np.int64), minlength=f.q + 2)
    return ArcSpectrum(f.q, tuple(int(v) for v in a), len(idx))


def line_counts(S, f):
    return _line_counts(f, point_indices(f, S))


@dataclass(frozen=True)
class PointType:
    """psi[i] = number of i-lines (w.r.t. the set) through the point."""

    psi: tuple

    def classes(self):
        """(i, r) pairs with r > 0, i descending."""
        return [(i, r) for i, r in reversed(list(enumerate(self.psi))) if r]

    def render(self):
        return " ".join(f"{i}^{r}" for i, r in self.classes())

    def __str__(self):
        return self.render()


def _psi(f, counts, point_idx):
    pl = plane(f)
    psi = [0] * (f.q + 2)
    for li in pl.point_lines[point_idx]:
        psi[int(counts[li])] += 1
    return PointType(tuple(psi))


def point_type(S, P, f):
    idx = point_indices(f, S)
    counts = _line_counts(f, idx)
    return _psi(f, counts, plane(f).index[normalize(f, P)])


def point_types(S, f):
    """Point type of every plane point, indexed like the plane enumeration."""
    idx = point_indices(f, S)
    counts = _line_counts(f, idx)
    return [_psi(f, counts, i) for i in range(plane(f).n)]


def lines_of_class(S, P, i, f):
    """The i-lines through P, as normalised line triples."""
    idx = point_indices(f, S)
    counts = _line_counts(f, idx)
    pl = plane(f)
    return [pl.lines[li] for li in pl.point_lines[pl.index[normalize(f, P)]] if counts[li] == i]


def complement_zset(C):
    """Rational points of the plane off the curve."""
    pl = plane(C.field)
    on = set(C.point_indices)
    return tuple(pl.points[i] for i in range(pl.n) if i not in on)


def is_arc(S, f, n):
    """True when S is a (|S|, n)-arc."""
    return spectrum(S, f).n == n


# -- executable forms of the degree-(q-1) lemmas -----------------------------

@dataclass
class Check:
    name: str
    passed: bool | None
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def verify_arc_lemmas(S, f):
    """Evaluate each arc-level predicate for a point set; one :class:`Check` each.

    The predicates beyond the double-counting identities assume a
    ((q-1)^2, n)-set with n <= q-1; when the set does not meet that they
    are reported with ``passed=None``.
    """
    q = f.q
    idx = point_indices(f, S)
    k = len(idx)
    counts = _line_counts(f, idx)
    a = np.bincount(np.asarray(counts, dtype=np.int64), minlength=q + 2)
    sp = ArcSpectrum(q, tuple(int(v) for v in a), k)
    pl = plane(f)
    out = []
    for key, (lhs, rhs) in sp.identities().items():
        out.append(Check(f"identity_{key}", lhs == rhs, f"{lhs} == {rhs}"))

    applies = k == (q - 1) ** 2 and sp.n <= q - 1
    skip = "needs a ((q-1)^2, n)-set with n <= q-1"
    if not applies:
        for name in (
            "arc_parameters",
            "point_type_counts",
            "pair_sum",
            "psi_top_at_least_3",
            "a_top_lower_bound",
            "psi_top_3_type",
            "k0_upper_bound",
            "k0_identity",
            "k0_inequality",
        ):
            out.append(Check(name, None, skip))
        return out

    out.append(Check("arc_parameters", sp.n == q - 1, f"n = {sp.n}"))

    type_ok = True
    for pi in range(pl.n):
        psi = _psi(f, counts, pi).psi
        if sum(psi) != q + 1:
            type_ok = False
        if pi in idx:
            type_ok &= psi[0] == 0 and 1 + sum(r * (i - 1) for i, r in enumerate(psi)) == k
        else:
            type_ok &= sum(r * i for i, r in enumerate(psi)) == k
    out.append(Check("point_type_counts", type_ok))

    pair_ok = True
    worst = None
    for pi in idx:
        lc = [int(counts[li]) for li in pl.point_lines[pi]]
        for i, j in combinations(lc, 2):
            if i + j < q:
                pair_ok = False
                worst = (format_point(pl.points[pi]), i, j)
    out.append(Check("pair_sum", pair_ok, "" if pair_ok else f"violated at {worst}"))

    top = q - 1
    psis = {pi: _psi(f, counts, pi).psi for pi in idx}
    low = min((psi[top] for psi in psis.values()), default=None)
    out.append(Check("psi_top_at_least_3", low is None or low >= 3, f"min psi_(q-1) = {low}"))
    out.append(Check("a_top_lower_bound", sp[top] >= 3 * (q - 1), f"a_(q-1) = {sp[top]}"))
    three_ok = all(
        psi[top] == 3 and psi[q - 2] == q - 2 for psi in psis.values() if psi[top] == 3
    )
    out.append(Check("psi_top_3_type", three_ok))

    k0 = sp.k0
    out.append(Check("k0_upper_bound", k0 <= q - 4, f"k0 = {k0}"))
    lhs = sum((i - k0) * (i - q + 2) * v for i, v in enumerate(sp.a))
    rhs = 3 * (q - 1) ** 2 - 3 * k0
    out.append(Check("k0_identity", lhs == rhs, f"{lhs} == {rhs}"))
    out.append(
        Check("k0_inequality", (q - k0 - 1) * sp[top] >= rhs, f"{(q - k0 - 1) * sp[top]} >= {rhs}")
    )
    return out


# -- arc file format ---------------------------------------------------------

def format_arc(S, f):
    pl = plane(f)
    idx = sorted(point_indices(f, S))
    lines = [f"{f.q} {len(idx)}"] + [format_point(pl.points[i]) for i in idx]
    return "\n".join(lines) + "\n"


def parse_arc(text, field=None):
    """Read a ``q k`` header and k points; duplicates are rejected."""
    from .gf import field_of_order

    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ArcError("empty arc file")
    try:
        q, k = (int(x) for x in rows[0].split())
    except ValueError as exc:
        raise ArcError(f"bad header {rows[0]!r}") from exc
    f = field if field is not None else field_of_order(q)
    if f.q != q:
        raise ArcError(f"arc file is over GF({q}), expected {f}")
    pts = []
    seen = set()
    for r in rows[1:]:
        try:
            P = parse_point(f, r)
        except GeometryError as exc:
            raise ArcError(str(exc)) from exc
        if P in seen:
            raise ArcError(f"duplicate point {format_point(P)}")
        seen.add(P)
        pts.append(P)
    if len(pts) != k:
        raise ArcError(f"header announces {k} points, found {len(pts)}")
    return f, pts
