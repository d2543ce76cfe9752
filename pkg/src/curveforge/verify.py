"""The reproducible checks behind ``curveforge verify-paper``.

Each criterion function returns a list of :class:`Result`.  ``qs``
restricts q-parametrised criteria to the given field orders; fixed
instances (the GF(4) curves, the GF(7) arcs) always run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arcs import point_type, lines_of_class, spectrum, verify_arc_lemmas
from .codes import code_from_arc, enumerator_from_spectrum, spectrum_weight_check
from .curve import (
    PlaneCurve,
    coordinate_triangle_complement,
    family_catalog,
    fermat_form,
    fermat_parameters,
    sziklai_bound,
)
from .data import (
    BUNDLED_ARCS,
    Q7_CONSTRAINTS,
    Q7_Q0,
    Q7_Q0_FIVE_LINES,
    Q7_Q0_SIX_LINES,
    load_arc,
    q7_quartic,
    q7_sextic,
)
from .equiv import Projectivity, apply, are_equivalent, count_family_classes, verify_witness
from .gf import field_of_order
from .hpoly import HPoly, exact_divide, linear_form, monomials, restrict_to_line
from .linsolve import noether_reconstruct, solve_high_k0_system
from .projplane import normalize, plane
from .svfrob import frobenius_classical, inflection_points, sv_basic_bound, sv_refined_bound


@dataclass
class Result:
    name: str
    expected: object
    got: object
    passed: bool | None

    def as_dict(self):
        return {"name": self.name, "expected": _plain(self.expected), "got": _plain(self.got), "pass": self.passed}


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _pick(default, qs):
    return list(default) if qs is None else [q for q in default if q in qs]


def _family(f, normalized=True):
    return [PlaneCurve(fermat_form(f, *t), name=f"fermat{t}") for t in fermat_parameters(f, normalized)]


def criterion_1(qs=None):
    out = []
    for q in _pick((5, 7, 8, 9, 11, 13), qs):
        f = field_of_order(q)
        target = set(plane(f).index[P] for P in coordinate_triangle_complement(f))
        bad = [
            C.name for C in _family(f, normalized=False) if C.N != (q - 1) ** 2 or set(C.point_indices) != target
        ]
        n = len(fermat_parameters(f, normalized=False))
        out.append(Result(f"fermat_counts_q{q}", f"{n} curves with N = {(q - 1) ** 2}", f"{n - len(bad)} ok", not bad))
    return out


def criterion_2(qs=None):
    out = []
    f4 = field_of_order(4)
    for tag, want in (("exceptional4", 14), ("hermitian", 9), ("hermitian_fermat", 9)):
        N = family_catalog(tag, f4).N
        out.append(Result(f"{tag}_q4", want, N, N == want))
    for q in _pick((5, 7, 8, 9), qs):
        f = field_of_order(q)
        for tag, want in (("homma_q", (q - 1) * q + 1), ("homma_q1", q * q + 1), ("conic", q + 1)):
            N = family_catalog(tag, f).N
            out.append(Result(f"{tag}_q{q}", want, N, N == want))
    return out


def criterion_3(qs=None, seed=0, samples=1000):
    out = []
    rng = random.Random(seed)
    for q in _pick((5, 7, 8, 9), qs):
        f = field_of_order(q)
        C = _family(f)[0]
        sp = spectrum(C.points, f)
        want = (3, (q - 1) ** 2, 3 * (q - 1), 0)
        got = (sp[0], sp[q - 2], sp[q - 1], sp.k0)
        out.append(Result(f"family_spectrum_q{q}", want, got, got == want))
        ok = all(l == r for l, r in sp.identities().values())
        pts = plane(f).points
        for _ in range(samples):
            S = rng.sample(pts, (q - 1) ** 2)
            ok &= all(l == r for l, r in spectrum(S, f).identities().values())
        out.append(Result(f"identities_q{q}", "all hold", "all hold" if ok else "violated", ok))
    return out


def criterion_4(qs=None):
    out = []
    for q in _pick((5, 7, 8, 9), qs):
        f = field_of_order(q)
        checks = {c.name: c for c in verify_arc_lemmas(_family(f)[0].points, f)}
        for name in ("psi_top_at_least_3", "pair_sum", "k0_identity"):
            c = checks[name]
            out.append(Result(f"{name}_q{q}", True, c.detail or c.passed, bool(c.passed)))
    return out


def criterion_5(qs=None):
    targets = {5: 1, 7: 2, 8: 1, 9: 2, 11: 2, 13: 3}
    out = []
    for q in _pick(targets, qs):
        nu, reps = count_family_classes(field_of_order(q))
        out.append(Result(f"nu_q{q}", targets[q], nu, nu == targets[q]))
    return out


def criterion_6(qs=None):
    out = []
    f, S = load_arc("q7_k0_3")
    code = code_from_arc(S, f)
    sp = spectrum(S, f)
    params = (code.n, 3, code.d)
    out.append(Result("q7_code_parameters", (36, 3, 30), params, params == (36, 3, 30)))
    out.append(Result("q7_weight_relation", True, spectrum_weight_check(code, sp), spectrum_weight_check(code, sp)))
    out.append(Result("q7_k0", 3, sp.k0, sp.k0 == 3))
    G, H = q7_sextic(), q7_quartic()
    res = noether_reconstruct(G, H, 6, Q7_CONSTRAINTS, fixed_a=HPoly.constant(G.field, 1))
    ok = res.unique and res.b_vanishes()
    out.append(Result("q7_noether_alpha_zero", "unique, alpha = 0", res.verdict if ok else "not unique", ok))
    f2, S2 = load_arc("q7_k0_2")
    psi = point_type(S2, Q7_Q0, f2).psi
    got = (psi[6], psi[5])
    out.append(Result("q7_Q0_type", (3, 2), got, got == (3, 2)))
    six = sorted(lines_of_class(S2, Q7_Q0, 6, f2))
    five = sorted(lines_of_class(S2, Q7_Q0, 5, f2))
    want6 = sorted(normalize(f2, l) for l in Q7_Q0_SIX_LINES)
    want5 = sorted(normalize(f2, l) for l in Q7_Q0_FIVE_LINES)
    out.append(Result("q7_Q0_lines", (want6, want5), (six, five), six == want6 and five == want5))
    return out


def criterion_7(qs=None):
    out = []
    for q in _pick((5, 7, 8, 9), qs):
        f = field_of_order(q)
        ok = True
        for C in _family(f):
            rep = sv_refined_bound(C)
            g = rep.g
            ok &= frobenius_classical(C).classical
            ok &= not inflection_points(C) and all(v == 2 for v in rep.j2.values())
            ok &= rep.attained and 2 * (q - 1) ** 2 == (2 * g - 2) + (q + 2) * (q - 1)
        out.append(Result(f"stohr_voloch_equality_q{q}", True, ok, ok))
        b = sv_basic_bound(q - 1, q)
        want = (q - 1) ** 2
        out.append(Result(f"basic_bound_q{q}", want, b, b == want == sziklai_bound(q - 1, q)))
    return out


def criterion_8(qs=None):
    out = []
    for q in _pick(range(5, 14), qs):
        a3, a2, a1 = solve_high_k0_system(q)
        want = (Fraction(3 * (q * q - 3 * q + 2), 2), -2 * (q * q - 5 * q + 4), Fraction(3 * (q * q - 3 * q + 4), 2))
        got = (a3, a2, a1)
        out.append(Result(f"high_k0_system_q{q}", want, got, got == want and a2 < 0))
    return out


def _random_form(f, d, rng):
    return HPoly(f, d, [rng.randrange(f.q) for _ in monomials(d)])


def criterion_9(qs=None, seed=0, pairs=500, instances=100):
    out = []
    for name in BUNDLED_ARCS:
        f, S = load_arc(name)
        code = code_from_arc(S, f)
        want = enumerator_from_spectrum(spectrum(S, f), code.n).c
        got = code.weight_enumerator.c
        out.append(Result(f"weights_{name}", want, got, want == got))
    rng = random.Random(seed)
    for q in _pick((2, 3, 4, 5, 7), qs):
        f = field_of_order(q)
        lines = plane(f).lines
        agree = 0
        for k in range(pairs):
            l = rng.choice(lines)
            d = rng.randrange(1, 5)
            F = _random_form(f, d, rng)
            if k % 2:
                F = linear_form(f, l) * _random_form(f, d - 1, rng)
            if F.is_zero:
                F = linear_form(f, l) * HPoly.constant(f, 1) if d == 1 else F + HPoly.monomial(f, (d, 0, 0))
            lhs = restrict_to_line(F, l).vanishes
            rhs = exact_divide(F, linear_form(f, l)) is not None
            agree += lhs == rhs
        out.append(Result(f"restriction_vs_division_q{q}", pairs, agree, agree == pairs))
    for q in _pick((2, 3, 4, 5, 7, 8), qs):
        f = field_of_order(q)
        pts = plane(f).points
        good = 0
        for k in range(instances):
            A = Projectivity.random(f, rng)
            if k % 4 == 3:
                d = rng.randrange(1, 4)
                F = _random_form(f, d, rng)
                if F.is_zero:
                    F = HPoly.monomial(f, (d, 0, 0))
                X = PlaneCurve(F)
                W = are_equivalent(X, apply(A, X))
                good += verify_witness(W, X, apply(A, X))
            else:
                S = rng.sample(pts, rng.randrange(1, len(pts)))
                W = are_equivalent(S, apply(A, S), field=f)
                good += verify_witness(W, S, apply(A, S), field=f)
        out.append(Result(f"equivalence_witnesses_q{q}", instances, good, good == instances))
    return out


def criterion_10(qs=None):
    note = (
        "classification over all degree-(q-1) curves is not enumerated; "
        "covered by criteria 1, 3, 4, 6 and 7"
    )
    return [Result("classification_not_enumerated", "disclosed", note, True)]


CRITERIA = {
    1: ("Fermat-family point counts", criterion_1),
    2: ("named-curve counts", criterion_2),
    3: ("spectrum suite", criterion_3),
    4: ("lemma predicates", criterion_4),
    5: ("nu_q class counts", criterion_5),
    6: ("q = 7 arc reproduction", criterion_6),
    7: ("Stohr-Voloch equality", criterion_7),
    8: ("high-k0 spectrum system", criterion_8),
    9: ("oracle equivalences", criterion_9),
    10: ("non-reproducible disclosure", criterion_10),
}


def run_criteria(qs=None, seed=0, selected=None):
    """[(number, title, results)] for the selected criteria (all by default)."""
    out = []
    for n, (title, fn) in CRITERIA.items():
        if selected and n not in selected:
            continue
        kw = {"qs": qs}
        if n in (3, 9):
            kw["seed"] = seed
        out.append((n, title, fn(**kw)))
    return out
