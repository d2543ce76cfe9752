import itertools
import random

import pytest

from curveforge.arcs import spectrum
from curveforge.codes import (
    CodeError,
    LinearCode3,
    code_from_arc,
    enumerator_from_spectrum,
    format_generator,
    parse_census_blocks,
    parse_generator,
    spectrum_of_code,
    spectrum_weight_check,
    validate_declared,
)
from curveforge.data import BUNDLED_ARCS, load_arc
from curveforge.gf import field_of_order, make_field
from curveforge.projplane import enumerate_points


def naive_weights(code):
    f = code.field
    c = [0] * (code.n + 1)
    for m in itertools.product(range(f.q), repeat=3):
        w = 0
        for j in range(code.n):
            v = 0
            for r in range(3):
                v = f.add(v, f.mul(m[r], code.G[r][j]))
            w += v != 0
        c[w] += 1
    return tuple(c)


def test_k0_3_code():
    f, S = load_arc("q7_k0_3")
    code = code_from_arc(S, f)
    W = code.weight_enumerator
    assert (code.n, code.d) == (36, 30)
    assert W.c[30:] == (216, 0, 54, 72, 0, 0, 0)
    assert W.check()
    assert spectrum_weight_check(code, spectrum(S, f))


@pytest.mark.parametrize("name", BUNDLED_ARCS)
def test_enumerator_oracle_on_bundled_arcs(name):
    f, S = load_arc(name)
    code = code_from_arc(S, f)
    assert code.weight_enumerator.c == enumerator_from_spectrum(spectrum(S, f), code.n).c


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_vectorised_matches_naive(q):
    f = field_of_order(q)
    rng = random.Random(q)
    S = rng.sample(enumerate_points(f), min(6, q * q))
    code = code_from_arc(S, f)
    assert code.weight_enumerator.c == naive_weights(code)
    assert spectrum_weight_check(code, spectrum(S, f))


def test_generator_file_roundtrip():
    f, S = load_arc("q7_k0_2")
    code = code_from_arc(S, f)
    text = format_generator(code, include_weights=True)
    back = parse_generator(text)
    assert back.G == code.G
    assert validate_declared(back) == []
    assert spectrum_of_code(back) == spectrum(S, f)


def test_declared_data_mismatch_reported():
    f, S = load_arc("q7_k0_3")
    text = format_generator(code_from_arc(S, f), include_weights=True)
    head, *rest = text.splitlines()
    bad = "\n".join(["36 3 31 7"] + rest[:3] + ["W: " + " ".join(["0"] * 6)]) + "\n"
    assert validate_declared(parse_generator(bad))


@pytest.mark.parametrize(
    "text",
    ["", "3 2 1 5\n1 0 0\n0 1 0\n0 0 1\n", "3 3 1 5\n1 0\n0 1 0\n0 0 1\n", "2 3 1 5\n1 0\n0 0\n0 0\n",
     "2 3 1 5\n1 0\n0 1\n0 9\n", "3 3 1 5\n1 0 0\n0 1 0\n0 0 1\nextra\n"],
)
def test_generator_file_errors(text):
    with pytest.raises(CodeError):
        parse_generator(text)


def test_zero_column_rejected():
    with pytest.raises(CodeError):
        LinearCode3(make_field(3), [[1, 0], [0, 0], [0, 0]])


def test_census_adapter():
    text = "code 1\n100\n010\n001\nweights ...\n"
    codes = parse_census_blocks(text, 5)
    assert len(codes) == 1 and codes[0].n == 3
