"""Bundled instances: the two printed (36, 6)-arcs of PG(2, 7) and the
polynomials used to rule out the k0 = 3 arc."""

from importlib import resources

from .arcs import parse_arc
from .gf import make_field
from .hpoly import HPoly

BUNDLED_ARCS = ("q7_k0_3", "q7_k0_2")


def arc_text(name):
    return resources.files("curveforge").joinpath("data", f"{name}.arc").read_text()


def load_arc(name):
    """(field, points) for a bundled arc."""
    return parse_arc(arc_text(name))


def _lin(f, a, b, c):
    return HPoly.from_int_terms(f, 1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


def q7_sextic():
    """YZ(Z - 3Y)(Z - 4Y)(Z - 5Y)(Z - 6Y) over GF(7)."""
    f = make_field(7)
    G = _lin(f, 0, 1, 0) * _lin(f, 0, 0, 1)
    for c in (3, 4, 5, 6):
        G = G * _lin(f, 0, -c, 1)
    return G


def q7_quartic():
    """X(X + Y - Z)(2X + Y - Z)(X + 2Y - 2Z) over GF(7)."""
    f = make_field(7)
    return _lin(f, 1, 0, 0) * _lin(f, 1, 1, -1) * _lin(f, 2, 1, -1) * _lin(f, 1, 2, -2)


# points of the k0 = 3 arc at which F = G + (quadric) * H is evaluated
Q7_CONSTRAINTS = ((1, 0, 0), (1, 5, 4), (1, 4, 0), (1, 0, 6), (1, 2, 5), (1, 6, 4))

# the point Q0 off the k0 = 2 arc and the 5- and 6-lines through it,
# written as coefficient vectors (a, b, c) of aX + bY + cZ
Q7_Q0 = (1, 5, 2)
Q7_Q0_FIVE_LINES = ((1, 3, 6), (1, 4, 0))
Q7_Q0_SIX_LINES = ((0, 1, 1), (4, 3, 1), (1, 0, 3))
